#pragma once

#include <stdexcept>
#include <string>

namespace qst {

// Bad input or unmet preconditions. The CLI maps these to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public InputError {
public:
    ParseError(int line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

// A theorem's hypotheses do not hold for the given input.
class HypothesisError : public InputError {
public:
    using InputError::InputError;
};

// A numerical self-check failed. The CLI maps these to exit code 3.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace qst
