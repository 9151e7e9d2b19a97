#pragma once

#include <cstdint>
#include <string>

namespace qst {

struct SquareFreeSplit {
    std::int64_t sigma = 1;  // k = sigma^2 * theta
    std::int64_t theta = 1;  // square-free
};

/// Trial-division split k = sigma^2 * theta with theta square-free. k >= 1.
SquareFreeSplit square_free_part(std::int64_t k);

/// Exact real quadratic number (a + b*sqrt(D)) / 2 with D square-free.
///
/// Canonical form: D >= 1 is square-free, and b == 0 iff D == 1, so a
/// rational value a/2 is always stored as (a, 0, 1). Arithmetic stays inside
/// one field Q(sqrt(D)) and inside the lattice of halves; results that leave
/// it throw std::domain_error. Integer overflow throws std::overflow_error.
class QuadraticNumber {
public:
    QuadraticNumber() = default;

    /// (a + b*sqrt(k)) / 2 for any k >= 1; square factors of k are pulled
    /// into b.
    static QuadraticNumber make(std::int64_t a, std::int64_t b, std::int64_t k);
    static QuadraticNumber integer(std::int64_t value) { return make(2 * value, 0, 1); }

    [[nodiscard]] std::int64_t a() const { return a_; }
    [[nodiscard]] std::int64_t b() const { return b_; }
    [[nodiscard]] std::int64_t radicand() const { return d_; }

    [[nodiscard]] bool is_rational() const { return b_ == 0; }
    [[nodiscard]] bool is_integer() const { return b_ == 0 && a_ % 2 == 0; }

    [[nodiscard]] double to_double() const;
    [[nodiscard]] long double to_long_double() const;
    [[nodiscard]] std::string to_string() const;

    friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
    friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
    friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
    QuadraticNumber operator-() const { return make(-a_, -b_, d_); }

    friend bool operator==(const QuadraticNumber&, const QuadraticNumber&) = default;

private:
    std::int64_t a_ = 0;
    std::int64_t b_ = 0;
    std::int64_t d_ = 1;
};

/// Quadratic-integer test on the canonical form: for D = 2, 3 (mod 4) both a
/// and b must be even; for D = 1 (mod 4) a and b must share parity. Rationals
/// fall under the second case and reduce to "is an integer".
bool is_quadratic_integer(const QuadraticNumber& q);

}  // namespace qst
