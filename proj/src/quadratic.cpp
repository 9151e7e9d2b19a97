#include "qst/quadratic.hpp"

#include <cmath>
#include <stdexcept>

namespace qst {

namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(x, y, &out)) {
        throw std::overflow_error("quadratic number arithmetic overflow");
    }
    return out;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(x, y, &out)) {
        throw std::overflow_error("quadratic number arithmetic overflow");
    }
    return out;
}

std::int64_t common_radicand(const QuadraticNumber& x, const QuadraticNumber& y) {
    if (x.is_rational()) {
        return y.radicand();
    }
    if (y.is_rational() || x.radicand() == y.radicand()) {
        return x.radicand();
    }
    throw std::domain_error("operands lie in different quadratic fields: sqrt(" +
                            std::to_string(x.radicand()) + ") vs sqrt(" +
                            std::to_string(y.radicand()) + ")");
}

}  // namespace

SquareFreeSplit square_free_part(std::int64_t k) {
    if (k < 1) {
        throw std::invalid_argument("square_free_part requires k >= 1");
    }
    SquareFreeSplit s;
    std::int64_t rest = k;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
        int exponent = 0;
        while (rest % p == 0) {
            rest /= p;
            ++exponent;
        }
        for (int e = 0; e < exponent / 2; ++e) {
            s.sigma *= p;
        }
        if (exponent % 2 == 1) {
            s.theta *= p;
        }
    }
    s.theta *= rest;
    return s;
}

QuadraticNumber QuadraticNumber::make(std::int64_t a, std::int64_t b, std::int64_t k) {
    if (k < 1) {
        throw std::domain_error("radicand must be positive");
    }
    QuadraticNumber q;
    const auto [sigma, theta] = square_free_part(k);
    b = checked_mul(b, sigma);
    if (theta == 1) {
        q.a_ = checked_add(a, b);
    } else if (b == 0) {
        q.a_ = a;
    } else {
        q.a_ = a;
        q.b_ = b;
        q.d_ = theta;
    }
    return q;
}

double QuadraticNumber::to_double() const {
    return static_cast<double>(to_long_double());
}

long double QuadraticNumber::to_long_double() const {
    return (static_cast<long double>(a_) +
            static_cast<long double>(b_) * std::sqrt(static_cast<long double>(d_))) /
           2.0L;
}

std::string QuadraticNumber::to_string() const {
    if (b_ == 0) {
        if (a_ % 2 == 0) {
            return std::to_string(a_ / 2);
        }
        return std::to_string(a_) + "/2";
    }
    const bool halves = (a_ % 2 != 0) || (b_ % 2 != 0);
    const std::int64_t a = halves ? a_ : a_ / 2;
    const std::int64_t b = halves ? b_ : b_ / 2;
    std::string surd = "sqrt(" + std::to_string(d_) + ")";
    std::string bpart;
    if (b == 1) {
        bpart = surd;
    } else if (b == -1) {
        bpart = "-" + surd;
    } else {
        bpart = std::to_string(b) + "*" + surd;
    }
    std::string body;
    if (a == 0) {
        body = bpart;
    } else {
        body = std::to_string(a) + (b > 0 ? "+" : "") + bpart;
    }
    return halves ? "(" + body + ")/2" : body;
}

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
    const std::int64_t d = common_radicand(x, y);
    return QuadraticNumber::make(checked_add(x.a_, y.a_), checked_add(x.b_, y.b_), d);
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x + (-y);
}

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
    const std::int64_t d = common_radicand(x, y);
    // (a1 + b1 s)(a2 + b2 s) / 4 with s^2 = d; halve back into the lattice.
    const std::int64_t rational =
        checked_add(checked_mul(x.a_, y.a_), checked_mul(checked_mul(x.b_, y.b_), d));
    const std::int64_t surd = checked_add(checked_mul(x.a_, y.b_), checked_mul(x.b_, y.a_));
    if (rational % 2 != 0 || surd % 2 != 0) {
        throw std::domain_error("product " + x.to_string() + " * " + y.to_string() +
                                " is not of the form (a + b*sqrt(D))/2");
    }
    return QuadraticNumber::make(rational / 2, surd / 2, d);
}

bool is_quadratic_integer(const QuadraticNumber& q) {
    const std::int64_t d = q.radicand();
    const auto even = [](std::int64_t x) { return x % 2 == 0; };
    if (d % 4 == 2 || d % 4 == 3) {
        return even(q.a()) && even(q.b());
    }
    if (d % 4 == 1) {
        return even(q.a()) == even(q.b());
    }
    return false;
}

}  // namespace qst
