#pragma once

#include <cstdint>
#include <cstdlib>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ks33 {

namespace detail {

inline std::int64_t add_checked(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r))
        throw std::overflow_error("quadint: addition overflow");
    return r;
}

inline std::int64_t sub_checked(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_sub_overflow(x, y, &r))
        throw std::overflow_error("quadint: subtraction overflow");
    return r;
}

inline std::int64_t mul_checked(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r))
        throw std::overflow_error("quadint: multiplication overflow");
    return r;
}

} // namespace detail

/**
 * QuadInt: a number a + b*sqrt(2) with integer a, b.
 *
 * The ring Z[sqrt2] is closed under +, -, * and contains every quantity this
 * project needs (direction components, dot products, cross products), so all
 * geometry is exact. Arithmetic throws std::overflow_error instead of
 * wrapping; comparisons and sign tests never touch floating point.
 */
struct QuadInt {
    std::int64_t a = 0; // rational part
    std::int64_t b = 0; // coefficient of sqrt(2)

    constexpr QuadInt() = default;
    constexpr QuadInt(std::int64_t a_, std::int64_t b_) : a(a_), b(b_) {}

    static constexpr QuadInt integer(std::int64_t n) { return {n, 0}; }
    static constexpr QuadInt sqrt2() { return {0, 1}; }

    bool is_zero() const { return a == 0 && b == 0; }

    friend QuadInt operator+(const QuadInt& x, const QuadInt& y) {
        return {detail::add_checked(x.a, y.a), detail::add_checked(x.b, y.b)};
    }

    friend QuadInt operator-(const QuadInt& x, const QuadInt& y) {
        return {detail::sub_checked(x.a, y.a), detail::sub_checked(x.b, y.b)};
    }

    friend QuadInt operator-(const QuadInt& x) {
        return {detail::sub_checked(0, x.a), detail::sub_checked(0, x.b)};
    }

    // (a + b*s)(c + d*s) = ac + 2bd + (ad + bc)*s  with s = sqrt(2)
    friend QuadInt operator*(const QuadInt& x, const QuadInt& y) {
        std::int64_t ac = detail::mul_checked(x.a, y.a);
        std::int64_t bd2 = detail::mul_checked(2, detail::mul_checked(x.b, y.b));
        std::int64_t ad = detail::mul_checked(x.a, y.b);
        std::int64_t bc = detail::mul_checked(x.b, y.a);
        return {detail::add_checked(ac, bd2), detail::add_checked(ad, bc)};
    }

    friend bool operator==(const QuadInt& x, const QuadInt& y) {
        return x.a == y.a && x.b == y.b;
    }

    /**
     * Exact sign: -1, 0 or +1. When a and b disagree in sign the test a^2
     * versus 2 b^2 decides (never equal for a, b != 0, since sqrt(2) is
     * irrational).
     */
    int sign() const {
        auto sgn = [](std::int64_t v) { return (v > 0) - (v < 0); };
        if (b == 0) return sgn(a);
        if (a == 0) return sgn(b);
        if (a > 0 && b > 0) return 1;
        if (a < 0 && b < 0) return -1;
        std::int64_t aa = detail::mul_checked(a, a);
        std::int64_t bb2 = detail::mul_checked(2, detail::mul_checked(b, b));
        return aa > bb2 ? sgn(a) : sgn(b);
    }

    // True iff the value lies in sqrt(2) * Z[sqrt2], i.e. a is even.
    bool divisible_by_sqrt2() const { return a % 2 == 0; }

    // (a + b*s) / s = b + (a/2)*s; defined only when a is even.
    QuadInt div_sqrt2() const {
        if (a % 2 != 0)
            throw std::domain_error("quadint: not divisible by sqrt(2)");
        return {b, a / 2};
    }

    // For display and approximate cross-checks only; never used in decisions.
    double to_double() const {
        return static_cast<double>(a) + static_cast<double>(b) * std::sqrt(2.0);
    }

    std::string str() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadInt& q) {
        if (q.b == 0) return os << q.a;
        if (q.a != 0) {
            os << q.a;
            if (q.b > 0) os << "+";
        }
        if (q.b == -1) os << "-";
        else if (q.b != 1) os << q.b;
        return os << "√2";
    }
};

} // namespace ks33
