#pragma once

// Exact scalar arithmetic for witness geometry: rationals over 64-bit
// integers, and the real quadratic field Q(sqrt 5) used by the icosahedron.
// Magnitudes are desk scale; any overflow throws instead of wrapping.

#include <cstdint>
#include <numeric>
#include <string>

#include "chromacy/errors.hpp"

namespace chromacy {

namespace detail {

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("integer overflow in +");
    return r;
}

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("integer overflow in *");
    return r;
}

} // namespace detail

// Reduced fraction, denominator > 0.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n) {} // NOLINT: implicit on purpose
    Rat(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw ArithmeticError("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    int sign() const { return (num > 0) - (num < 0); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        using detail::checked_add;
        using detail::checked_mul;
        return {checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                checked_mul(a.den, b.den)};
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + Rat(-b.num, b.den); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        using detail::checked_mul;
        return {checked_mul(a.num, b.num), checked_mul(a.den, b.den)};
    }
    Rat operator-() const { return {-num, den}; }

    friend bool operator==(const Rat& a, const Rat& b) = default;
    friend bool operator<(const Rat& a, const Rat& b) {
        return detail::checked_mul(a.num, b.den) < detail::checked_mul(b.num, a.den);
    }

    std::string str() const {
        std::string s = std::to_string(num);
        if (den != 1) s += "/" + std::to_string(den);
        return s;
    }
};

// a + b*sqrt(5) with rational a, b. Representation is unique because sqrt(5)
// is irrational, so equality is componentwise and ordering reduces to a sign
// computation.
struct Q5 {
    Rat a{0};
    Rat b{0};

    Q5() = default;
    Q5(Rat ra) : a(ra) {} // NOLINT
    Q5(long long n) : a(Rat(n)) {} // NOLINT
    Q5(Rat ra, Rat rb) : a(ra), b(rb) {}

    bool rational() const { return b.num == 0; }

    friend Q5 operator+(const Q5& x, const Q5& y) { return {x.a + y.a, x.b + y.b}; }
    friend Q5 operator-(const Q5& x, const Q5& y) { return {x.a - y.a, x.b - y.b}; }
    friend Q5 operator*(const Q5& x, const Q5& y) {
        return {x.a * y.a + Rat(5) * (x.b * y.b), x.a * y.b + x.b * y.a};
    }

    int sign() const {
        const int sa = a.sign();
        const int sb = b.sign();
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        // Signs differ: a + b*sqrt5 has the sign of whichever part dominates,
        // decided exactly by comparing a^2 with 5 b^2.
        const Rat lhs = a * a;
        const Rat rhs = Rat(5) * (b * b);
        if (lhs == rhs) return 0; // only when a = b = 0
        return lhs < rhs ? sb : sa;
    }

    friend bool operator==(const Q5& x, const Q5& y) = default;
    friend bool operator<(const Q5& x, const Q5& y) { return (x - y).sign() < 0; }

    std::string str() const {
        if (b.num == 0) return a.str();
        std::string s;
        if (a.num != 0) s = a.str();
        if (b.num > 0 && !s.empty()) s += "+";
        if (b == Rat(-1)) {
            s += "-";
        } else if (!(b == Rat(1))) {
            s += b.str() + "*";
        }
        return s + "sqrt5";
    }
};

// The golden ratio (1 + sqrt 5) / 2.
inline Q5 golden_ratio() { return {Rat(1, 2), Rat(1, 2)}; }

} // namespace chromacy
