#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <iosfwd>

#include "wcounts/errors.hpp"

namespace wcounts {

// Exact rational arithmetic on 64-bit numerator/denominator with 128-bit
// intermediates. Any operation whose reduced result leaves the 64-bit range
// throws overflow_error instead of wrapping, so results are always exact.
// Values are kept normalized: den > 0, gcd(|num|, den) = 1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) { assign(n, d); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    long double to_long_double() const {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    Rational operator-() const {
        Rational r;
        r.num_ = checked_negate(num_);
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                         i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                         i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw validation_error("rational", "division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Integer power; exponent may be negative when the base is nonzero.
    Rational pow(long long e) const {
        if (e < 0) {
            if (num_ == 0) throw validation_error("rational", "0 raised to a negative power");
            return (Rational(1) / *this).pow(-e);
        }
        Rational acc(1), base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            base = (e > 1) ? base * base : base;
            e >>= 1;
        }
        return acc;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // Largest integer <= value.
    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    // Accepts "n", "-n", "n/d"; whitespace is not permitted.
    static Rational parse(const std::string& text);

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;

    long long num_;
    long long den_;

    static long long checked_negate(long long v) {
        if (v == INT64_MIN) throw overflow_error("rational", "negation overflow");
        return -v;
    }

    static long long narrow(i128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw overflow_error("rational", "value outside 64-bit range after reduction");
        return static_cast<long long>(v);
    }

    static i128 gcd128(i128 a, i128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational from_i128(i128 n, i128 d) {
        if (d == 0) throw validation_error("rational", "zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        Rational r;
        r.num_ = narrow(n);
        r.den_ = narrow(d);
        return r;
    }

    void assign(long long n, long long d) {
        Rational r = from_i128(n, d);
        num_ = r.num_;
        den_ = r.den_;
    }
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace wcounts
