#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tabor {

using Int = boost::multiprecision::cpp_int;

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
    Rational(Int n) : num_(std::move(n)), den_(1) {}

    Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::invalid_argument("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        Int lhs = a.num_ * b.den_;
        Int rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// Largest integer <= value.
    Int floor() const {
        Int q = num_ / den_;
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }

    /// Fractional part in [0, 1).
    Rational frac() const { return *this - Rational(floor()); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    /// Nonnegative integer power.
    Rational pow(unsigned e) const {
        Rational acc(1), base = *this;
        while (e) {
            if (e & 1u) acc *= base;
            base *= base;
            e >>= 1u;
        }
        return acc;
    }

    double to_double() const {
        return num_.convert_to<double>() / den_.convert_to<double>();
    }

    /// Exact conversion; every finite double is a dyadic rational.
    static Rational from_double(double x) {
        if (!std::isfinite(x)) throw std::invalid_argument("Rational: non-finite double");
        if (x == 0.0) return Rational();
        int exp = 0;
        double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
        Int mant = static_cast<long long>(std::ldexp(m, 53));
        exp -= 53;
        if (exp >= 0) return Rational(mant << exp);
        return Rational(mant, Int(1) << -exp);
    }

    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int g = boost::multiprecision::gcd(num_ < 0 ? Int(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    Int num_;
    Int den_;
};

inline Rational pow2(int e) {
    if (e >= 0) return Rational(Int(1) << e);
    return Rational(Int(1), Int(1) << -e);
}

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace tabor
