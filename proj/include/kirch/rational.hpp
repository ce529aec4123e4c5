#ifndef KIRCH_RATIONAL_HPP
#define KIRCH_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kirch {

// Exact rational with 64-bit reduced numerator/denominator. Intermediate
// products are carried in 128 bits and reduced before narrowing; values that
// do not fit after reduction throw instead of wrapping.
class Rational {
  public:
    constexpr Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    double to_double() const { return double(num_) / double(den_); }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    void assign(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        *this = from128(n, d);
    }
    static Rational from128(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr __int128 lim = INT64_MAX;
        if (n > lim || n < -lim || d > lim) throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = std::int64_t(n);
        r.den_ = std::int64_t(d);
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

struct ComplexRational {
    Rational re, im;
    ComplexRational() = default;
    ComplexRational(Rational r) : re(r) {}
    ComplexRational(Rational r, Rational i) : re(r), im(i) {}
    static ComplexRational i_times(Rational r) { return ComplexRational(Rational(0), r); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    ComplexRational operator-() const { return {-re, -im}; }
    friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    ComplexRational& operator+=(const ComplexRational& o) { return *this = *this + o; }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    std::string str() const { return "(" + re.str() + ", " + im.str() + ")"; }
};

}  // namespace kirch

#endif
