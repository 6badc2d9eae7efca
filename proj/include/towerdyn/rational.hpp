#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace towerdyn {

using Int = boost::multiprecision::cpp_int;

/// Exact rational number. Always stored reduced with a positive denominator;
/// every operation is exact (no rounding anywhere).
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int n) : num_(n), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(Int n) : num_(std::move(n)), den_(1) {}
    Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    // True when the denominator is a power of two (integers included).
    bool is_dyadic() const { return (den_ & (den_ - 1)) == 0; }

    // For a dyadic rational p/2^k in lowest terms, returns k.
    unsigned dyadic_exponent() const {
        if (!is_dyadic()) throw std::invalid_argument("Rational: not dyadic");
        return boost::multiprecision::msb(den_);
    }

    static Rational pow2(long long k) {
        Rational r(1);
        if (k >= 0) r.num_ = Int(1) << static_cast<unsigned>(k);
        else r.den_ = Int(1) << static_cast<unsigned>(-k);
        return r;
    }

    Rational pow(long long e) const {
        if (e == 0) return Rational(1);
        if (num_ == 0 && e < 0) throw std::domain_error("Rational: 0 to a negative power");
        Int n = num_, d = den_;
        bool invert = e < 0;
        unsigned long long ae = invert ? static_cast<unsigned long long>(-e)
                                       : static_cast<unsigned long long>(e);
        Int rn = boost::multiprecision::pow(n, static_cast<unsigned>(ae));
        Int rd = boost::multiprecision::pow(d, static_cast<unsigned>(ae));
        return invert ? Rational(std::move(rd), std::move(rn))
                      : Rational(std::move(rn), std::move(rd));
    }

    Rational reciprocal() const {
        if (num_ == 0) throw std::domain_error("Rational: reciprocal of zero");
        return Rational(den_, num_);
    }

    Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        Int l = a.num_ * b.den_, r = b.num_ * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// "num/den" in lowest terms; bare "num" when the value is an integer.
    std::string to_string() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    /// Dyadic rendering "num/2^k" (bare "num" for integers). Requires is_dyadic().
    std::string to_dyadic_string() const {
        unsigned k = dyadic_exponent();
        std::string s = num_.str();
        if (k > 0) s += "/2^" + std::to_string(k);
        return s;
    }

    /// Accepts "a", "a/b" and "a/2^k" (b must be positive).
    static Rational parse(std::string_view text) {
        auto bad = [&] { return std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'"); };
        size_t slash = text.find('/');
        std::string_view num_part = text.substr(0, slash == std::string_view::npos ? text.size() : slash);
        if (num_part.empty()) throw bad();
        size_t start = num_part[0] == '-' ? 1 : 0;
        if (start == num_part.size()) throw bad();
        for (size_t i = start; i < num_part.size(); ++i)
            if (num_part[i] < '0' || num_part[i] > '9') throw bad();
        Int n{std::string(num_part)};
        if (slash == std::string_view::npos) return Rational(std::move(n));
        std::string_view den_part = text.substr(slash + 1);
        if (den_part.empty()) throw bad();
        if (den_part.size() > 2 && den_part[0] == '2' && den_part[1] == '^') {
            std::string_view exp = den_part.substr(2);
            for (char c : exp)
                if (c < '0' || c > '9') throw bad();
            unsigned long long k = std::stoull(std::string(exp));
            if (k > 100000) throw bad();
            return Rational(std::move(n), Int(1) << static_cast<unsigned>(k));
        }
        for (char c : den_part)
            if (c < '0' || c > '9') throw bad();
        Int d((std::string(den_part)));
        if (d == 0) throw bad();
        return Rational(std::move(n), std::move(d));
    }

    /// Display-only approximation.
    double to_double() const {
        using boost::multiprecision::cpp_rational;
        return static_cast<double>(cpp_rational(num_, den_));
    }

private:
    void normalize() {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int g = boost::multiprecision::gcd(num_ < 0 ? Int(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Int num_;
    Int den_;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Largest k with 2^k <= n, for n >= 1.
inline long long floor_log2(long long n) {
    if (n < 1) throw std::invalid_argument("floor_log2: argument must be positive");
    long long k = 0;
    while ((1LL << (k + 1)) <= n) ++k;
    return k;
}

}  // namespace towerdyn
