#pragma once

#include <cstdint>
#include <cmath>
#include <numeric>
#include <string>
#include <string_view>

#include "pmesym/errors.hpp"

namespace pmesym {

// Exact rational scalar on int64 with checked arithmetic. Every operation
// reduces to lowest terms and throws OverflowError instead of wrapping; the
// coefficient growth in this project is tiny (low-degree polynomial algebra),
// so 64 bits with __int128 intermediates is plenty.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw InvalidArgument("rational with zero denominator");
        i128 nn = n, dd = d;
        if (dd < 0) { nn = -nn; dd = -dd; }
        normalize(nn, dd);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw InvalidArgument("rational division by zero");
        return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const { Rational r; r.num_ = -num_; r.den_ = den_; return r; }

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

    double to_double() const { return double(num_) / double(den_); }

    // "p" or "p/q"
    static Rational parse(std::string_view s) {
        auto bad = [&] { throw InvalidArgument("cannot parse rational '" + std::string(s) + "'"); };
        if (s.empty()) bad();
        std::size_t slash = s.find('/');
        try {
            if (slash == std::string_view::npos)
                return Rational(to_i64(s));
            return Rational(to_i64(s.substr(0, slash)), to_i64(s.substr(slash + 1)));
        } catch (const InvalidArgument&) {
            throw;
        } catch (...) {
            bad();
        }
        return Rational(); // unreachable
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    Rational pow(int e) const {
        if (e < 0) {
            if (num_ == 0) throw InvalidArgument("0 to negative power");
            Rational inv; inv.num_ = den_, inv.den_ = num_;
            if (inv.den_ < 0) { inv.num_ = -inv.num_; inv.den_ = -inv.den_; }
            return inv.pow(-e);
        }
        Rational r(1), base = *this;
        while (e) {
            if (e & 1) r *= base;
            base = (e >>= 1) ? base * base : base;
        }
        return r;
    }

private:
    using i128 = __int128;
    std::int64_t num_, den_;

    static std::int64_t to_i64(std::string_view v) {
        // std::stoll needs a std::string; length-checked to keep it honest
        std::string t(v);
        std::size_t pos = 0;
        long long x = std::stoll(t, &pos);
        if (pos != t.size()) throw InvalidArgument("trailing characters in rational");
        return x;
    }

    static Rational from128(i128 n, i128 d) {
        Rational r;
        if (d < 0) { n = -n; d = -d; }
        r.normalize(n, d);
        return r;
    }

    void normalize(i128 n, i128 d) {
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw OverflowError("rational exceeds 64-bit range after reduction");
        num_ = std::int64_t(n);
        den_ = std::int64_t(d);
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

} // namespace pmesym
