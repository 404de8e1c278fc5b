#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pmesym/rational.hpp"

namespace pmesym {

// Sparse exact polynomial over the variables (t, x_1..x_n, u).
// The stored dimension is the spatial one; exponent vectors have arity n+2
// with slot 0 = t, slots 1..n = x_i, slot n+1 = u.
class MultiPoly {
public:
    using Monomial = std::vector<std::uint32_t>;

    explicit MultiPoly(int n_spatial);

    static MultiPoly constant(int n_spatial, const Rational& c);
    static MultiPoly var_t(int n_spatial);
    static MultiPoly var_x(int n_spatial, int i);   // 1-based spatial index
    static MultiPoly var_u(int n_spatial);

    int nvars() const { return n_; }                 // spatial dimension
    int arity() const { return n_ + 2; }

    bool is_zero() const { return terms_.empty(); }
    int degree() const;                              // total degree, -1 for 0
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    void add_term(const Monomial& mono, const Rational& c);
    Rational coeff(const Monomial& mono) const;

    std::string str() const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

private:
    int n_;
    std::map<Monomial, Rational> terms_;   // zero coefficients never stored
};

MultiPoly poly_add(const MultiPoly& a, const MultiPoly& b);
MultiPoly poly_sub(const MultiPoly& a, const MultiPoly& b);
MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b);
MultiPoly poly_scale(const MultiPoly& a, const Rational& c);
MultiPoly poly_neg(const MultiPoly& a);

// var is the absolute slot: 0 = t, 1..n = x_i, n+1 = u
MultiPoly poly_diff(const MultiPoly& a, int var);

Rational poly_eval(const MultiPoly& a, const std::vector<Rational>& point);
double poly_eval(const MultiPoly& a, const std::vector<double>& point);

inline MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return poly_add(a, b); }
inline MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return poly_sub(a, b); }
inline MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return poly_mul(a, b); }
inline MultiPoly operator*(const Rational& c, const MultiPoly& a) { return poly_scale(a, c); }
inline MultiPoly operator-(const MultiPoly& a) { return poly_neg(a); }

} // namespace pmesym
