#include "pmesym/multipoly.hpp"

#include <algorithm>

#include "pmesym/errors.hpp"

namespace pmesym {

namespace {

void check_same(const MultiPoly& a, const MultiPoly& b, const char* op) {
    if (a.nvars() != b.nvars())
        throw ArityMismatch(std::string(op) + " on polynomials over " +
                            std::to_string(a.nvars()) + " and " +
                            std::to_string(b.nvars()) + " spatial variables");
}

std::string var_name(int slot, int n) {
    if (slot == 0) return "t";
    if (slot == n + 1) return "u";
    return "x" + std::to_string(slot);
}

} // namespace

MultiPoly::MultiPoly(int n_spatial) : n_(n_spatial) {
    if (n_spatial < 1) throw InvalidArgument("polynomial needs spatial dimension >= 1");
}

MultiPoly MultiPoly::constant(int n, const Rational& c) {
    MultiPoly p(n);
    p.add_term(Monomial(std::size_t(n) + 2, 0), c);
    return p;
}

MultiPoly MultiPoly::var_t(int n) {
    MultiPoly p(n);
    Monomial m(std::size_t(n) + 2, 0);
    m[0] = 1;
    p.add_term(m, Rational(1));
    return p;
}

MultiPoly MultiPoly::var_x(int n, int i) {
    if (i < 1 || i > n) throw InvalidArgument("spatial index out of range");
    MultiPoly p(n);
    Monomial m(std::size_t(n) + 2, 0);
    m[std::size_t(i)] = 1;
    p.add_term(m, Rational(1));
    return p;
}

MultiPoly MultiPoly::var_u(int n) {
    MultiPoly p(n);
    Monomial m(std::size_t(n) + 2, 0);
    m[std::size_t(n) + 1] = 1;
    p.add_term(m, Rational(1));
    return p;
}

int MultiPoly::degree() const {
    int d = -1;
    for (const auto& [mono, c] : terms_) {
        int s = 0;
        for (auto e : mono) s += int(e);
        d = std::max(d, s);
    }
    return d;
}

void MultiPoly::add_term(const Monomial& mono, const Rational& c) {
    if (int(mono.size()) != arity())
        throw ArityMismatch("monomial arity " + std::to_string(mono.size()) +
                            ", expected " + std::to_string(arity()));
    if (c.is_zero()) return;
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
        terms_.emplace(mono, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Rational MultiPoly::coeff(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [mono, c] : terms_) {
        if (!out.empty()) out += " + ";
        std::string factors;
        for (int v = 0; v < arity(); ++v) {
            if (mono[std::size_t(v)] == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += var_name(v, n_);
            if (mono[std::size_t(v)] > 1) factors += "^" + std::to_string(mono[std::size_t(v)]);
        }
        if (factors.empty()) out += c.str();
        else if (c == Rational(1)) out += factors;
        else out += "(" + c.str() + ")*" + factors;
    }
    return out;
}

MultiPoly poly_add(const MultiPoly& a, const MultiPoly& b) {
    check_same(a, b, "add");
    MultiPoly r = a;
    for (const auto& [mono, c] : b.terms()) r.add_term(mono, c);
    return r;
}

MultiPoly poly_sub(const MultiPoly& a, const MultiPoly& b) {
    check_same(a, b, "sub");
    MultiPoly r = a;
    for (const auto& [mono, c] : b.terms()) r.add_term(mono, -c);
    return r;
}

MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b) {
    check_same(a, b, "mul");
    MultiPoly r(a.nvars());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            MultiPoly::Monomial m(ma);
            for (std::size_t k = 0; k < m.size(); ++k) m[k] += mb[k];
            r.add_term(m, ca * cb);
        }
    return r;
}

MultiPoly poly_scale(const MultiPoly& a, const Rational& c) {
    MultiPoly r(a.nvars());
    if (c.is_zero()) return r;
    for (const auto& [mono, ca] : a.terms()) r.add_term(mono, ca * c);
    return r;
}

MultiPoly poly_neg(const MultiPoly& a) { return poly_scale(a, Rational(-1)); }

MultiPoly poly_diff(const MultiPoly& a, int var) {
    if (var < 0 || var >= a.arity())
        throw InvalidArgument("differentiation slot " + std::to_string(var) +
                              " out of range for arity " + std::to_string(a.arity()));
    MultiPoly r(a.nvars());
    for (const auto& [mono, c] : a.terms()) {
        auto e = mono[std::size_t(var)];
        if (e == 0) continue;
        MultiPoly::Monomial m(mono);
        m[std::size_t(var)] = e - 1;
        r.add_term(m, c * Rational(std::int64_t(e)));
    }
    return r;
}

Rational poly_eval(const MultiPoly& a, const std::vector<Rational>& point) {
    if (int(point.size()) != a.arity())
        throw ArityMismatch("evaluation point arity " + std::to_string(point.size()) +
                            ", expected " + std::to_string(a.arity()));
    Rational acc(0);
    for (const auto& [mono, c] : a.terms()) {
        Rational term = c;
        for (std::size_t k = 0; k < mono.size(); ++k)
            if (mono[k]) term *= point[k].pow(int(mono[k]));
        acc += term;
    }
    return acc;
}

double poly_eval(const MultiPoly& a, const std::vector<double>& point) {
    if (int(point.size()) != a.arity())
        throw ArityMismatch("evaluation point arity " + std::to_string(point.size()) +
                            ", expected " + std::to_string(a.arity()));
    double acc = 0;
    for (const auto& [mono, c] : a.terms()) {
        double term = c.to_double();
        for (std::size_t k = 0; k < mono.size(); ++k)
            for (std::uint32_t e = 0; e < mono[k]; ++e) term *= point[k];
        acc += term;
    }
    return acc;
}

} // namespace pmesym
