#include "pmesym/vecfields.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>

#include "pmesym/report.hpp"

namespace pmesym {

namespace {

void check_m_value(const Rational& m) {
    if (m == Rational(0) || m == Rational(1))
        throw InvalidArgument("m must avoid {0,1}");
}

// Exact recovery of a rational from a double (continued fractions); refuses
// anything that is not a small rational to machine precision, which keeps the
// algebra layer honestly exact.
Rational rat_from_double(double v) {
    if (!std::isfinite(v)) throw InvalidArgument("non-finite coordinate");
    if (v == 0.0) return Rational(0);
    const double target = v;
    double x = std::abs(v);
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(x);
        if (fl > 9e17) break;
        std::int64_t a = std::int64_t(fl);
        std::int64_t h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > std::int64_t(1e12) || k2 < 0 || h2 < 0) break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        double num = double(h1), den = double(k1);
        if (std::abs(num / den - std::abs(target)) <= 1e-13 * std::max(1.0, std::abs(target))) {
            Rational r(target < 0 ? -h1 : h1, k1);
            if (std::abs(r.to_double() - target) <= 1e-12 * std::max(1.0, std::abs(target)))
                return r;
        }
        double frac = x - fl;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    throw InvalidArgument("coordinate " + std::to_string(v) + " is not a small rational");
}

// Minimal exact matrix type for the basis decomposition work; sizes are at
// most (n+2)x(n+2) with n <= a handful, so naive loops are fine.
struct RatMat {
    int rows = 0, cols = 0;
    std::vector<Rational> v;

    RatMat() = default;
    RatMat(int r, int c) : rows(r), cols(c), v(std::size_t(r) * c, Rational(0)) {}

    Rational& at(int r, int c) { return v[std::size_t(r) * cols + c]; }
    const Rational& at(int r, int c) const { return v[std::size_t(r) * cols + c]; }

    friend RatMat operator*(const RatMat& a, const RatMat& b) {
        RatMat r(a.rows, b.cols);
        for (int i = 0; i < a.rows; ++i)
            for (int k = 0; k < a.cols; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (int j = 0; j < b.cols; ++j)
                    r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }
    friend RatMat operator-(const RatMat& a, const RatMat& b) {
        RatMat r(a.rows, a.cols);
        for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i] - b.v[i];
        return r;
    }
    friend bool operator==(const RatMat& a, const RatMat& b) {
        return a.rows == b.rows && a.cols == b.cols && a.v == b.v;
    }
};

struct ExactPair {
    RatMat sl2;   // 2x2
    RatMat lor;   // (n+2)x(n+2)

    friend bool operator==(const ExactPair& a, const ExactPair& b) {
        return a.sl2 == b.sl2 && a.lor == b.lor;
    }
};

ExactPair to_exact(const AlgebraElement& x) {
    ExactPair e{RatMat(2, 2), RatMat(x.n() + 2, x.n() + 2)};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) e.sl2.at(i, j) = rat_from_double(x.sl2(i, j));
    for (int i = 0; i < e.lor.rows; ++i)
        for (int j = 0; j < e.lor.cols; ++j) e.lor.at(i, j) = rat_from_double(x.lorentz(i, j));
    return e;
}

ExactPair exact_bracket(const ExactPair& a, const ExactPair& b) {
    return {a.sl2 * b.sl2 - b.sl2 * a.sl2, a.lor * b.lor - b.lor * a.lor};
}

// Coordinates of an element in the catalogued basis
// {E, H, F} u {boost, nu_i^+, nu_i^-, E_{ij}-E_{ji}}.
struct ExactCoords {
    int n = 0;
    Rational cE, cH, cF, cBoost;
    std::vector<Rational> nu_plus, nu_minus;
    std::map<std::pair<int, int>, Rational> rot;   // 1-based i < j
};

ExactPair coords_to_matrices(const ExactCoords& c) {
    const int n = c.n;
    ExactPair e{RatMat(2, 2), RatMat(n + 2, n + 2)};
    e.sl2.at(0, 0) = c.cH;
    e.sl2.at(1, 1) = -c.cH;
    e.sl2.at(0, 1) = c.cE;
    e.sl2.at(1, 0) = c.cF;
    e.lor.at(n, n + 1) = -c.cBoost;
    e.lor.at(n + 1, n) = -c.cBoost;
    for (int i = 1; i <= n; ++i) {
        const Rational& p = c.nu_plus[std::size_t(i - 1)];
        const Rational& q = c.nu_minus[std::size_t(i - 1)];
        e.lor.at(n, i - 1) += p + q;
        e.lor.at(i - 1, n) += -(p + q);
        e.lor.at(n + 1, i - 1) += p - q;
        e.lor.at(i - 1, n + 1) += p - q;
    }
    for (const auto& [ij, w] : c.rot) {
        e.lor.at(ij.first - 1, ij.second - 1) += w;
        e.lor.at(ij.second - 1, ij.first - 1) += -w;
    }
    return e;
}

ExactCoords decompose_exact(const ExactPair& e, int n) {
    ExactCoords c;
    c.n = n;
    c.cH = e.sl2.at(0, 0);
    c.cE = e.sl2.at(0, 1);
    c.cF = e.sl2.at(1, 0);
    c.cBoost = -e.lor.at(n, n + 1);
    c.nu_plus.assign(std::size_t(n), Rational(0));
    c.nu_minus.assign(std::size_t(n), Rational(0));
    const Rational half(1, 2);
    for (int i = 1; i <= n; ++i) {
        Rational a = e.lor.at(n, i - 1), b = e.lor.at(n + 1, i - 1);
        c.nu_plus[std::size_t(i - 1)] = (a + b) * half;
        c.nu_minus[std::size_t(i - 1)] = (a - b) * half;
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            Rational w = e.lor.at(i - 1, j - 1);
            if (!w.is_zero()) c.rot[{i, j}] = w;
        }
    if (!(coords_to_matrices(c) == e))
        throw InvalidArgument("element outside the modeled span of the catalogued basis");
    return c;
}

MultiPoly mono_x(int n, int i) { return MultiPoly::var_x(n, i); }

VectorField psi_from_coords(const ExactCoords& c, const Rational& m) {
    const int n = c.n;
    const Rational r = Rational(2) / (m - Rational(1));   // = s
    VectorField out(n);
    const MultiPoly t = MultiPoly::var_t(n);
    const MultiPoly u = MultiPoly::var_u(n);

    // E -> -d/dt ; H -> -2t d/dt + r u d/du ; F -> t^2 d/dt - r t u d/du
    out.xi_t = out.xi_t + poly_scale(MultiPoly::constant(n, Rational(1)), -c.cE) +
               poly_scale(t, Rational(-2) * c.cH) + poly_scale(t * t, c.cF);
    out.eta = out.eta + poly_scale(u, r * c.cH) + poly_scale(t * u, -r * c.cF);

    // boost -> sum x_i d/dx_i - s u d/du
    for (int i = 1; i <= n; ++i)
        out.xi[std::size_t(i - 1)] = out.xi[std::size_t(i - 1)] + poly_scale(mono_x(n, i), c.cBoost);
    out.eta = out.eta + poly_scale(u, -r * c.cBoost);

    // nu_i^+ -> -d/dx_i
    for (int i = 1; i <= n; ++i)
        out.xi[std::size_t(i - 1)] = out.xi[std::size_t(i - 1)] +
            MultiPoly::constant(n, -c.nu_plus[std::size_t(i - 1)]);

    // nu_i^- -> -(x_i^2 - sum_{j!=i} x_j^2) d/dx_i - sum_{j!=i} 2 x_i x_j d/dx_j
    //           + 2 s x_i u d/du
    for (int i = 1; i <= n; ++i) {
        const Rational& q = c.nu_minus[std::size_t(i - 1)];
        if (q.is_zero()) continue;
        MultiPoly wi = mono_x(n, i) * mono_x(n, i);
        for (int j = 1; j <= n; ++j)
            if (j != i) wi = wi - mono_x(n, j) * mono_x(n, j);
        out.xi[std::size_t(i - 1)] = out.xi[std::size_t(i - 1)] + poly_scale(wi, -q);
        for (int j = 1; j <= n; ++j)
            if (j != i)
                out.xi[std::size_t(j - 1)] = out.xi[std::size_t(j - 1)] +
                    poly_scale(mono_x(n, i) * mono_x(n, j), Rational(-2) * q);
        out.eta = out.eta + poly_scale(mono_x(n, i) * u, Rational(2) * r * q);
    }

    // E_{ij}-E_{ji} -> x_i d/dx_j - x_j d/dx_i
    for (const auto& [ij, w] : c.rot) {
        out.xi[std::size_t(ij.second - 1)] = out.xi[std::size_t(ij.second - 1)] +
            poly_scale(mono_x(n, ij.first), w);
        out.xi[std::size_t(ij.first - 1)] = out.xi[std::size_t(ij.first - 1)] +
            poly_scale(mono_x(n, ij.second), -w);
    }
    return out;
}

int parse_gen_index(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to) throw InvalidArgument("generator key '" + s + "' missing index");
    int v = 0;
    for (std::size_t k = from; k < to; ++k) {
        if (s[k] < '0' || s[k] > '9')
            throw InvalidArgument("generator key '" + s + "' has a bad index");
        v = v * 10 + (s[k] - '0');
    }
    return v;
}

} // namespace

VectorField::VectorField(int n_spatial)
    : n(n_spatial), xi_t(n_spatial), xi(), eta(n_spatial) {
    for (int i = 0; i < n_spatial; ++i) xi.emplace_back(n_spatial);
}

VectorField vf_add(const VectorField& a, const VectorField& b) {
    if (a.n != b.n) throw ArityMismatch("vector fields over different dimensions");
    VectorField r(a.n);
    r.xi_t = a.xi_t + b.xi_t;
    for (int i = 0; i < a.n; ++i) r.xi[std::size_t(i)] = a.xi[std::size_t(i)] + b.xi[std::size_t(i)];
    r.eta = a.eta + b.eta;
    return r;
}

VectorField vf_scale(const VectorField& a, const Rational& c) {
    VectorField r(a.n);
    r.xi_t = poly_scale(a.xi_t, c);
    for (int i = 0; i < a.n; ++i) r.xi[std::size_t(i)] = poly_scale(a.xi[std::size_t(i)], c);
    r.eta = poly_scale(a.eta, c);
    return r;
}

bool vf_equal(const VectorField& a, const VectorField& b) {
    if (a.n != b.n) return false;
    if (a.xi_t != b.xi_t || a.eta != b.eta) return false;
    for (int i = 0; i < a.n; ++i)
        if (a.xi[std::size_t(i)] != b.xi[std::size_t(i)]) return false;
    return true;
}

std::string vf_str(const VectorField& a) {
    std::string s = "(" + a.xi_t.str() + ") d/dt";
    for (int i = 0; i < a.n; ++i)
        s += " + (" + a.xi[std::size_t(i)].str() + ") d/dx" + std::to_string(i + 1);
    s += " + (" + a.eta.str() + ") d/du";
    return s;
}

VectorField generator(const std::string& name, int n, const Rational& m) {
    check_m_value(m);
    if (n < 1) throw InvalidArgument("dimension must be >= 1");
    const Rational mm1 = m - Rational(1);
    VectorField v(n);
    const MultiPoly u = MultiPoly::var_u(n);

    if (name == "X1") {
        v.xi_t = MultiPoly::constant(n, Rational(1));
        return v;
    }
    if (name == "X2") {
        for (int i = 1; i <= n; ++i) v.xi[std::size_t(i - 1)] = mono_x(n, i);
        v.eta = poly_scale(u, Rational(2) / mm1);
        return v;
    }
    if (name == "X3") {
        v.xi_t = poly_scale(MultiPoly::var_t(n), Rational(-1));
        v.eta = poly_scale(u, Rational(1) / mm1);
        return v;
    }
    if (!name.empty() && (name[0] == 'Y' || name[0] == 'W')) {
        int i = parse_gen_index(name, 1, name.size());
        if (i < 1 || i > n) throw InvalidArgument("generator index out of range in '" + name + "'");
        if (name[0] == 'Y') {
            v.xi[std::size_t(i - 1)] = MultiPoly::constant(n, Rational(1));
            return v;
        }
        if (m != Rational(n - 2, n + 2) || n == 2)
            throw InvalidArgument("W generators exist only at m = (n-2)/(n+2), n != 2");
        MultiPoly wi = mono_x(n, i) * mono_x(n, i);
        for (int j = 1; j <= n; ++j)
            if (j != i) wi = wi - mono_x(n, j) * mono_x(n, j);
        v.xi[std::size_t(i - 1)] = wi;
        for (int j = 1; j <= n; ++j)
            if (j != i)
                v.xi[std::size_t(j - 1)] =
                    poly_scale(mono_x(n, i) * mono_x(n, j), Rational(2));
        v.eta = poly_scale(mono_x(n, i) * u, Rational(4) / mm1);
        return v;
    }
    if (!name.empty() && name[0] == 'Z') {
        auto sep = name.find('_');
        int i, j;
        if (sep != std::string::npos) {
            i = parse_gen_index(name, 1, sep);
            j = parse_gen_index(name, sep + 1, name.size());
        } else {
            if (name.size() != 3) throw InvalidArgument("use Z<i>_<j> for multi-digit indices");
            i = parse_gen_index(name, 1, 2);
            j = parse_gen_index(name, 2, 3);
        }
        if (!(1 <= i && i < j && j <= n))
            throw InvalidArgument("rotation generator needs 1 <= i < j <= n");
        v.xi[std::size_t(j - 1)] = mono_x(n, i);
        v.xi[std::size_t(i - 1)] = poly_scale(mono_x(n, j), Rational(-1));
        return v;
    }
    throw InvalidArgument("unknown generator '" + name + "'");
}

VectorField bracket(const VectorField& a, const VectorField& b) {
    if (a.n != b.n) throw ArityMismatch("bracket over different dimensions");
    const int n = a.n;
    auto slot = [n](const VectorField& f, int s) -> const MultiPoly& {
        if (s == 0) return f.xi_t;
        if (s == n + 1) return f.eta;
        return f.xi[std::size_t(s - 1)];
    };
    VectorField r(n);
    for (int bslot = 0; bslot <= n + 1; ++bslot) {
        MultiPoly acc(n);
        for (int aslot = 0; aslot <= n + 1; ++aslot) {
            acc = acc + slot(a, aslot) * poly_diff(slot(b, bslot), aslot) -
                  slot(b, aslot) * poly_diff(slot(a, bslot), aslot);
        }
        if (bslot == 0) r.xi_t = acc;
        else if (bslot == n + 1) r.eta = acc;
        else r.xi[std::size_t(bslot - 1)] = acc;
    }
    return r;
}

VectorField iso_map(const AlgebraElement& x, int n, const Rational& m) {
    check_m_value(m);
    if (x.n() != n) throw InvalidArgument("algebra element dimension mismatch");
    return psi_from_coords(decompose_exact(to_exact(x), n), m);
}

ConformanceReport check_homomorphism(int n, const Rational& m, bool full_mode) {
    check_m_value(m);
    if (n < 1) throw InvalidArgument("dimension must be >= 1");
    if (full_mode) {
        if (n == 2) throw InvalidArgument("full mode refuses n = 2 (m would be 0)");
        if (m != Rational(n - 2, n + 2))
            throw InvalidArgument("full mode requires m = (n-2)/(n+2)");
    }

    std::vector<std::string> keys = {"sl2_e", "sl2_h", "boost"};
    for (int i = 1; i <= n; ++i) keys.push_back("nu_plus_" + std::to_string(i));
    if (full_mode)
        for (int i = 1; i <= n; ++i) keys.push_back("nu_minus_" + std::to_string(i));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            keys.push_back("rot_" + std::to_string(i) + "_" + std::to_string(j));

    ConformanceReport rep;
    rep.n = n;
    rep.m = m;
    rep.full_mode = full_mode;
    rep.sign_adjustments = sign_conventions();
    rep.passed = true;

    std::vector<ExactPair> mats;
    std::vector<VectorField> fields;
    for (const auto& k : keys) {
        mats.push_back(to_exact(algebra_basis(k, n)));
        fields.push_back(psi_from_coords(decompose_exact(mats.back(), n), m));
    }

    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = i + 1; j < keys.size(); ++j) {
            const ExactPair z = exact_bracket(mats[i], mats[j]);
            const VectorField lhs = bracket(fields[i], fields[j]);
            const VectorField rhs = psi_from_coords(decompose_exact(z, n), m);
            const bool ok = vf_equal(lhs, rhs);
            rep.pairs.push_back({keys[i], keys[j], ok});
            if (!ok) {
                rep.passed = false;
                rep.failures.push_back("[" + keys[i] + ", " + keys[j] + "]: field bracket " +
                                       vf_str(lhs) + " vs image " + vf_str(rhs));
            }
        }
    return rep;
}

double apply(const VectorField& v, const Field& f, double t, const Eigen::VectorXd& x) {
    if (v.n != f.n || int(x.size()) != v.n)
        throw ArityMismatch("field/operator dimension mismatch");
    const double h = 1e-5;
    auto need = [&](double tt, const Eigen::VectorXd& xx) {
        if (!f.domain(tt, xx))
            throw DomainViolation("stencil point outside the field domain");
        return f.eval(tt, xx);
    };
    auto richardson_t = [&]() {
        const double d1 = (need(t + h, x) - need(t - h, x)) / (2 * h);
        const double d2 = (need(t + h / 2, x) - need(t - h / 2, x)) / h;
        return (4 * d2 - d1) / 3;
    };
    auto richardson_x = [&](int i) {
        Eigen::VectorXd xp = x, xm = x;
        xp(i) += h; xm(i) -= h;
        const double d1 = (need(t, xp) - need(t, xm)) / (2 * h);
        xp(i) = x(i) + h / 2; xm(i) = x(i) - h / 2;
        const double d2 = (need(t, xp) - need(t, xm)) / h;
        return (4 * d2 - d1) / 3;
    };

    const double u0 = need(t, x);
    std::vector<double> pt(std::size_t(v.n) + 2);
    pt[0] = t;
    for (int i = 0; i < v.n; ++i) pt[std::size_t(i) + 1] = x(i);
    pt[std::size_t(v.n) + 1] = u0;

    double acc = poly_eval(v.eta, pt);
    if (!v.xi_t.is_zero()) acc += poly_eval(v.xi_t, pt) * richardson_t();
    for (int i = 0; i < v.n; ++i)
        if (!v.xi[std::size_t(i)].is_zero()) acc += poly_eval(v.xi[std::size_t(i)], pt) * richardson_x(i);
    return acc;
}

} // namespace pmesym
