#include "pmesym/repn.hpp"

#include <cmath>

#include "pmesym/errors.hpp"

namespace pmesym {

double pow_checked(double base, double expo) {
    if (base < 0)
        throw DomainViolation("negative base " + std::to_string(base) +
                              " under fractional power");
    if (base == 0) {
        if (expo > 0) return 0.0;
        throw DomainViolation("0 raised to a non-positive power");
    }
    return std::pow(base, expo);
}

double char_of(const CharacterParams& params, int j, double a, double y) {
    double sign = (j % 2 != 0 && params.p % 2 != 0) ? -1.0 : 1.0;
    return sign * std::pow(a, params.r) * std::exp(params.s * y);
}

double char_eval(const CharacterParams& params, const GroupElement& m_part,
                 const GroupElement& a_part, const GroupElement& nminus_part) {
    if (!in_M(m_part)) throw InvalidArgument("m factor is not in M");
    if (!in_A(a_part)) throw InvalidArgument("a factor is not in A");
    if (!in_Nminus(nminus_part)) throw InvalidArgument("n-minus factor is not in N-minus");
    const MParams mp = read_m_params(m_part);
    const AParams ap = read_a_params(a_part);
    return char_of(params, mp.j, ap.a, ap.y);
}

namespace {

int sgn_pow_parity(double v, int p) {
    // sgn(v)^p as +-1; v must be nonzero at call sites
    return (v < 0 && p % 2 != 0) ? -1 : 1;
}

Eigen::MatrixXd plane_rotation(int i, int j, double theta, int n) {
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
    const double c = std::cos(theta), s = std::sin(theta);
    r(i - 1, i - 1) = c;
    r(j - 1, j - 1) = c;
    r(i - 1, j - 1) = s;
    r(j - 1, i - 1) = -s;
    return r;
}

} // namespace

Field act_sl2_upper(double a, double b, const Field& f) {
    if (a == 0) throw InvalidArgument("sl2 upper action needs a != 0");
    const double factor = sgn_pow_parity(a, f.params.p) * std::pow(std::abs(a), f.params.r);
    const double a2 = a * a, ab = a * b;
    Field r = f;
    r.eval = [=, base = f](double t, const Eigen::VectorXd& x) {
        return factor * base.eval((t - ab) / a2, x);
    };
    r.domain = [=, base = f](double t, const Eigen::VectorXd& x) {
        return base.domain((t - ab) / a2, x);
    };
    return r;
}

Field act_rotation(int i, int j, double theta, const Field& f) {
    if (!(1 <= i && i < j && j <= f.n)) throw InvalidArgument("rotation plane out of range");
    const Eigen::MatrixXd rot = plane_rotation(i, j, -theta, f.n);
    Field r = f;
    r.eval = [rot, base = f](double t, const Eigen::VectorXd& x) {
        return base.eval(t, rot * x);
    };
    r.domain = [rot, base = f](double t, const Eigen::VectorXd& x) {
        return base.domain(t, rot * x);
    };
    return r;
}

Field act_translation(double tprime, const Eigen::VectorXd& xprime, const Field& f) {
    if (int(xprime.size()) != f.n) throw ArityMismatch("translation dimension mismatch");
    Field r = f;
    r.eval = [tprime, xprime, base = f](double t, const Eigen::VectorXd& x) {
        return base.eval(t - tprime, x - xprime);
    };
    r.domain = [tprime, xprime, base = f](double t, const Eigen::VectorXd& x) {
        return base.domain(t - tprime, x - xprime);
    };
    return r;
}

Field act_dilation(double eps, const Field& f) {
    const double factor = std::exp(f.params.s * eps);
    const double scale = std::exp(-eps);
    Field r = f;
    r.eval = [factor, scale, base = f](double t, const Eigen::VectorXd& x) {
        return factor * base.eval(t, scale * x);
    };
    r.domain = [scale, base = f](double t, const Eigen::VectorXd& x) {
        return base.domain(t, scale * x);
    };
    return r;
}

Field act_conformal(int i, double eps, const Field& f) {
    if (!(1 <= i && i <= f.n)) throw InvalidArgument("conformal axis out of range");
    const double s = f.params.s;
    Field r = f;
    r.eval = [i, eps, s, base = f](double t, const Eigen::VectorXd& x) {
        const double d = delta(i, Eigen::VectorXd(eps * x));
        if (d <= kSingularTol)
            throw SingularPoint("conformal flow singular: delta = " + std::to_string(d));
        return std::pow(d, s) * base.eval(t, gamma_map(i, eps, x));
    };
    r.domain = [i, eps, base = f](double t, const Eigen::VectorXd& x) {
        const double d = delta(i, Eigen::VectorXd(eps * x));
        if (d <= kSingularTol) return false;
        return base.domain(t, gamma_map(i, eps, x));
    };
    return r;
}

Field act_sl2_lower(double eps, const Field& f) {
    const int p = f.params.p;
    const double rr = f.params.r;
    Field r = f;
    r.eval = [eps, p, rr, base = f](double t, const Eigen::VectorXd& x) {
        const double d = 1 - eps * t;
        if (std::abs(d) <= kSingularTol)
            throw SingularPoint("sl2 lower flow singular: 1 - eps*t = 0");
        return sgn_pow_parity(d, p) * std::pow(std::abs(d), rr) * base.eval(t / d, x);
    };
    r.domain = [eps, base = f](double t, const Eigen::VectorXd& x) {
        const double d = 1 - eps * t;
        if (std::abs(d) <= kSingularTol) return false;
        return base.domain(t / d, x);
    };
    return r;
}

Field act_generic(const GroupElement& g, const Field& f) {
    if (g.n() != f.n) throw ArityMismatch("group element dimension mismatch");
    const GroupElement ginv = group_inv(g);
    Field r = f;
    r.eval = [ginv, base = f](double t, const Eigen::VectorXd& x) {
        const BruhatFactors bf = bruhat_factor(group_mul(ginv, make_n(t, x)));
        const double chi = char_of(base.params, bf.m_params.j, bf.a_params.a, bf.a_params.y);
        return base.eval(bf.n_params.t, bf.n_params.x) / chi;
    };
    r.domain = [ginv, base = f](double t, const Eigen::VectorXd& x) {
        try {
            const BruhatFactors bf = bruhat_factor(group_mul(ginv, make_n(t, x)));
            return base.domain(bf.n_params.t, bf.n_params.x);
        } catch (const OutsideCell&) {
            return false;
        }
    };
    return r;
}

Field apply_step(const ActionStep& s, const Field& f) {
    switch (s.type) {
        case StepType::Translation: return act_translation(s.t, s.x, f);
        case StepType::Rotation: return act_rotation(s.i, s.j, s.theta, f);
        case StepType::Dilation: return act_dilation(s.eps, f);
        case StepType::Sl2Upper: return act_sl2_upper(s.a, s.b, f);
        case StepType::Conformal: return act_conformal(s.i, s.eps, f);
        case StepType::Sl2Lower: return act_sl2_lower(s.eps, f);
        case StepType::Generic:
            if (!s.g) throw InvalidArgument("generic step without a group element");
            return act_generic(*s.g, f);
    }
    throw InvalidArgument("unknown action step");
}

Field apply_word(const std::vector<ActionStep>& word, const Field& f) {
    Field r = f;
    for (auto it = word.rbegin(); it != word.rend(); ++it) r = apply_step(*it, r);
    return r;
}

GroupElement step_group(const ActionStep& s, int n) {
    switch (s.type) {
        case StepType::Translation: {
            if (int(s.x.size()) != n) throw ArityMismatch("translation dimension mismatch");
            return make_n(s.t, s.x);
        }
        case StepType::Rotation: return make_rotation(s.i, s.j, s.theta, n);
        case StepType::Dilation: return make_h(1.0, s.eps, n);
        case StepType::Sl2Upper: {
            GroupElement g = identity_element(n);
            g.sl2 << s.a, s.b, 0.0, 1.0 / s.a;
            return g;
        }
        case StepType::Conformal: {
            Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
            x(s.i - 1) = s.eps;
            return make_nminus(0.0, x);
        }
        case StepType::Sl2Lower: {
            GroupElement g = identity_element(n);
            g.sl2 << 1.0, 0.0, s.eps, 1.0;
            return g;
        }
        case StepType::Generic:
            if (!s.g) throw InvalidArgument("generic step without a group element");
            return *s.g;
    }
    throw InvalidArgument("unknown action step");
}

void step_pull_center(const ActionStep& s, double& t, Eigen::VectorXd& x) {
    switch (s.type) {
        case StepType::Translation:
            t += s.t;
            x += s.x;
            return;
        case StepType::Rotation:
            x = plane_rotation(s.i, s.j, s.theta, int(x.size())) * x;
            return;
        case StepType::Dilation:
            x *= std::exp(s.eps);
            return;
        case StepType::Sl2Upper:
            t = s.a * s.a * t + s.a * s.b;
            return;
        case StepType::Conformal:
            x = gamma_map(s.i, -s.eps, x);
            return;
        case StepType::Sl2Lower: {
            const double d = 1 + s.eps * t;
            if (std::abs(d) <= kSingularTol)
                throw SingularPoint("sl2 lower pullback singular");
            t = t / d;
            return;
        }
        case StepType::Generic: {
            const BruhatFactors bf =
                bruhat_factor(group_mul(step_group(s, int(x.size())), make_n(t, x)));
            t = bf.n_params.t;
            x = bf.n_params.x;
            return;
        }
    }
    throw InvalidArgument("unknown action step");
}

InducedSection section_from_field(const Field& f) {
    InducedSection sec;
    sec.n = f.n;
    sec.params = f.params;
    sec.eval_g = [base = f](const GroupElement& g) {
        const BruhatFactors bf = bruhat_factor(g);
        const double chi = char_of(base.params, bf.m_params.j, bf.a_params.a, bf.a_params.y);
        return base.eval(bf.n_params.t, bf.n_params.x) / chi;
    };
    sec.domain = [base = f](const GroupElement& g) {
        try {
            const BruhatFactors bf = bruhat_factor(g);
            return base.domain(bf.n_params.t, bf.n_params.x);
        } catch (const OutsideCell&) {
            return false;
        }
    };
    return sec;
}

namespace {

// Entry a_{kl} of the Lorentz factor, 1-based as in the closed-form displays.
double la(const GroupElement& g, int k, int l) { return g.lorentz(k - 1, l - 1); }

constexpr double kBranchTol = 1e-12;

} // namespace

double stationary_phi_1d(const GroupElement& g, int p, const Rational& m) {
    if (g.n() != 1) throw InvalidArgument("1d section needs n = 1");
    if (m == Rational(0) || m == Rational(1)) throw InvalidArgument("m must avoid {0,1}");
    const double md = m.to_double();
    const double r = 2.0 / (md - 1.0);
    const double d = g.sl2(1, 1);
    const double a11 = la(g, 1, 1), a12 = la(g, 1, 2), a13 = la(g, 1, 3);
    const double a21 = la(g, 2, 1), a31 = la(g, 3, 1);

    if (std::abs(d) > kBranchTol) {
        const double pre = sgn_pow_parity(d, p) * std::pow(std::abs(d), r);
        if (std::abs(1 + a11) > kBranchTol && std::abs(a12 - a13) > kBranchTol) {
            const double xstar = (a21 + a31) / (1 + a11);
            const double base2 = -2.0 * xstar / (a12 - a13);
            return pre * pow_checked(xstar, 1.0 / md) * pow_checked(base2, 2.0 / (1.0 - md));
        }
        if (std::abs(1 + a11) <= kBranchTol && std::abs(a21 + a31) <= kBranchTol &&
            std::abs(a13) > kBranchTol && std::abs(a31) > kBranchTol &&
            (std::abs(a12 - a13) <= kBranchTol || std::abs(a12 + a13) <= kBranchTol)) {
            // boundary-limit branch: a_12 = +a_13 pairs with the upper signs.
            // When a power base comes out nonpositive the closed form does not
            // apply; such elements can still sit inside the cell, so fall
            // through to the factorization route instead of refusing.
            const double sign = std::abs(a12 - a13) <= kBranchTol ? -1.0 : 1.0;
            const double b1 = sign / a31;
            const double b2 = sign * 2.0 / (a31 * a13);
            if (b1 > 0 && b2 > 0)
                return pre * pow_checked(b1, 1.0 / md) * pow_checked(b2, 2.0 / (1.0 - md));
        }
    }
    // remaining points: go through the factorization when inside the cell
    BruhatFactors bf;
    try {
        bf = bruhat_factor(g);
    } catch (const OutsideCell&) {
        throw OutsideDomain("no closed-form branch applies and the element is outside the cell");
    }
    const double chi = char_of({p, r, r}, bf.m_params.j, bf.a_params.a, bf.a_params.y);
    return pow_checked(bf.n_params.x(0), 1.0 / md) / chi;
}

double stationary_phi_2d(const MultiPoly& k, const GroupElement& g, int p, const Rational& m) {
    if (g.n() != 2) throw InvalidArgument("2d section needs n = 2");
    if (k.nvars() != 2) throw ArityMismatch("harmonic polynomial must be 2-variable");
    if (m == Rational(0) || m == Rational(1)) throw InvalidArgument("m must avoid {0,1}");
    const double md = m.to_double();
    const double r = 2.0 / (md - 1.0);
    const double d = g.sl2(1, 1);
    if (std::abs(d) <= kBranchTol)
        throw OutsideDomain("sl2 entry d = 0 in the 2d closed form");

    const double a11 = la(g, 1, 1), a12 = la(g, 1, 2), a14 = la(g, 1, 4);
    const double a21 = la(g, 2, 1), a22 = la(g, 2, 2), a24 = la(g, 2, 4);
    const double a31 = la(g, 3, 1), a32 = la(g, 3, 2), a34 = la(g, 3, 4);
    const double a41 = la(g, 4, 1), a42 = la(g, 4, 2), a44 = la(g, 4, 4);

    const double den = (a12 - a21) * (a12 - a21) + (a11 + a22) * (a11 + a22);
    if (den <= kBranchTol * kBranchTol)
        throw OutsideDomain("2d closed form undefined: a_12 = a_21 and a_11 = -a_22");

    // (z1, z2) is the complex quotient (B1 + i B2) / (A + i C) with
    // A = a11 + a22, C = a12 - a21, B_i the column sums below; it recovers
    // exactly the N-slice coordinate of the factorization, which is what
    // equivariance of the section forces.
    const double z1 = ((a11 + a22) * (a31 + a41) + (a12 - a21) * (a32 + a42)) / den;
    const double z2 = ((a11 + a22) * (a32 + a42) - (a12 - a21) * (a31 + a41)) / den;
    const double zz = z1 * z1 + z2 * z2;
    const double base2 = a44 * (1 + zz) - a34 * (-1 + zz) - 2 * (a14 * z1 + a24 * z2);

    const std::vector<double> at = {0.0, z1, z2, 0.0};
    const double kval = poly_eval(k, at);
    return sgn_pow_parity(d, p) * std::pow(std::abs(d), r) *
           pow_checked(kval, 1.0 / md) * pow_checked(base2, 2.0 / (1.0 - md));
}

InducedSection stationary_section_1d(int p, const Rational& m) {
    InducedSection sec;
    sec.n = 1;
    const double r = 2.0 / (m.to_double() - 1.0);
    sec.params = {p, r, r};
    sec.eval_g = [p, m](const GroupElement& g) { return stationary_phi_1d(g, p, m); };
    sec.domain = [p, m](const GroupElement& g) {
        try {
            stationary_phi_1d(g, p, m);
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    return sec;
}

InducedSection stationary_section_2d(const MultiPoly& k, int p, const Rational& m) {
    InducedSection sec;
    sec.n = 2;
    const double r = 2.0 / (m.to_double() - 1.0);
    sec.params = {p, r, r};
    sec.eval_g = [k, p, m](const GroupElement& g) { return stationary_phi_2d(k, g, p, m); };
    sec.domain = [k, p, m](const GroupElement& g) {
        try {
            stationary_phi_2d(k, g, p, m);
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    return sec;
}

GroupElement compact_element(const CompactPoint& pt) {
    const int n = int(pt.z.size()) - 1;
    if (n < 1) throw InvalidArgument("compact point needs z in R^{n+1}, n >= 1");
    if (std::abs(pt.z.norm() - 1.0) > kCtorTol)
        throw InvalidArgument("compact point z must be a unit vector");
    GroupElement g = identity_element(n);
    const double c = std::cos(pt.theta), s = std::sin(pt.theta);
    g.sl2 << c, -s, s, c;
    g.lorentz.topLeftCorner(n + 1, n + 1) = so_from_e_to(pt.z);
    validate_group(g, kCtorTol);
    return g;
}

double compact_restrict(const InducedSection& phi, const CompactPoint& pt) {
    return phi.eval_g(compact_element(pt));
}

} // namespace pmesym
