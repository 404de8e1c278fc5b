#include "pmesym/decomp.hpp"

#include <cmath>

namespace pmesym {

namespace {

double max_abs_diff(const GroupElement& a, const GroupElement& b) {
    return std::max((a.sl2 - b.sl2).cwiseAbs().maxCoeff(),
                    (a.lorentz - b.lorentz).cwiseAbs().maxCoeff());
}

GroupElement product4(const GroupElement& a, const GroupElement& b,
                      const GroupElement& c, const GroupElement& d) {
    GroupElement r{a.sl2 * b.sl2 * c.sl2 * d.sl2,
                   a.lorentz * b.lorentz * c.lorentz * d.lorentz};
    return r;
}

void check_axis(int i, int n) {
    if (i < 1 || i > n) throw InvalidArgument("axis index out of range");
}

} // namespace

double delta(int i, const Eigen::VectorXd& x) {
    check_axis(i, int(x.size()));
    return 1.0 - 2.0 * x(i - 1) + x.squaredNorm();
}

Rational delta(int i, const std::vector<Rational>& x) {
    check_axis(i, int(x.size()));
    Rational s(1);
    s -= Rational(2) * x[std::size_t(i - 1)];
    for (const auto& c : x) s += c * c;
    return s;
}

Eigen::VectorXd gamma_map(int i, double eps, const Eigen::VectorXd& x) {
    const double d = delta(i, (eps * x).eval());
    if (std::abs(d) < kSingularTol)
        throw SingularPoint("delta_i(eps x) = " + std::to_string(d));
    Eigen::VectorXd r = x;
    r(i - 1) -= eps * x.squaredNorm();
    return r / d;
}

Eigen::VectorXd kappa_map(int i, double eps, const Eigen::VectorXd& x) {
    const double d = delta(i, (eps * x).eval());
    if (std::abs(d) < kSingularTol)
        throw SingularPoint("delta_i(eps x) = " + std::to_string(d));
    Eigen::VectorXd r = eps * (eps * x);
    r(i - 1) -= eps;
    return r / d;
}

BruhatFactors lemma_factor(int i, double eps, double t, const Eigen::VectorXd& x) {
    const int n = int(x.size());
    check_axis(i, n);
    const double d = delta(i, (eps * x).eval());
    if (!(d > 0) || d < kSingularTol)
        throw SingularPoint("lemma_factor needs delta_i(eps x) > 0, got " + std::to_string(d));

    Eigen::VectorXd ei = Eigen::VectorXd::Zero(n);
    ei(i - 1) = 1.0;
    const GroupElement input = group_mul(make_nminus(0, (-eps * ei).eval()), make_n(t, x));

    BruhatFactors f;
    f.n_part = make_n(t, gamma_map(i, eps, x));
    f.a_part = make_h(1.0, -std::log(d), n);
    f.nminus_part = make_nminus(0, kappa_map(i, eps, x));
    // the M factor is the residual of the closed forms, then validated
    const GroupElement residual_m =
        group_mul(group_mul(group_inv(f.n_part), input),
                  group_mul(group_inv(f.nminus_part), group_inv(f.a_part)));
    if (!in_M(residual_m, kGroupTol))
        throw NumericDrift("lemma residual not in M");
    f.m_part = residual_m;

    f.n_params = {t, gamma_map(i, eps, x)};
    f.m_params = read_m_params(f.m_part);
    f.a_params = {1.0, -std::log(d)};
    f.nminus_params = {0.0, kappa_map(i, eps, x)};
    f.residual = max_abs_diff(product4(f.n_part, f.m_part, f.a_part, f.nminus_part), input);
    if (f.residual > kLemmaTol)
        throw NumericDrift("lemma reconstruction residual " + std::to_string(f.residual));
    return f;
}

BruhatFactors bruhat_factor(const GroupElement& g) {
    const int n = g.n();

    // sl2: [[a,b],[c,d]] = n_tau . (-1)^j diag(alpha,1/alpha) . nminus_sigma
    const double d = g.sl2(1, 1);
    if (std::abs(d) < 1e-300)
        throw OutsideCell("sl2 entry d = 0");
    const double alpha = 1.0 / std::abs(d);
    const double tau = g.sl2(0, 1) / d;
    const double sigma = g.sl2(1, 0) / d;

    // Lorentz: read the N and A parameters off the isotropic vector
    // xi- = e_{n+1} - e_{n+2}, which N^- and M fix and h_{.,y} scales by e^{-y}.
    Eigen::VectorXd xi = Eigen::VectorXd::Zero(n + 2);
    xi(n) = 1.0;
    xi(n + 1) = -1.0;
    const Eigen::VectorXd w = g.lorentz * xi;
    const double eny = 0.5 * (w(n) - w(n + 1));   // e^{-y}
    if (!(eny > 0))
        throw OutsideCell("Lorentz cell condition w_{n+1} - w_{n+2} <= 0 (value " +
                          std::to_string(2 * eny) + ")");
    const double y = -std::log(eny);
    const Eigen::VectorXd xN = (-0.5 / eny) * w.head(n);

    const Eigen::VectorXd wp = g.lorentz.transpose() * xi;
    const Eigen::VectorXd xNm = (-0.5 / eny) * wp.head(n);

    BruhatFactors f;
    f.n_part = make_n(tau, xN);
    f.a_part = make_h(alpha, y, n);
    f.nminus_part = make_nminus(sigma, xNm);
    const GroupElement residual_m =
        group_mul(group_mul(group_inv(f.n_part), g),
                  group_mul(group_inv(f.nminus_part), group_inv(f.a_part)));
    if (!in_M(residual_m, kGroupTol))
        throw OutsideCell("residual factor not in M");
    f.m_part = residual_m;

    f.n_params = {tau, xN};
    f.m_params = read_m_params(f.m_part);
    f.a_params = {alpha, y};
    f.nminus_params = {sigma, xNm};
    f.residual = max_abs_diff(product4(f.n_part, f.m_part, f.a_part, f.nminus_part), g);
    if (f.residual > kReconTol)
        throw NumericDrift("bruhat reconstruction residual " + std::to_string(f.residual));
    return f;
}

Eigen::MatrixXd so_from_e_to(const Eigen::VectorXd& target) {
    const int dim = int(target.size());
    if (dim < 2) throw InvalidArgument("so_from_e_to needs dimension >= 2");
    if (std::abs(target.norm() - 1.0) > 1e-9)
        throw InvalidArgument("target must be a unit vector");
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e(dim - 1) = 1.0;
    auto householder = [dim](const Eigen::VectorXd& v) {
        return (Eigen::MatrixXd::Identity(dim, dim) -
                (2.0 / v.squaredNorm()) * v * v.transpose()).eval();
    };
    // Pair of reflections keeps det = +1; pick the well-conditioned branch.
    if (target.dot(e) >= 0) {
        Eigen::MatrixXd flip = Eigen::MatrixXd::Identity(dim, dim);
        flip(dim - 1, dim - 1) = -1.0;           // e -> -e
        return householder(target + e) * flip;   // -e -> target
    }
    Eigen::MatrixXd flip = Eigen::MatrixXd::Identity(dim, dim);
    flip(0, 0) = -1.0;                           // fixes e
    return householder(target - e) * flip;       // e -> target
}

IwasawaFactors iwasawa_factor(const GroupElement& g) {
    const int n = g.n();

    // sl2: g = R(theta) diag(alpha, 1/alpha) nminus; from the second column
    const double b = g.sl2(0, 1), d = g.sl2(1, 1);
    const double alpha = 1.0 / std::hypot(b, d);
    const double ct = d * alpha, st = -b * alpha;
    Eigen::Matrix2d ks;
    ks << ct, -st, st, ct;

    // Lorentz: k a n^- applied to xi- = e_{n+1} - e_{n+2} gives
    // e^{-y} (k e_{n+1} - e_{n+2}); the last coordinate reads off e^{-y}.
    Eigen::VectorXd xi = Eigen::VectorXd::Zero(n + 2);
    xi(n) = 1.0;
    xi(n + 1) = -1.0;
    const Eigen::VectorXd w = g.lorentz * xi;
    const double eny = -w(n + 1);
    if (!(eny > 0))
        throw NumericDrift("Iwasawa boundary reading failed (e^{-y} <= 0)");
    const Eigen::VectorXd rho = w.head(n + 1) / eny;

    Eigen::MatrixXd kl = Eigen::MatrixXd::Identity(n + 2, n + 2);
    kl.topLeftCorner(n + 1, n + 1) = so_from_e_to(rho.normalized());

    GroupElement k0{ks, kl};
    const GroupElement rest = group_mul(group_inv(k0), g);   // in M A N^-
    BruhatFactors bf = bruhat_factor(rest);

    IwasawaFactors f;
    f.k_part = group_mul(k0, bf.m_part);   // absorb the M ambiguity into K
    f.a_part = bf.a_part;
    f.nminus_part = bf.nminus_part;
    f.theta = std::atan2(f.k_part.sl2(1, 0), f.k_part.sl2(0, 0));
    f.a_params = bf.a_params;
    f.nminus_params = bf.nminus_params;
    if (!in_K(f.k_part, kGroupTol))
        throw NumericDrift("Iwasawa k factor not in K");
    GroupElement recon{f.k_part.sl2 * f.a_part.sl2 * f.nminus_part.sl2,
                       f.k_part.lorentz * f.a_part.lorentz * f.nminus_part.lorentz};
    f.residual = max_abs_diff(recon, g);
    if (f.residual > kReconTol)
        throw NumericDrift("Iwasawa reconstruction residual " + std::to_string(f.residual));
    return f;
}

} // namespace pmesym
