#pragma once

#include <Eigen/Dense>

#include "pmesym/matgroup.hpp"
#include "pmesym/rational.hpp"

namespace pmesym {

inline constexpr double kSingularTol = 1e-12;   // |delta| guard
inline constexpr double kReconTol = 1e-9;       // factor reconstruction
inline constexpr double kLemmaTol = 1e-10;      // closed-form lemma reconstruction

// delta_i(x) = 1 - 2 x_i + |x|^2 = |x - e_i|^2
double delta(int i, const Eigen::VectorXd& x);
Rational delta(int i, const std::vector<Rational>& x);

// gamma_i(eps,x) = delta_i(eps x)^{-1} (x - eps |x|^2 e_i)
// kappa_i(eps,x) = delta_i(eps x)^{-1} eps (eps x - e_i)
Eigen::VectorXd gamma_map(int i, double eps, const Eigen::VectorXd& x);
Eigen::VectorXd kappa_map(int i, double eps, const Eigen::VectorXd& x);

struct BruhatFactors {
    GroupElement n_part, m_part, a_part, nminus_part;
    NParams n_params;        // (t, x) of the N factor
    MParams m_params;        // (j, B)
    AParams a_params;        // (a, y)
    NParams nminus_params;   // (t, x) of the N^- factor
    double residual;         // max-abs of product(factors) - input
};

struct IwasawaFactors {
    GroupElement k_part, a_part, nminus_part;
    double theta;            // SO(2) angle of the sl2 part of k
    AParams a_params;
    NParams nminus_params;
    double residual;
};

// Closed-form factorization of n^-_{0,-eps e_i} n_{t,x} into N M A N^-;
// requires delta_i(eps x) > 0.
BruhatFactors lemma_factor(int i, double eps, double t, const Eigen::VectorXd& x);

// Big-cell factorization g = n m a n^-. Preconditions: sl2 entry d != 0 and,
// with w = g_lorentz (e_{n+1} - e_{n+2}), w_{n+1} - w_{n+2} > 0.
BruhatFactors bruhat_factor(const GroupElement& g);

// Global factorization g = k a n^- with K = SO(2) x SO(n+1).
IwasawaFactors iwasawa_factor(const GroupElement& g);

// R in SO(d) with R e_d = target (unit vector), via a Householder pair.
Eigen::MatrixXd so_from_e_to(const Eigen::VectorXd& target);

} // namespace pmesym
