#pragma once

#include <string>

#include <Eigen/Dense>

#include "pmesym/errors.hpp"

namespace pmesym {

// Element of G = SL(2,R) x SO(n+1,1)_0, stored as the pair of matrices.
// The Lorentz factor is (n+2)x(n+2); the metric is J = diag(1,...,1,-1).
struct GroupElement {
    Eigen::Matrix2d sl2;
    Eigen::MatrixXd lorentz;

    int n() const { return int(lorentz.rows()) - 2; }
};

// Element of sl(2,R) (+) so(n+1,1): traceless 2x2 plus X with X^T J + J X = 0.
struct AlgebraElement {
    Eigen::Matrix2d sl2;
    Eigen::MatrixXd lorentz;

    int n() const { return int(lorentz.rows()) - 2; }
};

inline constexpr double kCtorTol = 1e-12;     // constructors, SL2 det
inline constexpr double kGroupTol = 1e-9;     // Lorentz invariants, products
inline constexpr double kOrthoTol = 1e-10;    // SO(n) inputs to make_m

Eigen::MatrixXd metric_J(int n);

// Invariant checks; throw InvalidArgument (construction) or NumericDrift
// (products) on violation.
void validate_sl2(const Eigen::Matrix2d& m, double tol = kCtorTol);
void validate_lorentz(const Eigen::MatrixXd& m, double tol = kGroupTol);
void validate_group(const GroupElement& g, double tol = kGroupTol);
void validate_algebra(const AlgebraElement& x, double tol = kCtorTol);

GroupElement identity_element(int n);
GroupElement from_parts(const Eigen::Matrix2d& sl2, const Eigen::MatrixXd& lorentz);

GroupElement make_h(double a, double y, int n);
GroupElement make_m(int j, const Eigen::MatrixXd& B);
GroupElement make_n(double t, const Eigen::VectorXd& x);
GroupElement make_nminus(double t, const Eigen::VectorXd& x);
GroupElement make_rotation(int i, int j, double theta, int n);   // 1 <= i < j <= n

GroupElement group_mul(const GroupElement& g1, const GroupElement& g2);
GroupElement group_inv(const GroupElement& g);

// Subgroup membership (block-pattern checks within tol).
bool in_N(const GroupElement& g, double tol = kGroupTol);
bool in_Nminus(const GroupElement& g, double tol = kGroupTol);
bool in_A(const GroupElement& g, double tol = kGroupTol);
bool in_M(const GroupElement& g, double tol = kGroupTol);
bool in_K(const GroupElement& g, double tol = kGroupTol);

// Parameter readers for subgroup elements (validated first).
struct NParams { double t; Eigen::VectorXd x; };
struct AParams { double a; double y; };
struct MParams { int j; Eigen::MatrixXd B; };
NParams read_n_params(const GroupElement& g, double tol = kGroupTol);
NParams read_nminus_params(const GroupElement& g, double tol = kGroupTol);
AParams read_a_params(const GroupElement& g, double tol = kGroupTol);
MParams read_m_params(const GroupElement& g, double tol = kGroupTol);

AlgebraElement zero_algebra(int n);
AlgebraElement alg_scale(const AlgebraElement& x, double c);
AlgebraElement alg_add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement alg_bracket(const AlgebraElement& x, const AlgebraElement& y);

// Catalogue keys: "sl2_e", "sl2_h", "sl2_f", "boost" (= H_{0,1}), "X2"
// (alias of "boost", the matrix image of the dilation generator),
// "nu_plus_<i>", "nu_minus_<i>", "rot_<i>_<j>" with 1-based indices.
AlgebraElement algebra_basis(const std::string& key, int n);

// General span element H_{v,y} of the abelian part a.
AlgebraElement alg_H(double v, double y, int n);

// Closed forms for the catalogued one-parameter families (nilpotent, boost,
// plane rotation, sl2 diagonal); anything else falls back to scaling and
// squaring via Eigen's matrix exponential. Result is validated in G.
GroupElement exp_algebra(const AlgebraElement& x, double eps = 1.0);

} // namespace pmesym
