#pragma once

#include <string>
#include <vector>

#include "pmesym/field.hpp"
#include "pmesym/matgroup.hpp"
#include "pmesym/multipoly.hpp"

namespace pmesym {

// First-order operator xi_t d/dt + sum_i xi_i d/dx_i + eta d/du with exact
// rational polynomial coefficients over (t, x_1..x_n, u).
struct VectorField {
    int n;
    MultiPoly xi_t;
    std::vector<MultiPoly> xi;
    MultiPoly eta;

    explicit VectorField(int n_spatial);
};

VectorField vf_add(const VectorField& a, const VectorField& b);
VectorField vf_scale(const VectorField& a, const Rational& c);
bool vf_equal(const VectorField& a, const VectorField& b);
std::string vf_str(const VectorField& a);

// Symmetry generators of u_t = Laplacian(u^m). Keys: "X1", "X2", "X3",
// "Y<i>", "Z<i>_<j>" (or "Z<i><j>" for single digits), "W<i>"; the W family
// exists only at m = (n-2)/(n+2) and n != 2.
VectorField generator(const std::string& name, int n, const Rational& m);

// Commutator [V,W] of first-order fields over (t,x,u), exact.
VectorField bracket(const VectorField& v, const VectorField& w);

// Linear map Psi from the matrix algebra to vector fields, with
// r = s = 2/(m-1). Basis images (sign conventions fixed by the flows,
// see sign_conventions() in report.hpp):
//   E -> -d/dt                 H -> -2t d/dt + r u d/du
//   F -> t^2 d/dt - r t u d/du (flow machinery only)
//   boost -> sum x_i d/dx_i - s u d/du
//   nu_i^+ -> -d/dx_i
//   nu_i^- -> -(x_i^2 - sum_{j!=i} x_j^2) d/dx_i - sum_{j!=i} 2 x_i x_j d/dx_j
//             + 2 s x_i u d/du
//   E_{i,j} - E_{j,i} -> x_i d/dx_j - x_j d/dx_i
// The element must lie in the rational span of the catalogued basis.
VectorField iso_map(const AlgebraElement& x, int n, const Rational& m);

struct BracketPairResult {
    std::string key_x, key_y;
    bool ok;
};

struct ConformanceReport {
    int n;
    Rational m;
    bool full_mode;
    std::vector<BracketPairResult> pairs;
    std::vector<std::string> failures;          // human-readable mismatches
    std::vector<std::string> sign_adjustments;  // documented resolutions
    bool passed;
};

// Exact (rational, zero-tolerance) verification that Psi is a Lie algebra
// homomorphism on every basis pair. full mode covers all of
// s (+) so(n+1,1) and requires m = (n-2)/(n+2) with n != 2; parabolic mode
// covers {E, H, boost, nu_i^+, rotations} at any m not in {0,1}.
ConformanceReport check_homomorphism(int n, const Rational& m, bool full_mode);

// xi . grad f (central differences, h = 1e-5, one Richardson step) plus
// eta evaluated at u := f(t,x).
double apply(const VectorField& v, const Field& f, double t, const Eigen::VectorXd& x);

} // namespace pmesym
