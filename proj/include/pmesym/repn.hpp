#pragma once

// The non-compact picture I'(p,r,s): character evaluation, closed-form
// actions of the catalogued one-parameter subgroups, the generic
// factorization-driven action, closed-form stationary sections in dimensions
// one and two, and restriction to the compact picture.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pmesym/decomp.hpp"
#include "pmesym/field.hpp"
#include "pmesym/matgroup.hpp"
#include "pmesym/multipoly.hpp"
#include "pmesym/rational.hpp"

namespace pmesym {

// relative tolerance for equivariance / action-law comparisons
constexpr double kEquivTol = 1e-8;

// Power restricted to the smooth class: negative base refuses, 0^e is 0 for
// e > 0 and refuses otherwise.
double pow_checked(double base, double expo);

// chi_{p,r,s}(m a n^-) = (-1)^{j p} a^r e^{s y}; factors are validated to lie
// in their subgroups.
double char_eval(const CharacterParams& params, const GroupElement& m_part,
                 const GroupElement& a_part, const GroupElement& nminus_part);

// Same character read off an existing factorization (no re-validation).
double char_of(const CharacterParams& params, int j, double a, double y);

// Closed-form actions. Each returns a lazy composition; params carry over.
Field act_sl2_upper(double a, double b, const Field& f);
Field act_rotation(int i, int j, double theta, const Field& f);
Field act_translation(double tprime, const Eigen::VectorXd& xprime, const Field& f);
Field act_dilation(double eps, const Field& f);
Field act_conformal(int i, double eps, const Field& f);
Field act_sl2_lower(double eps, const Field& f);

// (g.f)(t,x) = chi(q^-)^{-1} f(t',x') where g^{-1} n_{t,x} = n_{t',x'} q^-.
// Points where g^{-1} n_{t,x} leaves the big cell are outside the domain;
// eval there raises OutsideCell.
Field act_generic(const GroupElement& g, const Field& f);

// One step of a group word, as parsed from job input.
enum class StepType { Translation, Rotation, Dilation, Sl2Upper, Conformal, Sl2Lower, Generic };

struct ActionStep {
    StepType type = StepType::Translation;
    double t = 0;            // translation
    Eigen::VectorXd x;       // translation
    int i = 1, j = 2;        // rotation plane / conformal axis
    double theta = 0;        // rotation
    double eps = 0;          // dilation / conformal / sl2_lower
    double a = 1, b = 0;     // sl2_upper
    std::shared_ptr<GroupElement> g;  // generic
};

Field apply_step(const ActionStep& s, const Field& f);
// word.f = s_1.(s_2.( ... s_k.f)); equals the action of the product matrix.
Field apply_word(const std::vector<ActionStep>& word, const Field& f);
GroupElement step_group(const ActionStep& s, int n);
// Inverse base-space map of the step: finds (t,x) with the property that the
// acted field evaluated there reads the original field at the input point.
void step_pull_center(const ActionStep& s, double& t, Eigen::VectorXd& x);

// Section on the group: phi(g q^-) = chi(q^-)^{-1} phi(g).
struct InducedSection {
    int n = 0;
    CharacterParams params;
    std::function<double(const GroupElement&)> eval_g;
    std::function<bool(const GroupElement&)> domain;

    double operator()(const GroupElement& g) const { return eval_g(g); }
};

// Extends a Field to the big cell via phi(n q^-) = chi(q^-)^{-1} f(t,x).
InducedSection section_from_field(const Field& f);

// Closed-form section over the stationary solution x^{1/m} (n = 1). Entries
// a_{kl} refer to the Lorentz factor, 1-based. Generic branch requires
// a_11 != -1 and a_12 != a_13; the a_11 = -1 limit configuration uses the
// boundary formula; remaining in-cell points fall back to the
// factorization route, which agrees with the display on its domain.
double stationary_phi_1d(const GroupElement& g, int p, const Rational& m);

// Closed-form section over k(x)^{1/m} for a 2-variable harmonic k (n = 2);
// defined whenever (a_12 - a_21)^2 + (a_11 + a_22)^2 > 0.
double stationary_phi_2d(const MultiPoly& k, const GroupElement& g, int p, const Rational& m);

InducedSection stationary_section_1d(int p, const Rational& m);
InducedSection stationary_section_2d(const MultiPoly& k, int p, const Rational& m);

// Point of S^1 x S^n; z is a unit vector in R^{n+1} (within 1e-12).
struct CompactPoint {
    double theta = 0;
    Eigen::VectorXd z;
};

// k(theta, z) = [rotation(theta), diag(R_z, 1)] with R_z e_{n+1} = z.
GroupElement compact_element(const CompactPoint& pt);
double compact_restrict(const InducedSection& phi, const CompactPoint& pt);

} // namespace pmesym
