#pragma once

#include <functional>

#include <Eigen/Dense>

namespace pmesym {

// chi_{p,r,s} parameters; the porous-medium instance pins r = s = 2/(m-1).
struct CharacterParams {
    int p = 0;
    double r = 0;
    double s = 0;
};

// Element of I'(p,r,s) in the non-compact picture: an evaluator on (t,x)
// with a domain predicate. Actions build lazy compositions of these.
struct Field {
    int n = 0;
    CharacterParams params;
    std::function<double(double, const Eigen::VectorXd&)> eval;
    std::function<bool(double, const Eigen::VectorXd&)> domain;

    double operator()(double t, const Eigen::VectorXd& x) const { return eval(t, x); }
};

// Spatial profile F : R^n -> R (used by the separable solutions).
struct Profile {
    int n = 0;
    std::function<double(const Eigen::VectorXd&)> eval;
    std::function<bool(const Eigen::VectorXd&)> domain;
};

inline Field make_field(int n, CharacterParams params,
                        std::function<double(double, const Eigen::VectorXd&)> eval,
                        std::function<bool(double, const Eigen::VectorXd&)> domain = nullptr) {
    Field f;
    f.n = n;
    f.params = params;
    f.eval = std::move(eval);
    f.domain = domain ? std::move(domain)
                      : [](double, const Eigen::VectorXd&) { return true; };
    return f;
}

} // namespace pmesym
