#include "pmesym/matgroup.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace pmesym {

namespace {

// Lorentz blocks of n_{t,x} and n^-_{t,x}; note Lminus(x) = L(x)^T.
Eigen::MatrixXd L_plus(const Eigen::VectorXd& x) {
    const int n = int(x.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n + 2, n + 2);
    const double q = 0.5 * x.squaredNorm();
    for (int i = 0; i < n; ++i) {
        m(i, n) = -x(i);
        m(i, n + 1) = x(i);
        m(n, i) = x(i);
        m(n + 1, i) = x(i);
    }
    m(n, n) = 1 - q;
    m(n, n + 1) = q;
    m(n + 1, n) = -q;
    m(n + 1, n + 1) = 1 + q;
    return m;
}

Eigen::MatrixXd L_minus(const Eigen::VectorXd& x) {
    return L_plus(x).transpose().eval();
}

int parse_index(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to) throw InvalidArgument("missing index in algebra key");
    int v = 0;
    for (std::size_t k = from; k < to; ++k) {
        if (s[k] < '0' || s[k] > '9') throw InvalidArgument("bad index in algebra key '" + s + "'");
        v = v * 10 + (s[k] - '0');
    }
    return v;
}

bool near_zero_off_pattern(const Eigen::MatrixXd& diff, double tol) {
    return diff.cwiseAbs().maxCoeff() <= tol;
}

} // namespace

Eigen::MatrixXd metric_J(int n) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Identity(n + 2, n + 2);
    J(n + 1, n + 1) = -1;
    return J;
}

void validate_sl2(const Eigen::Matrix2d& m, double tol) {
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det - 1.0) > tol)
        throw InvalidArgument("SL2 determinant off by " + std::to_string(det - 1.0));
}

void validate_lorentz(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols() || m.rows() < 3)
        throw InvalidArgument("Lorentz factor must be (n+2)x(n+2), n >= 1");
    const int n = int(m.rows()) - 2;
    const Eigen::MatrixXd J = metric_J(n);
    const double dev = (m.transpose() * J * m - J).cwiseAbs().maxCoeff();
    if (dev > tol)
        throw InvalidArgument("g^T J g - J deviates by " + std::to_string(dev));
    const double det = m.determinant();
    if (std::abs(det - 1.0) > tol)
        throw InvalidArgument("Lorentz determinant off by " + std::to_string(det - 1.0));
    // orthochronous: last diagonal entry >= 1 on the identity component
    if (m(n + 1, n + 1) < 1.0 - tol)
        throw InvalidArgument("not orthochronous: entry (n+2,n+2) = " + std::to_string(m(n + 1, n + 1)));
}

void validate_group(const GroupElement& g, double tol) {
    validate_sl2(g.sl2, std::max(tol, kCtorTol));
    validate_lorentz(g.lorentz, tol);
}

void validate_algebra(const AlgebraElement& x, double tol) {
    if (std::abs(x.sl2(0, 0) + x.sl2(1, 1)) > tol)
        throw InvalidArgument("sl2 part not traceless");
    const int n = x.n();
    if (n < 1) throw InvalidArgument("algebra Lorentz part must be (n+2)x(n+2), n >= 1");
    const Eigen::MatrixXd J = metric_J(n);
    const double dev = (x.lorentz.transpose() * J + J * x.lorentz).cwiseAbs().maxCoeff();
    if (dev > tol)
        throw InvalidArgument("X^T J + J X deviates by " + std::to_string(dev));
}

GroupElement identity_element(int n) {
    if (n < 1) throw InvalidArgument("dimension must be >= 1");
    return {Eigen::Matrix2d::Identity(), Eigen::MatrixXd::Identity(n + 2, n + 2)};
}

GroupElement from_parts(const Eigen::Matrix2d& sl2, const Eigen::MatrixXd& lorentz) {
    GroupElement g{sl2, lorentz};
    validate_group(g);
    return g;
}

GroupElement make_h(double a, double y, int n) {
    if (!(a > 0)) throw InvalidArgument("make_h needs a > 0");
    GroupElement g = identity_element(n);
    g.sl2 << a, 0, 0, 1.0 / a;
    g.lorentz(n, n) = std::cosh(y);
    g.lorentz(n, n + 1) = std::sinh(y);
    g.lorentz(n + 1, n) = std::sinh(y);
    g.lorentz(n + 1, n + 1) = std::cosh(y);
    return g;
}

GroupElement make_m(int j, const Eigen::MatrixXd& B) {
    if (B.rows() != B.cols() || B.rows() < 1)
        throw InvalidArgument("make_m needs a square n x n block");
    const int n = int(B.rows());
    const double orth = (B.transpose() * B - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (orth > kOrthoTol)
        throw InvalidArgument("make_m: B not orthogonal (deviation " + std::to_string(orth) + ")");
    if (std::abs(B.determinant() - 1.0) > kOrthoTol)
        throw InvalidArgument("make_m: det B != 1");
    GroupElement g = identity_element(n);
    if (j % 2 != 0) g.sl2 = -Eigen::Matrix2d::Identity();
    g.lorentz.topLeftCorner(n, n) = B;
    return g;
}

GroupElement make_n(double t, const Eigen::VectorXd& x) {
    const int n = int(x.size());
    if (n < 1) throw InvalidArgument("make_n needs dim >= 1");
    GroupElement g{Eigen::Matrix2d::Identity(), L_plus(x)};
    g.sl2(0, 1) = t;
    return g;
}

GroupElement make_nminus(double t, const Eigen::VectorXd& x) {
    const int n = int(x.size());
    if (n < 1) throw InvalidArgument("make_nminus needs dim >= 1");
    GroupElement g{Eigen::Matrix2d::Identity(), L_minus(x)};
    g.sl2(1, 0) = t;
    return g;
}

GroupElement make_rotation(int i, int j, double theta, int n) {
    if (!(1 <= i && i < j && j <= n))
        throw InvalidArgument("make_rotation needs 1 <= i < j <= n");
    GroupElement g = identity_element(n);
    const double c = std::cos(theta), s = std::sin(theta);
    g.lorentz(i - 1, i - 1) = c;
    g.lorentz(j - 1, j - 1) = c;
    g.lorentz(i - 1, j - 1) = s;
    g.lorentz(j - 1, i - 1) = -s;
    return g;
}

GroupElement group_mul(const GroupElement& g1, const GroupElement& g2) {
    if (g1.n() != g2.n())
        throw InvalidArgument("product of elements over different dimensions");
    GroupElement g{g1.sl2 * g2.sl2, g1.lorentz * g2.lorentz};
    try {
        validate_group(g, kGroupTol);
    } catch (const InvalidArgument& e) {
        throw NumericDrift(e.what());
    }
    return g;
}

GroupElement group_inv(const GroupElement& g) {
    // SL2 adjugate is exact; Lorentz inverse is J g^T J.
    Eigen::Matrix2d s;
    s << g.sl2(1, 1), -g.sl2(0, 1), -g.sl2(1, 0), g.sl2(0, 0);
    const Eigen::MatrixXd J = metric_J(g.n());
    return {s, J * g.lorentz.transpose() * J};
}

bool in_N(const GroupElement& g, double tol) {
    const int n = g.n();
    Eigen::VectorXd x = g.lorentz.row(n).head(n);
    GroupElement ref = make_n(g.sl2(0, 1), x);
    return near_zero_off_pattern(g.sl2 - ref.sl2, tol) &&
           near_zero_off_pattern(g.lorentz - ref.lorentz, tol);
}

bool in_Nminus(const GroupElement& g, double tol) {
    const int n = g.n();
    Eigen::VectorXd x = g.lorentz.row(n + 1).head(n);
    GroupElement ref = make_nminus(g.sl2(1, 0), x);
    return near_zero_off_pattern(g.sl2 - ref.sl2, tol) &&
           near_zero_off_pattern(g.lorentz - ref.lorentz, tol);
}

bool in_A(const GroupElement& g, double tol) {
    const int n = g.n();
    const double a = g.sl2(0, 0);
    if (!(a > 0)) return false;
    const double sh = g.lorentz(n, n + 1);
    GroupElement ref = make_h(a, std::asinh(sh), n);
    return near_zero_off_pattern(g.sl2 - ref.sl2, tol) &&
           near_zero_off_pattern(g.lorentz - ref.lorentz, tol);
}

bool in_M(const GroupElement& g, double tol) {
    const int n = g.n();
    const double tr = g.sl2(0, 0);
    if (std::abs(std::abs(tr) - 1.0) > tol) return false;
    const int j = tr < 0 ? 1 : 0;
    Eigen::MatrixXd B = g.lorentz.topLeftCorner(n, n);
    if ((B.transpose() * B - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(B.determinant() - 1.0) > tol) return false;
    GroupElement ref = make_m(j, B);
    return near_zero_off_pattern(g.sl2 - ref.sl2, tol) &&
           near_zero_off_pattern(g.lorentz - ref.lorentz, tol);
}

bool in_K(const GroupElement& g, double tol) {
    const int n = g.n();
    if ((g.sl2.transpose() * g.sl2 - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(g.sl2.determinant() - 1.0) > tol) return false;
    // SO(n+1) sits in the upper-left block; the last row/column is e_{n+2}
    if (std::abs(g.lorentz(n + 1, n + 1) - 1.0) > tol) return false;
    for (int k = 0; k <= n; ++k)
        if (std::abs(g.lorentz(n + 1, k)) > tol || std::abs(g.lorentz(k, n + 1)) > tol) return false;
    Eigen::MatrixXd Q = g.lorentz.topLeftCorner(n + 1, n + 1);
    if ((Q.transpose() * Q - Eigen::MatrixXd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff() > tol) return false;
    return std::abs(Q.determinant() - 1.0) <= tol;
}

NParams read_n_params(const GroupElement& g, double tol) {
    if (!in_N(g, tol)) throw InvalidArgument("element not in N");
    return {g.sl2(0, 1), g.lorentz.row(g.n()).head(g.n())};
}

NParams read_nminus_params(const GroupElement& g, double tol) {
    if (!in_Nminus(g, tol)) throw InvalidArgument("element not in N^-");
    return {g.sl2(1, 0), g.lorentz.row(g.n() + 1).head(g.n())};
}

AParams read_a_params(const GroupElement& g, double tol) {
    if (!in_A(g, tol)) throw InvalidArgument("element not in A");
    return {g.sl2(0, 0), std::asinh(g.lorentz(g.n(), g.n() + 1))};
}

MParams read_m_params(const GroupElement& g, double tol) {
    if (!in_M(g, tol)) throw InvalidArgument("element not in M");
    return {g.sl2(0, 0) < 0 ? 1 : 0, g.lorentz.topLeftCorner(g.n(), g.n())};
}

AlgebraElement zero_algebra(int n) {
    if (n < 1) throw InvalidArgument("dimension must be >= 1");
    return {Eigen::Matrix2d::Zero(), Eigen::MatrixXd::Zero(n + 2, n + 2)};
}

AlgebraElement alg_scale(const AlgebraElement& x, double c) {
    return {c * x.sl2, c * x.lorentz};
}

AlgebraElement alg_add(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.n() != y.n()) throw InvalidArgument("algebra sum over different dimensions");
    return {x.sl2 + y.sl2, x.lorentz + y.lorentz};
}

AlgebraElement alg_bracket(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.n() != y.n()) throw InvalidArgument("bracket over different dimensions");
    return {x.sl2 * y.sl2 - y.sl2 * x.sl2, x.lorentz * y.lorentz - y.lorentz * x.lorentz};
}

AlgebraElement alg_H(double v, double y, int n) {
    AlgebraElement x = zero_algebra(n);
    x.sl2 << v, 0, 0, -v;
    x.lorentz(n, n + 1) = -y;
    x.lorentz(n + 1, n) = -y;
    return x;
}

AlgebraElement algebra_basis(const std::string& key, int n) {
    AlgebraElement x = zero_algebra(n);
    if (key == "sl2_e") {
        x.sl2(0, 1) = 1;
        return x;
    }
    if (key == "sl2_f") {
        x.sl2(1, 0) = 1;
        return x;
    }
    if (key == "sl2_h") {
        x.sl2(0, 0) = 1;
        x.sl2(1, 1) = -1;
        return x;
    }
    if (key == "boost" || key == "X2") return alg_H(0, 1, n);
    auto nu = [&](int i, double sign) {
        if (i < 1 || i > n) throw InvalidArgument("nu index out of range in '" + key + "'");
        AlgebraElement v = zero_algebra(n);
        v.lorentz(n, i - 1) = 1;
        v.lorentz(i - 1, n) = -1;
        v.lorentz(n + 1, i - 1) = sign;
        v.lorentz(i - 1, n + 1) = sign;
        return v;
    };
    if (key.rfind("nu_plus_", 0) == 0) return nu(parse_index(key, 8, key.size()), 1.0);
    if (key.rfind("nu_minus_", 0) == 0) return nu(parse_index(key, 9, key.size()), -1.0);
    if (key.rfind("rot_", 0) == 0) {
        auto sep = key.find('_', 4);
        if (sep == std::string::npos) throw InvalidArgument("rotation key needs two indices");
        int i = parse_index(key, 4, sep);
        int j = parse_index(key, sep + 1, key.size());
        if (!(1 <= i && i < j && j <= n)) throw InvalidArgument("rotation indices out of range");
        x.lorentz(i - 1, j - 1) = 1;
        x.lorentz(j - 1, i - 1) = -1;
        return x;
    }
    throw InvalidArgument("unknown algebra catalogue key '" + key + "'");
}

GroupElement exp_algebra(const AlgebraElement& x, double eps) {
    validate_algebra(x);
    const int n = x.n();
    const int N = n + 2;

    // sl2 factor: closed form for any traceless 2x2, exp(X) with X^2 = -det(X) I
    Eigen::Matrix2d S = eps * x.sl2;
    const double negdet = -(S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0)); // = -det
    Eigen::Matrix2d es;
    if (std::abs(negdet) < 1e-300) {
        es = Eigen::Matrix2d::Identity() + S;
    } else if (negdet > 0) {
        const double w = std::sqrt(negdet);
        es = std::cosh(w) * Eigen::Matrix2d::Identity() + (std::sinh(w) / w) * S;
    } else {
        const double w = std::sqrt(-negdet);
        es = std::cos(w) * Eigen::Matrix2d::Identity() + (std::sin(w) / w) * S;
    }

    Eigen::MatrixXd X = eps * x.lorentz;
    Eigen::MatrixXd el;
    const Eigen::MatrixXd X2 = X * X;
    const Eigen::MatrixXd X3 = X2 * X;
    const double scale = X.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
        el = Eigen::MatrixXd::Identity(N, N);
    } else if (X3.cwiseAbs().maxCoeff() <= 1e-14 * scale * scale * scale) {
        // nilpotent of order <= 3 (the n^+/n^- families): series terminates
        el = Eigen::MatrixXd::Identity(N, N) + X + 0.5 * X2;
    } else {
        // boost-only part of a?
        Eigen::MatrixXd boost_rest = X;
        const double b = X(n, n + 1);
        boost_rest(n, n + 1) = 0;
        boost_rest(n + 1, n) = 0;
        if (boost_rest.cwiseAbs().maxCoeff() == 0.0 && std::abs(X(n + 1, n) - b) <= 0) {
            el = Eigen::MatrixXd::Identity(N, N);
            el(n, n) = std::cosh(b);
            el(n, n + 1) = std::sinh(b);
            el(n + 1, n) = std::sinh(b);
            el(n + 1, n + 1) = std::cosh(b);
        } else {
            // single-plane rotation?
            int pi = -1, pj = -1;
            bool plane = true;
            for (int r = 0; r < N && plane; ++r)
                for (int c = 0; c < N && plane; ++c) {
                    if (X(r, c) == 0.0) continue;
                    if (r >= n + 1 || c >= n + 1) { plane = false; break; }
                    if (pi < 0) {
                        pi = std::min(r, c);
                        pj = std::max(r, c);
                    } else if (std::min(r, c) != pi || std::max(r, c) != pj) {
                        plane = false;
                    }
                }
            if (plane && pi >= 0 && std::abs(X(pi, pj) + X(pj, pi)) <= 1e-15 * scale) {
                const double th = X(pi, pj);
                el = Eigen::MatrixXd::Identity(N, N);
                el(pi, pi) = std::cos(th);
                el(pj, pj) = std::cos(th);
                el(pi, pj) = std::sin(th);
                el(pj, pi) = -std::sin(th);
            } else {
                el = X.exp(); // scaling-and-squaring fallback
            }
        }
    }

    GroupElement g{es, el};
    validate_group(g, kGroupTol);
    return g;
}

} // namespace pmesym
