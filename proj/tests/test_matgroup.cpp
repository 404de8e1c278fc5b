#include <doctest.h>

#include <cmath>
#include <string>

#include "oracles.hpp"
#include "pmesym/matgroup.hpp"
#include "pmesym/rng.hpp"

using namespace pmesym;
using testutil::ge_diff;
using testutil::mat_diff;

TEST_CASE("translation generator has the documented matrix") {
    Eigen::VectorXd x(1);
    x << 1.0;
    const GroupElement g = make_n(1.0, x);

    Eigen::Matrix2d sl2;
    sl2 << 1, 1, 0, 1;
    CHECK(mat_diff(g.sl2, sl2) == 0.0);

    Eigen::Matrix3d l;
    l << 1.0, -1.0, 1.0,
         1.0,  0.5, 0.5,
         1.0, -0.5, 1.5;
    CHECK(mat_diff(g.lorentz, l) == 0.0);

    // lower variant carries the transposed Lorentz block and lower sl2
    const GroupElement gm = make_nminus(1.0, x);
    CHECK(mat_diff(gm.lorentz, l.transpose()) == 0.0);
    CHECK(gm.sl2(1, 0) == 1.0);
    CHECK(gm.sl2(0, 1) == 0.0);
}

TEST_CASE("h and rotation generators have the documented matrices") {
    const GroupElement h = make_h(2.0, 0.3, 2);
    CHECK(h.sl2(0, 0) == 2.0);
    CHECK(h.sl2(1, 1) == 0.5);
    CHECK(h.lorentz(2, 2) == doctest::Approx(std::cosh(0.3)));
    CHECK(h.lorentz(2, 3) == doctest::Approx(std::sinh(0.3)));
    CHECK(h.lorentz(0, 0) == 1.0);

    const GroupElement r = make_rotation(1, 2, 0.7, 3);
    CHECK(r.lorentz(0, 1) == doctest::Approx(std::sin(0.7)));
    CHECK(r.lorentz(1, 0) == doctest::Approx(-std::sin(0.7)));
    CHECK(r.lorentz(2, 2) == 1.0);
    CHECK_THROWS_AS(make_rotation(2, 1, 0.1, 3), InvalidArgument);
    CHECK_THROWS_AS(make_h(-1.0, 0.0, 1), InvalidArgument);
}

TEST_CASE("constructors reject invalid matrices") {
    GroupElement g = identity_element(2);

    Eigen::MatrixXd bad = g.lorentz;
    bad(0, 1) = 1e-6;
    CHECK_THROWS_AS(from_parts(g.sl2, bad), InvalidArgument);

    // time reversal preserves the metric and determinant but not the
    // identity component
    Eigen::MatrixXd tr = Eigen::MatrixXd::Identity(4, 4);
    tr(2, 2) = -1.0;
    tr(3, 3) = -1.0;
    CHECK_THROWS_AS(from_parts(g.sl2, tr), InvalidArgument);

    Eigen::Matrix2d scaled;
    scaled << 2, 0, 0, 2;
    CHECK_THROWS_AS(from_parts(scaled, g.lorentz), InvalidArgument);

    Eigen::MatrixXd notso = Eigen::MatrixXd::Identity(2, 2);
    notso(1, 1) = -1.0;
    CHECK_THROWS_AS(make_m(0, notso), InvalidArgument);
}

TEST_CASE("one-parameter families compose additively") {
    Rng rng(11);
    for (int n : {1, 2, 3}) {
        for (int k = 0; k < 25; ++k) {
            const double t1 = rng.uniform(-1, 1), t2 = rng.uniform(-1, 1);
            const Eigen::VectorXd x1 = rng.uniform_vector(n, -1, 1);
            const Eigen::VectorXd x2 = rng.uniform_vector(n, -1, 1);

            const NParams pn = read_n_params(group_mul(make_n(t1, x1), make_n(t2, x2)));
            CHECK(pn.t == doctest::Approx(t1 + t2).epsilon(1e-12));
            CHECK((pn.x - (x1 + x2)).cwiseAbs().maxCoeff() < 1e-12);

            const NParams pm =
                read_nminus_params(group_mul(make_nminus(t1, x1), make_nminus(t2, x2)));
            CHECK(pm.t == doctest::Approx(t1 + t2).epsilon(1e-12));
            CHECK((pm.x - (x1 + x2)).cwiseAbs().maxCoeff() < 1e-12);

            const double a1 = rng.uniform(0.5, 2.0), a2 = rng.uniform(0.5, 2.0);
            const double y1 = rng.uniform(-1, 1), y2 = rng.uniform(-1, 1);
            const AParams pa =
                read_a_params(group_mul(make_h(a1, y1, n), make_h(a2, y2, n)));
            CHECK(pa.a == doctest::Approx(a1 * a2).epsilon(1e-12));
            CHECK(pa.y == doctest::Approx(y1 + y2).epsilon(1e-12));
        }
        // M is a direct product of the sign and the SO(n) block
        const Eigen::MatrixXd b1 = rng.random_so(n), b2 = rng.random_so(n);
        const MParams pm = read_m_params(group_mul(make_m(1, b1), make_m(1, b2)));
        CHECK(pm.j == 0);
        CHECK(mat_diff(pm.B, b1 * b2) < 1e-12);
    }
}

TEST_CASE("subgroup membership is sharp") {
    const int n = 2;
    Eigen::VectorXd x(n);
    x << 0.4, -0.2;
    const GroupElement gn = make_n(0.3, x);
    const GroupElement gm = make_nminus(0.3, x);
    const GroupElement ga = make_h(1.7, 0.4, n);
    const GroupElement gb = make_m(1, Rng(3).random_so(n));

    CHECK(in_N(gn));
    CHECK_FALSE(in_Nminus(gn));
    CHECK_FALSE(in_A(gn));
    CHECK_FALSE(in_M(gn));

    CHECK(in_Nminus(gm));
    CHECK_FALSE(in_N(gm));

    CHECK(in_A(ga));
    CHECK_FALSE(in_M(ga));
    CHECK_FALSE(in_K(ga));

    CHECK(in_M(gb));
    CHECK(in_K(gb));

    // plane rotations sit inside M, hence inside K
    const GroupElement rot = make_rotation(1, 2, 1.1, n);
    CHECK(in_M(rot));
    CHECK(in_K(rot));

    CHECK_THROWS_AS(read_n_params(ga), InvalidArgument);
    CHECK_THROWS_AS(read_a_params(gn), InvalidArgument);
}

TEST_CASE("inverses and associativity on random words") {
    Rng rng(23);
    for (int n : {1, 3}) {
        for (int k = 0; k < 20; ++k) {
            const GroupElement g = testutil::random_word(rng, n, 8);
            CHECK(ge_diff(group_mul(g, group_inv(g)), identity_element(n)) < 1e-10);
            const GroupElement h1 = testutil::random_word(rng, n, 4);
            const GroupElement h2 = testutil::random_word(rng, n, 4);
            CHECK(ge_diff(group_mul(group_mul(g, h1), h2),
                          group_mul(g, group_mul(h1, h2))) < 1e-10);
        }
    }
}

TEST_CASE("conjugation moves translation parameters the expected way") {
    Rng rng(31);
    const int n = 3;
    for (int k = 0; k < 20; ++k) {
        const double y = rng.uniform(-1.0, 1.0);
        const Eigen::VectorXd x = rng.uniform_vector(n, -1, 1);

        // h_{1,y} n_{0,x} h_{1,y}^{-1} = n_{0, e^y x}
        const GroupElement h = make_h(1.0, y, n);
        const GroupElement conj = group_mul(group_mul(h, make_n(0.0, x)), group_inv(h));
        const NParams p = read_n_params(conj);
        CHECK(p.t == doctest::Approx(0.0).epsilon(1e-12));
        CHECK((p.x - std::exp(y) * x).cwiseAbs().maxCoeff() < 1e-10);

        // m_{j,B} n_{t,x} m_{j,B}^{-1} = n_{t, B x}
        const GroupElement mel = make_m(1, rng.random_so(n));
        const MParams mp = read_m_params(mel);
        const GroupElement conj2 = group_mul(group_mul(mel, make_n(0.5, x)), group_inv(mel));
        const NParams p2 = read_n_params(conj2);
        CHECK(p2.t == doctest::Approx(0.5).epsilon(1e-12));
        CHECK((p2.x - mp.B * x).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("exponentials agree with the series oracle") {
    Rng rng(5);
    for (int n : {1, 2, 3}) {
        std::vector<std::string> keys = {"sl2_e", "sl2_h", "sl2_f", "boost"};
        for (int i = 1; i <= n; ++i) {
            keys.push_back("nu_plus_" + std::to_string(i));
            keys.push_back("nu_minus_" + std::to_string(i));
        }
        for (int i = 1; i < n; ++i)
            for (int j = i + 1; j <= n; ++j)
                keys.push_back("rot_" + std::to_string(i) + "_" + std::to_string(j));

        for (const auto& key : keys) {
            const AlgebraElement v = algebra_basis(key, n);
            for (int k = 0; k < 5; ++k) {
                const double eps = rng.uniform(-0.8, 0.8);
                CHECK(ge_diff(exp_algebra(v, eps), testutil::exp_pair_series(v, eps)) < 1e-12);
            }
        }
        // generic span elements exercise the fallback path
        for (int k = 0; k < 10; ++k) {
            const AlgebraElement v = testutil::random_algebra(rng, n, 0.4);
            CHECK(ge_diff(exp_algebra(v, 1.0), testutil::exp_pair_series(v, 1.0)) < 1e-11);
        }
    }
}

TEST_CASE("exponentials land on the documented subgroup elements") {
    const int n = 2;
    Rng rng(9);
    for (int k = 0; k < 10; ++k) {
        const double c = rng.uniform(-1.0, 1.0);

        // boost parameter: exp(y boost) = h_{1,-y}
        CHECK(ge_diff(exp_algebra(algebra_basis("boost", n), c), make_h(1.0, -c, n)) < 1e-12);

        Eigen::VectorXd e1 = Eigen::VectorXd::Zero(n);
        e1(0) = c;
        CHECK(ge_diff(exp_algebra(algebra_basis("nu_plus_1", n), c), make_n(0.0, e1)) < 1e-12);
        CHECK(ge_diff(exp_algebra(algebra_basis("nu_minus_1", n), -c), make_nminus(0.0, e1)) < 1e-12);

        CHECK(ge_diff(exp_algebra(algebra_basis("sl2_e", n), c),
                      make_n(c, Eigen::VectorXd::Zero(n))) < 1e-12);
        CHECK(ge_diff(exp_algebra(algebra_basis("sl2_h", n), c), make_h(std::exp(c), 0.0, n)) < 1e-12);
        CHECK(ge_diff(exp_algebra(algebra_basis("rot_1_2", n), c), make_rotation(1, 2, c, n)) < 1e-12);
    }
}

TEST_CASE("bracket relations of the catalogued basis") {
    const int n = 2;
    const AlgebraElement e = algebra_basis("sl2_e", n);
    const AlgebraElement f = algebra_basis("sl2_f", n);
    const AlgebraElement h = algebra_basis("sl2_h", n);
    const AlgebraElement boost = algebra_basis("boost", n);
    const AlgebraElement np = algebra_basis("nu_plus_1", n);
    const AlgebraElement nm = algebra_basis("nu_minus_1", n);

    auto same = [](const AlgebraElement& a, const AlgebraElement& b) {
        return std::max(mat_diff(a.sl2, b.sl2), mat_diff(a.lorentz, b.lorentz)) == 0.0;
    };

    CHECK(same(alg_bracket(e, f), h));
    CHECK(same(alg_bracket(h, e), alg_scale(e, 2)));
    CHECK(same(alg_bracket(h, f), alg_scale(f, -2)));

    // the boost basis matrix is normalized so that exp(y boost) = h_{1,-y};
    // with that sign, nu+ has weight -1 and nu- has weight +1
    CHECK(same(alg_bracket(boost, np), alg_scale(np, -1)));
    CHECK(same(alg_bracket(boost, nm), nm));
    CHECK(same(alg_bracket(np, nm), alg_scale(boost, 2)));

    // X2 is a catalogue alias for the boost
    CHECK(same(algebra_basis("X2", n), boost));
    CHECK(same(alg_H(2, 3, n), alg_add(alg_scale(h, 2), alg_scale(boost, 3))));

    // antisymmetry and Jacobi on random span elements
    Rng rng(17);
    for (int k = 0; k < 15; ++k) {
        const AlgebraElement a = testutil::random_algebra(rng, n, 1.0);
        const AlgebraElement b = testutil::random_algebra(rng, n, 1.0);
        const AlgebraElement c = testutil::random_algebra(rng, n, 1.0);
        const AlgebraElement anti = alg_add(alg_bracket(a, b), alg_bracket(b, a));
        CHECK(std::max(anti.sl2.cwiseAbs().maxCoeff(), anti.lorentz.cwiseAbs().maxCoeff()) < 1e-12);
        const AlgebraElement jac =
            alg_add(alg_bracket(a, alg_bracket(b, c)),
                    alg_add(alg_bracket(b, alg_bracket(c, a)),
                            alg_bracket(c, alg_bracket(a, b))));
        CHECK(std::max(jac.sl2.cwiseAbs().maxCoeff(), jac.lorentz.cwiseAbs().maxCoeff()) < 1e-12);
    }

    CHECK_THROWS_AS(algebra_basis("nu_plus_3", n), InvalidArgument);
    CHECK_THROWS_AS(algebra_basis("rot_1_2", 1), InvalidArgument);
    CHECK_THROWS_AS(algebra_basis("qqq", n), InvalidArgument);
}
