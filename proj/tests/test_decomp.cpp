#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pmesym/decomp.hpp"
#include "pmesym/rng.hpp"

using namespace pmesym;
using testutil::ge_diff;
using testutil::mat_diff;

namespace {

Eigen::VectorXd unit_axis(int n, int i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(i - 1) = 1.0;
    return e;
}

} // namespace

TEST_CASE("delta, gamma, kappa closed forms") {
    Rng rng(2);
    for (int k = 0; k < 30; ++k) {
        const int n = 1 + int(rng.uniform_int(0, 2));
        const int i = 1 + int(rng.uniform_int(0, n - 1));
        const Eigen::VectorXd x = rng.uniform_vector(n, -2, 2);
        CHECK(delta(i, x) == doctest::Approx((x - unit_axis(n, i)).squaredNorm()).epsilon(1e-13));
    }

    CHECK(delta(1, std::vector<Rational>{Rational(1, 2), Rational(1, 3)}) == Rational(13, 36));

    // the worked n = 1 example: eps = 1/2 at x = 1/2
    Eigen::VectorXd x1(1);
    x1 << 0.5;
    CHECK(delta(1, (0.5 * x1).eval()) == doctest::Approx(0.5625).epsilon(1e-15));
    CHECK(gamma_map(1, 0.5, x1)(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(kappa_map(1, 0.5, x1)(0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));

    // eps = 0 leaves the point alone
    Eigen::VectorXd x2(3);
    x2 << 0.3, -0.7, 1.1;
    CHECK((gamma_map(2, 0.0, x2) - x2).cwiseAbs().maxCoeff() == 0.0);
    CHECK(kappa_map(2, 0.0, x2).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(gamma_map(1, 0.5, (2.0 * unit_axis(1, 1)).eval()), SingularPoint);
    CHECK_THROWS_AS(delta(4, x2), InvalidArgument);
}

TEST_CASE("sl2 factor of the big-cell factorization, worked values") {
    GroupElement g = identity_element(1);
    g.sl2 << 2, 1, 1, 1;
    const BruhatFactors f = bruhat_factor(g);
    CHECK(f.n_params.t == doctest::Approx(1.0));
    CHECK(f.a_params.a == doctest::Approx(1.0));
    CHECK(f.a_params.y == doctest::Approx(0.0));
    CHECK(f.nminus_params.t == doctest::Approx(1.0));
    CHECK(f.m_params.j == 0);
    CHECK(f.residual < 1e-12);

    // negative d flips the sign factor
    GroupElement g2 = identity_element(1);
    g2.sl2 << -1, 1, 1, -2;
    const BruhatFactors f2 = bruhat_factor(g2);
    CHECK(f2.m_params.j == 1);
    CHECK(f2.a_params.a == doctest::Approx(0.5));
    CHECK(f2.n_params.t == doctest::Approx(-0.5));
    CHECK(f2.nminus_params.t == doctest::Approx(-0.5));
}

TEST_CASE("big-cell factorization recovers constructed parameters") {
    Rng rng(13);
    for (int n : {1, 2, 3}) {
        for (int k = 0; k < 30; ++k) {
            const double t = rng.uniform(-1, 1), s = rng.uniform(-1, 1);
            const Eigen::VectorXd x = rng.uniform_vector(n, -1, 1);
            const Eigen::VectorXd z = rng.uniform_vector(n, -1, 1);
            const double a = rng.uniform(0.5, 2.0), y = rng.uniform(-1, 1);
            const int j = int(rng.uniform_int(0, 1));
            const Eigen::MatrixXd B = rng.random_so(n);

            const GroupElement g =
                group_mul(group_mul(make_n(t, x), make_m(j, B)),
                          group_mul(make_h(a, y, n), make_nminus(s, z)));
            const BruhatFactors f = bruhat_factor(g);

            CHECK(f.n_params.t == doctest::Approx(t).epsilon(1e-9));
            CHECK((f.n_params.x - x).cwiseAbs().maxCoeff() < 1e-9);
            CHECK(f.m_params.j == j);
            CHECK(mat_diff(f.m_params.B, B) < 1e-9);
            CHECK(f.a_params.a == doctest::Approx(a).epsilon(1e-9));
            CHECK(f.a_params.y == doctest::Approx(y).epsilon(1e-9));
            CHECK(f.nminus_params.t == doctest::Approx(s).epsilon(1e-9));
            CHECK((f.nminus_params.x - z).cwiseAbs().maxCoeff() < 1e-9);
            CHECK(f.residual < 1e-9);

            CHECK(in_N(f.n_part));
            CHECK(in_M(f.m_part));
            CHECK(in_A(f.a_part));
            CHECK(in_Nminus(f.nminus_part));
        }
    }
}

TEST_CASE("boundary of the big cell is detected") {
    // sl2 Weyl element has d = 0
    GroupElement g = identity_element(1);
    g.sl2 << 0, 1, -1, 0;
    CHECK_THROWS_AS(bruhat_factor(g), OutsideCell);

    // spatial half-turn of the (x, first cone axis) plane maps the reference
    // null direction out of the cell
    Eigen::MatrixXd l = Eigen::MatrixXd::Identity(3, 3);
    l(0, 0) = -1;
    l(1, 1) = -1;
    CHECK_THROWS_AS(bruhat_factor(from_parts(Eigen::Matrix2d::Identity(), l)), OutsideCell);
}

TEST_CASE("pole-to-target rotations") {
    Rng rng(19);
    for (int dim : {2, 3, 4, 5}) {
        for (int k = 0; k < 30; ++k) {
            Eigen::VectorXd target(dim);
            for (int i = 0; i < dim; ++i) target(i) = rng.normal();
            target.normalize();
            const Eigen::MatrixXd R = so_from_e_to(target);
            CHECK(mat_diff(R.transpose() * R, Eigen::MatrixXd::Identity(dim, dim)) < 1e-12);
            CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-12));
            Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
            e(dim - 1) = 1.0;
            CHECK((R * e - target).cwiseAbs().maxCoeff() < 1e-12);
        }
        // the two poles themselves
        Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
        e(dim - 1) = 1.0;
        CHECK(((so_from_e_to(e) * e) - e).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(((so_from_e_to((-e).eval()) * e) + e).cwiseAbs().maxCoeff() < 1e-12);
    }
    Eigen::VectorXd bad(3);
    bad << 1.0, 1.0, 0.0;
    CHECK_THROWS_AS(so_from_e_to(bad), InvalidArgument);
}

TEST_CASE("iwasawa factorization round trip") {
    Rng rng(29);
    for (int n : {1, 2, 3}) {
        for (int k = 0; k < 25; ++k) {
            const GroupElement g = testutil::random_word(rng, n, 6);
            const IwasawaFactors f = iwasawa_factor(g);
            CHECK(in_K(f.k_part));
            CHECK(in_A(f.a_part));
            CHECK(in_Nminus(f.nminus_part));
            const GroupElement recon = group_mul(group_mul(f.k_part, f.a_part), f.nminus_part);
            CHECK(ge_diff(recon, g) < 1e-9);
            // theta really is the sl2 angle of the K factor
            CHECK(f.k_part.sl2(0, 0) == doctest::Approx(std::cos(f.theta)).epsilon(1e-10));
            CHECK(f.k_part.sl2(1, 0) == doctest::Approx(std::sin(f.theta)).epsilon(1e-10));
        }
    }

    // constructed K A N^- products come back with their own parameters
    Rng rng2(31);
    const int n = 2;
    for (int k = 0; k < 25; ++k) {
        const double th = rng2.uniform(-3.0, 3.0);
        Eigen::Matrix2d ks;
        ks << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        Eigen::MatrixXd kl = Eigen::MatrixXd::Identity(n + 2, n + 2);
        kl.topLeftCorner(n + 1, n + 1) = rng2.random_so(n + 1);
        const GroupElement k0 = from_parts(ks, kl);

        const double a = rng2.uniform(0.5, 2.0), y = rng2.uniform(-1, 1);
        const double s = rng2.uniform(-1, 1);
        const Eigen::VectorXd z = rng2.uniform_vector(n, -1, 1);
        const GroupElement g =
            group_mul(group_mul(k0, make_h(a, y, n)), make_nminus(s, z));

        const IwasawaFactors f = iwasawa_factor(g);
        CHECK(f.a_params.a == doctest::Approx(a).epsilon(1e-9));
        CHECK(f.a_params.y == doctest::Approx(y).epsilon(1e-9));
        CHECK(f.nminus_params.t == doctest::Approx(s).epsilon(1e-9));
        CHECK((f.nminus_params.x - z).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(ge_diff(f.k_part, k0) < 1e-9);
        CHECK(std::abs(f.theta - th) < 1e-9);
    }

    const IwasawaFactors fi = iwasawa_factor(identity_element(1));
    CHECK(fi.theta == doctest::Approx(0.0));
    CHECK(fi.a_params.a == doctest::Approx(1.0));
    CHECK(ge_diff(fi.k_part, identity_element(1)) < 1e-12);
}

TEST_CASE("inversion lemma agrees with the direct factorization") {
    // worked n = 1 example: eps = 1/2, x = 1/2
    Eigen::VectorXd x1(1);
    x1 << 0.5;
    const BruhatFactors fw = lemma_factor(1, 0.5, 0.0, x1);
    CHECK(fw.a_params.y == doctest::Approx(-std::log(0.5625)).epsilon(1e-13));
    CHECK(fw.n_params.x(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(fw.nminus_params.x(0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-13));
    CHECK(fw.a_params.a == doctest::Approx(1.0));
    CHECK(fw.residual < 1e-10);

    // eps = 0 degenerates to the translation itself
    const BruhatFactors f0 = lemma_factor(1, 0.0, 0.7, x1);
    CHECK(ge_diff(f0.n_part, make_n(0.7, x1)) < 1e-12);
    CHECK(ge_diff(f0.a_part, identity_element(1)) < 1e-12);
    CHECK(ge_diff(f0.nminus_part, identity_element(1)) < 1e-12);

    Rng rng(37);
    int done = 0;
    while (done < 60) {
        const int n = 1 + int(rng.uniform_int(0, 2));
        const int i = 1 + int(rng.uniform_int(0, n - 1));
        const double eps = rng.uniform(-0.6, 0.6);
        const double t = rng.uniform(-1, 1);
        const Eigen::VectorXd x = rng.uniform_vector(n, -0.8, 0.8);
        if (delta(i, (eps * x).eval()) < 0.05) continue;
        ++done;

        const BruhatFactors fl = lemma_factor(i, eps, t, x);
        const GroupElement direct =
            group_mul(make_nminus(0.0, (-eps * unit_axis(n, i)).eval()), make_n(t, x));
        const BruhatFactors fb = bruhat_factor(direct);

        CHECK(fl.n_params.t == doctest::Approx(fb.n_params.t).epsilon(1e-9));
        CHECK((fl.n_params.x - fb.n_params.x).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(fl.m_params.j == fb.m_params.j);
        CHECK(fl.a_params.a == doctest::Approx(fb.a_params.a).epsilon(1e-9));
        CHECK(fl.a_params.y == doctest::Approx(fb.a_params.y).epsilon(1e-9));
        CHECK(fl.nminus_params.t == doctest::Approx(fb.nminus_params.t).epsilon(1e-9));
        CHECK((fl.nminus_params.x - fb.nminus_params.x).cwiseAbs().maxCoeff() < 1e-9);
    }

    CHECK_THROWS_AS(lemma_factor(1, 1.0, 0.0, unit_axis(1, 1)), SingularPoint);
}
