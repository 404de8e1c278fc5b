#include <doctest.h>

#include <cstdint>

#include "pmesym/multipoly.hpp"
#include "pmesym/rational.hpp"
#include "pmesym/rng.hpp"

using namespace pmesym;

TEST_CASE("rational normalization and parsing") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(-2, -8) == Rational(1, 4));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, 7).den() == 1);

    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("-3/2") == Rational(-3, 2));
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational::parse("7").str() == "7");
    CHECK(Rational::parse("-3/2").str() == "-3/2");

    CHECK_THROWS_AS(Rational(1, 0), InvalidArgument);
    CHECK_THROWS_AS(Rational::parse(""), InvalidArgument);
    CHECK_THROWS_AS(Rational::parse("x"), InvalidArgument);
    CHECK_THROWS_AS(Rational::parse("3/"), InvalidArgument);
    CHECK_THROWS_AS(Rational::parse("1/0"), InvalidArgument);
    CHECK_THROWS_AS(Rational::parse("2/3 "), InvalidArgument);
}

TEST_CASE("rational field axioms on random values") {
    Rng rng(42);
    auto rnd = [&] {
        return Rational(rng.uniform_int(-20, 20), rng.uniform_int(1, 12));
    };
    for (int k = 0; k < 200; ++k) {
        const Rational a = rnd(), b = rnd(), c = rnd();
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - b) + b == a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + (-a) == Rational(0));
        if (!b.is_zero()) CHECK((a / b) * b == a);
        // trichotomy of the order
        CHECK((int(a < b) + int(a == b) + int(b < a)) == 1);
    }
    CHECK(Rational(1, 3) < Rational(2, 5));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
}

TEST_CASE("rational powers") {
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
    CHECK(Rational(5).pow(0) == Rational(1));
    CHECK(Rational(-1, 2).pow(3) == Rational(-1, 8));
    CHECK(Rational(-2, 3).pow(-3) == Rational(-27, 8));
    CHECK_THROWS_AS(Rational(0).pow(-1), InvalidArgument);
}

TEST_CASE("rational overflow is an error, not a wrap") {
    const Rational big(INT64_MAX / 2 + 1);
    CHECK_THROWS_AS(big * Rational(4), OverflowError);
    auto blow_up = [] {
        Rational r(10);
        for (int i = 0; i < 30; ++i) r *= r;
        return r;
    };
    CHECK_THROWS_AS(blow_up(), OverflowError);
}

TEST_CASE("polynomial ring basics over (t, x, u)") {
    const int n = 1;
    const MultiPoly t = MultiPoly::var_t(n);
    const MultiPoly x = MultiPoly::var_x(n, 1);
    const MultiPoly u = MultiPoly::var_u(n);

    // (1 - x)^2 = 1 - 2x + x^2, evaluated exactly at x = 1/4
    const MultiPoly p = poly_add(poly_sub(MultiPoly::constant(n, Rational(1)),
                                          poly_scale(x, Rational(2))),
                                 poly_mul(x, x));
    CHECK(poly_eval(p, {Rational(0), Rational(1, 4), Rational(0)}) == Rational(9, 16));
    CHECK(p.degree() == 2);
    CHECK(poly_sub(p, p).is_zero());
    CHECK(poly_sub(p, p).degree() == -1);

    // d/dx (1 - x)^2 = 2x - 2
    const MultiPoly dp = poly_diff(p, 1);
    CHECK(poly_eval(dp, {Rational(0), Rational(5), Rational(0)}) == Rational(8));

    // t and u occupy distinct slots
    const MultiPoly q = poly_mul(t, poly_mul(u, u));
    CHECK(poly_eval(q, {Rational(3), Rational(7), Rational(2)}) == Rational(12));
    CHECK(poly_diff(q, 0) == poly_mul(u, u));
    CHECK(poly_diff(q, 1).is_zero());

    // double evaluation matches the rational value
    CHECK(poly_eval(p, std::vector<double>{0.0, 0.25, 0.0}) == doctest::Approx(0.5625));

    CHECK_THROWS_AS(MultiPoly::var_x(1, 2), InvalidArgument);
    CHECK_THROWS_AS(MultiPoly(0), InvalidArgument);
}

TEST_CASE("product rule holds exactly on random polynomials") {
    const int n = 2;
    Rng rng(7);
    auto rand_poly = [&] {
        MultiPoly p(n);
        const int terms = int(rng.uniform_int(1, 4));
        for (int k = 0; k < terms; ++k) {
            MultiPoly::Monomial mono(std::size_t(n + 2), 0);
            for (auto& e : mono) e = std::uint32_t(rng.uniform_int(0, 2));
            p.add_term(mono, Rational(rng.uniform_int(-5, 5), rng.uniform_int(1, 4)));
        }
        return p;
    };
    for (int k = 0; k < 100; ++k) {
        const MultiPoly a = rand_poly(), b = rand_poly();
        for (int var = 0; var < n + 2; ++var) {
            const MultiPoly lhs = poly_diff(poly_mul(a, b), var);
            const MultiPoly rhs = poly_add(poly_mul(poly_diff(a, var), b),
                                           poly_mul(a, poly_diff(b, var)));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("mixing arities is refused") {
    CHECK_THROWS_AS(poly_add(MultiPoly::var_t(1), MultiPoly::var_t(2)), ArityMismatch);
    CHECK_THROWS_AS(poly_eval(MultiPoly::var_t(1), {Rational(0)}), ArityMismatch);
    MultiPoly p(1);
    CHECK_THROWS_AS(p.add_term({0, 0}, Rational(1)), ArityMismatch);
}
