#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcomm/bounds.hpp"
#include "qcomm/ensemble.hpp"
#include "qcomm/rng.hpp"
#include "qcomm/stacking.hpp"

using namespace qcomm;

namespace {

Matrix scalar(double v) {
    Matrix m(1, 1);
    m << Complex(v);
    return m;
}

Matrix unit_norm_hermitian(Index n, TrialRng& rng) {
    Matrix g = ginibre(n, n, rng);
    Matrix a = 0.5 * (g + g.adjoint());
    return a / spectral_norm(a);
}

} // namespace

TEST_CASE("polynomial_g1 slopes on catalog polynomials") {
    CHECK(polynomial_g1(catalog_lookup("identity"), 7.0).slope() == 1.0);
    CHECK(polynomial_g1(catalog_lookup("x^2"), 1.0).slope() == 2.0);
    CHECK(polynomial_g1(catalog_lookup("3x^2+x"), 2.0).slope() == 13.0);
    CHECK(polynomial_g1(catalog_lookup("x^2"), 1.0).valid_radius == 1.0);

    CHECK_THROWS_AS(polynomial_g1(make_builtin(Builtin::Exp), 1.0), UnsupportedFunctionError);
    CHECK_THROWS_AS(polynomial_g1(catalog_lookup("x^2"), -1.0), InputError);
}

TEST_CASE("polynomial_g1 admits no counterexample on the unit ball") {
    // Brute-force search for a violation of ||[Q, A^2]|| <= 2 ||[Q, A]||
    // over random 2x2 pairs with ||A|| <= 1.
    TrialRng rng(113);
    double slope = polynomial_g1(catalog_lookup("x^2"), 1.0).slope();
    double worst = 0.0;
    for (int trial = 0; trial < 2000; ++trial) {
        Matrix a = ginibre(2, 2, rng);
        a /= spectral_norm(a);
        Matrix q = ginibre(2, 2, rng);
        double comm = spectral_norm(q * a - a * q);
        Matrix a2 = a * a;
        double fcomm = spectral_norm(q * a2 - a2 * q);
        if (comm > 0.0)
            worst = std::max(worst, fcomm / comm);
        CHECK(fcomm <= slope * comm * (1.0 + 1e-12) + 1e-12);
    }
    CHECK(worst <= slope + 1e-12);
    CHECK(worst > 0.5 * slope); // the bound is within a factor two of tight here
}

TEST_CASE("polynomial_g1 slope is monotone in radius and coefficients") {
    auto f = catalog_lookup("3x^2+x");
    CHECK(polynomial_g1(f, 1.0).slope() <= polynomial_g1(f, 2.0).slope());
    CHECK(polynomial_g1(f, 2.0).slope() <= polynomial_g1(f, 5.0).slope());

    auto bigger = make_polynomial("p", {Complex(0.0), Complex(2.0), Complex(4.0)});
    CHECK(polynomial_g1(f, 2.0).slope() <= polynomial_g1(bigger, 2.0).slope());
}

TEST_CASE("affine commutator estimate is an equality") {
    TrialRng rng(127);
    Matrix q = ginibre(4, 4, rng);
    Matrix a = ginibre(4, 4, rng);

    auto [lhs0, rhs0] = affine_exactness(Complex(0.0), Complex(3.0, -1.0), q, a);
    CHECK(lhs0 == 0.0);
    CHECK(rhs0 == 0.0);

    auto [lhs1, rhs1] = affine_exactness(Complex(1.0), Complex(0.0), q, a);
    CHECK(lhs1 == doctest::Approx(spectral_norm(q * a - a * q)).epsilon(1e-14));

    for (int trial = 0; trial < 25; ++trial) {
        Matrix qq = ginibre(4, 4, rng);
        Matrix aa = ginibre(4, 4, rng);
        auto [lhs, rhs] = affine_exactness(Complex(2.0, 1.0), Complex(0.5, 0.25), qq, aa);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * (1.0 + rhs));
    }

    CHECK_THROWS_AS(affine_exactness(Complex(1.0), Complex(0.0), Matrix::Identity(2, 2),
                                     Matrix::Identity(3, 3)),
                    ShapeError);
}

TEST_CASE("check_hypothesis: identity with slope one sits on the boundary") {
    TrialRng rng(131);
    Matrix a = unit_norm_hermitian(4, rng);
    Matrix q = ginibre(4, 4, rng);
    auto check = check_hypothesis(linear_bound(1.0, "unit slope"), q, a,
                                  catalog_lookup("identity"));
    CHECK(check.satisfied);
    CHECK(std::abs(check.margin) <= check.slack);
}

TEST_CASE("check_hypothesis holds for the telescoped bound on random pairs") {
    TrialRng rng(137);
    auto f = catalog_lookup("x^2");
    auto g = polynomial_g1(f, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Index n = 1 + static_cast<Index>(rng.raw() % 8);
        Matrix a = unit_norm_hermitian(n, rng);
        Matrix q = ginibre(n, n, rng);
        auto check = check_hypothesis(g, q, a, f);
        CHECK(check.satisfied);
    }
}

TEST_CASE("check_hypothesis error paths") {
    auto g = polynomial_g1(catalog_lookup("x^2"), 1.0);
    Matrix a = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(check_hypothesis(g, Matrix::Zero(2, 2), a, catalog_lookup("x^2")),
                    HypothesisError);

    // radius 1 does not cover a matrix of norm 3
    CHECK_THROWS_AS(check_hypothesis(g, Matrix::Identity(2, 2), 3.0 * a, catalog_lookup("x^2")),
                    HypothesisError);
}

TEST_CASE("check_hypothesis reports genuine violations") {
    Matrix q(2, 2);
    q << Complex(0.0), Complex(1.0), Complex(1.0), Complex(0.0);
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = Complex(1.0);
    a(1, 1) = Complex(2.0);
    auto check = check_hypothesis(linear_bound(0.0, "zero bound"), q, a, catalog_lookup("x^2"));
    CHECK_FALSE(check.satisfied);
    CHECK(check.margin < 0.0);
}

TEST_CASE("check_transfer on the hand-checkable scalar instance") {
    auto f = catalog_lookup("x^2");
    auto g = polynomial_g1(f, 2.0);
    REQUIRE(g.slope() == 4.0);
    auto check = check_transfer(g, scalar(1.0), scalar(2.0), scalar(1.0), f);
    CHECK(check.satisfied);
    CHECK(check.commutator_norm == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(check.lhs_norm == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(check.margin == doctest::Approx(1.0).epsilon(1e-14));

    auto degenerate = check_transfer(g, scalar(1.0), scalar(2.0), Matrix::Zero(1, 1), f);
    CHECK(degenerate.satisfied);
    CHECK(degenerate.g_value == 0.0);
}

TEST_CASE("check_transfer sweep with the same g as the hypothesis") {
    TrialRng rng(139);
    for (const char* name : {"x^2", "3x^2+x"}) {
        auto f = catalog_lookup(name);
        auto g = polynomial_g1(f, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            Index n1 = 1 + static_cast<Index>(rng.raw() % 8);
            Index n2 = 1 + static_cast<Index>(rng.raw() % 8);
            Matrix a1 = unit_norm_hermitian(n1, rng);
            Matrix a2 = unit_norm_hermitian(n2, rng);
            Matrix s = ginibre(n1, n2, rng);
            CHECK(check_transfer(g, a1, a2, s, f).satisfied);
        }
    }
}

TEST_CASE("tabulated bounds interpolate and validate") {
    auto g = tabulated_bound({{0.0, 0.0}, {1.0, 2.0}, {2.0, 2.0}}, "table");
    CHECK(g(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g(1.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(g(10.0) == 2.0); // clamped beyond the last sample
    CHECK(g(0.0) == 0.0);
    CHECK_THROWS_AS(g(-1.0), InputError);

    CHECK_THROWS_AS(tabulated_bound({{0.0, 1.0}, {1.0, 0.5}}, "decreasing"), InputError);
    CHECK_THROWS_AS(tabulated_bound({}, "empty"), InputError);

    auto fixed = monotone_envelope({{1.0, 0.5}, {0.0, 1.0}, {1.0, 0.2}, {2.0, 0.9}});
    auto env = tabulated_bound(fixed, "envelope");
    CHECK(env(0.0) == 1.0);
    CHECK(env(2.0) == 1.0);
}

TEST_CASE("linear bound validation") {
    CHECK_THROWS_AS(linear_bound(-1.0, "negative"), InputError);
    auto g = linear_bound(2.0, "doubling");
    CHECK(g(3.0) == 6.0);
    CHECK_THROWS_AS(g(std::nan("")), InputError);
}
