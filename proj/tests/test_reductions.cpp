#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "qcomm/ensemble.hpp"
#include "qcomm/reductions.hpp"
#include "qcomm/rng.hpp"

using namespace qcomm;

namespace {

Matrix scalar(double v) {
    Matrix m(1, 1);
    m << Complex(v);
    return m;
}

Matrix hermitian_draw(Index n, TrialRng& rng) {
    Matrix g = ginibre(n, n, rng);
    Matrix a = 0.5 * (g + g.adjoint());
    return a / spectral_norm(a);
}

} // namespace

TEST_CASE("thm1_reduce with S = 0 is fully degenerate") {
    TrialRng rng(71);
    Matrix a1 = hermitian_draw(3, rng);
    Matrix a2 = hermitian_draw(2, rng);
    auto w = thm1_reduce(a1, a2, Matrix::Zero(3, 2), catalog_lookup("exp"));
    CHECK(w.quasi_norm == 0.0);
    CHECK(w.commutator_norm == 0.0);
    CHECK(w.structural_residual <= 1e-15);
    CHECK(w.identity_verified);
}

TEST_CASE("thm1_reduce scalar instance") {
    auto w = thm1_reduce(scalar(1.0), scalar(2.0), scalar(1.0), catalog_lookup("x^2"));
    CHECK(w.commutator_norm == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w.quasi_norm == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(w.structural_residual <= 1e-14);
    CHECK(w.residuals.at("f_norm_bridge") <= 1e-14);
    CHECK(w.identity_verified);
    // Q and A are materialized as the witness contract promises
    CHECK(w.q(0, 1) == Complex(-1.0));
    CHECK(w.a_stacked(0, 0) == Complex(1.0));
    CHECK(w.a_stacked(1, 1) == Complex(2.0));
}

TEST_CASE("thm1_reduce with the identity function collapses to the commutator") {
    TrialRng rng(73);
    for (int trial = 0; trial < 20; ++trial) {
        Index n1 = 1 + static_cast<Index>(rng.raw() % 8);
        Index n2 = 1 + static_cast<Index>(rng.raw() % 8);
        Matrix a1 = hermitian_draw(n1, rng);
        Matrix a2 = hermitian_draw(n2, rng);
        Matrix s = ginibre(n1, n2, rng);
        auto w = thm1_reduce(a1, a2, s, catalog_lookup("identity"));
        CHECK(std::abs(w.quasi_norm - w.commutator_norm) <= 1e-13 * (1.0 + w.commutator_norm));
        CHECK(w.identity_verified);
    }
}

TEST_CASE("thm1_reduce identities hold for transcendental functions") {
    TrialRng rng(79);
    for (const char* name : {"exp", "sin"}) {
        for (int trial = 0; trial < 10; ++trial) {
            Matrix a1 = hermitian_draw(4, rng);
            Matrix a2 = hermitian_draw(3, rng);
            Matrix s = random_contraction(4, 3, rng);
            auto w = thm1_reduce(a1, a2, s, catalog_lookup(name));
            CHECK(w.structural_residual <= 1e-9 * (1.0 + w.quasi_norm));
            CHECK(w.residuals.at("f_norm_bridge") <= 1e-12);
            CHECK(w.residuals.at("a_norm_bridge") <= 1e-12);
        }
    }
}

TEST_CASE("thm1_reduce rejects mismatched shapes") {
    CHECK_THROWS_AS(
        thm1_reduce(scalar(1.0), scalar(2.0), Matrix::Zero(2, 2), catalog_lookup("x^2")),
        ShapeError);
}

TEST_CASE("thm1_reduce propagates domain violations") {
    // sqrt is undefined on the negative eigenvalue of A1
    Matrix indefinite = Matrix::Zero(2, 2);
    indefinite(0, 0) = Complex(-1.0);
    indefinite(1, 1) = Complex(1.0);
    CHECK_THROWS_AS(thm1_reduce(indefinite, Matrix::Identity(2, 2), Matrix::Zero(2, 2),
                                catalog_lookup("sqrt")),
                    DomainError);
}

TEST_CASE("witnesses record the instance they certify") {
    auto w = thm1_reduce(scalar(1.0), scalar(2.0), scalar(1.0), catalog_lookup("x^2"));
    CHECK(w.inputs.function_name == "x^2");
    REQUIRE(w.inputs.s.has_value());
    CHECK((*w.inputs.s)(0, 0) == Complex(1.0));
    CHECK(w.inputs.a2(0, 0) == Complex(2.0));

    auto w3 = thm3_construct(scalar(0.0), Complex(0.5), catalog_lookup("x^2"));
    REQUIRE(w3.inputs.eps.has_value());
    CHECK(*w3.inputs.eps == Complex(0.5));
    CHECK(w3.inputs.a2(0, 0) == Complex(0.5)); // the shifted copy
}

TEST_CASE("thm3_construct scalar instance is exact") {
    auto w = thm3_construct(scalar(0.0), Complex(1.0), catalog_lookup("x^2"));
    CHECK(w.quasi_norm == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w.commutator_norm == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w.residuals.at("commutator_block") == 0.0);
    CHECK(w.residuals.at("f_block_identity") == 0.0);
    CHECK(w.identity_verified);
}

TEST_CASE("thm3 commutator corner is the identity block") {
    TrialRng rng(83);
    for (int trial = 0; trial < 25; ++trial) {
        Index n = 1 + static_cast<Index>(rng.raw() % 8);
        Matrix a1 = hermitian_draw(n, rng);
        auto w = thm3_construct(a1, Complex(0.5), catalog_lookup("exp"));
        CHECK(w.residuals.at("commutator_block") <= 1e-14);
        CHECK(w.residuals.at("f_block_identity") <= 1e-9);
    }
}

TEST_CASE("thm3 accepts complex shifts") {
    TrialRng rng(89);
    Matrix a1 = hermitian_draw(4, rng);
    auto w = thm3_construct(a1, Complex(0.6, -0.8), catalog_lookup("exp"));
    CHECK(w.residuals.at("commutator_block") <= 1e-14);
    CHECK(w.residuals.at("f_block_identity") <= 1e-9);
}

TEST_CASE("thm3_construct rejects a zero shift") {
    CHECK_THROWS_AS(thm3_construct(scalar(0.0), Complex(0.0), catalog_lookup("x^2")),
                    DegenerateShiftError);
    CHECK_THROWS_AS(thm3_lipschitz_quotient(scalar(0.0), {Complex(1.0), Complex(0.0)},
                                            catalog_lookup("x^2")),
                    DegenerateShiftError);
}

TEST_CASE("lipschitz quotients: identity gives ratio 1") {
    TrialRng rng(97);
    Matrix a1 = hermitian_draw(5, rng);
    auto ratios = thm3_lipschitz_quotient(
        a1, {Complex(1e-3), Complex(0.1), Complex(1.0), Complex(0.0, 2.0)},
        catalog_lookup("identity"));
    for (const auto& [eps, ratio] : ratios)
        CHECK(ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lipschitz quotients: affine gives ratio |m|") {
    TrialRng rng(101);
    Matrix a1 = hermitian_draw(4, rng);
    Complex m(2.5, 0.5);
    auto f = make_affine(m, Complex(0.75, -1.25));
    auto ratios = thm3_lipschitz_quotient(
        a1, {Complex(0.0009765625), Complex(0.125), Complex(1.0), Complex(16.0)}, f);
    for (const auto& [eps, ratio] : ratios)
        CHECK(std::abs(ratio - std::abs(m)) <= 1e-13 * (1.0 + std::abs(m)));
}

TEST_CASE("lipschitz quotients: x^2 on diag(0,1) has the closed form") {
    Matrix a1 = Matrix::Zero(2, 2);
    a1(1, 1) = Complex(1.0);
    auto f = catalog_lookup("x^2");
    for (double eps : {0.5, -0.1, 0.25}) {
        auto ratios = thm3_lipschitz_quotient(a1, {Complex(eps)}, f);
        double expected = std::max(std::abs(eps), std::abs(2.0 + eps));
        CHECK(ratios[0].second == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("thm4_construct_b routes") {
    auto degenerate = thm4_construct_b(scalar(1.0), scalar(2.0), Matrix::Zero(1, 1));
    CHECK(spectral_norm(degenerate.b - direct_sum(scalar(1.0), scalar(2.0))) == 0.0);

    auto cs = thm4_construct_b(scalar(1.0), scalar(2.0), scalar(1.0));
    CHECK(std::abs(cs.b(0, 0) - Complex(1.0)) <= 1e-15);
    CHECK(std::abs(cs.b(0, 1) - Complex(-1.0)) <= 1e-15);
    CHECK(std::abs(cs.b(1, 0)) <= 1e-15);
    CHECK(std::abs(cs.b(1, 1) - Complex(2.0)) <= 1e-15);
    CHECK(cs.routes_agree);

    TrialRng rng(103);
    for (int trial = 0; trial < 25; ++trial) {
        Matrix a1 = hermitian_draw(4, rng);
        Matrix a2 = hermitian_draw(3, rng);
        Matrix s = random_contraction(4, 3, rng);
        CHECK(thm4_construct_b(a1, a2, s).route_residual <= 1e-13);
    }
}

TEST_CASE("thm4_f_of_b: identity function gives a zero route gap") {
    TrialRng rng(107);
    Matrix a1 = hermitian_draw(3, rng);
    Matrix a2 = hermitian_draw(2, rng);
    Matrix s = random_contraction(3, 2, rng);
    auto w = thm4_f_of_b(a1, a2, s, catalog_lookup("identity"));
    REQUIRE(w.oracle_available);
    CHECK(w.residuals.at("f_routes") == 0.0);
}

TEST_CASE("thm4_f_of_b scalar instance: B^2 by hand") {
    auto w = thm4_f_of_b(scalar(1.0), scalar(2.0), scalar(1.0), catalog_lookup("x^2"));
    REQUIRE(w.b.has_value());
    Matrix fb = w.q * direct_sum(scalar(1.0), scalar(4.0)) * corner_q(scalar(1.0), Complex(1.0));
    CHECK(std::abs(fb(0, 0) - Complex(1.0)) <= 1e-15);
    CHECK(std::abs(fb(0, 1) - Complex(-3.0)) <= 1e-15);
    CHECK(std::abs(fb(1, 1) - Complex(4.0)) <= 1e-15);
    REQUIRE(w.oracle_available);
    CHECK(w.residuals.at("f_routes") <= 1e-15);
    CHECK(w.identity_verified);
}

TEST_CASE("thm4 norm chain on random Hermitian pairs") {
    TrialRng rng(109);
    for (const char* name : {"x^2", "3x^2+x", "exp"}) {
        for (int trial = 0; trial < 10; ++trial) {
            Matrix a1 = hermitian_draw(4, rng);
            Matrix a2 = hermitian_draw(4, rng);
            Matrix s = random_contraction(4, 4, rng);
            auto w = thm4_f_of_b(a1, a2, s, catalog_lookup(name));
            CHECK(w.residuals.at("f_norm_chain") <= 1e-12);
            CHECK(w.residuals.at("a_norm_chain") <= 1e-12);
            if (w.oracle_available) {
                double cond = condition_number(w.q);
                CHECK(w.residuals.at("f_routes") <= 1e-8 * cond * cond);
            }
        }
    }
}

TEST_CASE("thm4_f_of_b reports an unavailable oracle and still produces the route") {
    // Nearly coincident eigenvalues plus a huge coupling make the
    // eigendecomposition of B ill-conditioned past the 1e8 threshold, while
    // the similarity route only needs f on the 1x1 blocks.
    Matrix a1 = scalar(0.3);
    Matrix a2 = scalar(0.3 + 1e-13);
    Matrix s = scalar(1e9);
    auto w = thm4_f_of_b(a1, a2, s, catalog_lookup("exp"));
    CHECK_FALSE(w.oracle_available);
    CHECK(w.note.find("oracle-unavailable") == 0);
    CHECK(w.residuals.count("f_routes") == 0);
    CHECK(w.residuals.count("construction_routes") == 1);
    CHECK(w.residuals.count("f_norm_chain") == 1);
}

TEST_CASE("commuting corollary on a diagonal pair") {
    Matrix a1 = Matrix::Zero(2, 2), a2 = Matrix::Zero(2, 2);
    a1(0, 0) = Complex(1.0);
    a1(1, 1) = Complex(2.0);
    a2(0, 0) = Complex(3.0);
    a2(1, 1) = Complex(5.0);
    auto w = commuting_corollary(a1, a2, catalog_lookup("x^2"));
    CHECK(w.residuals.at("sylvester_identity") <= 1e-15);
    CHECK(w.commutator_norm == doctest::Approx(1.0).epsilon(1e-15));
    // (A1-A2)^{-1} = diag(-1/2, -1/3)
    CHECK(std::abs(w.q(0, 2) - Complex(0.5)) <= 1e-15);  // Q carries -S
    CHECK(std::abs(w.q(1, 3) - Complex(1.0 / 3.0)) <= 1e-15);
    CHECK(w.identity_verified);
}

TEST_CASE("commuting corollary with the identity function has unit quasi-norm") {
    Matrix a1 = Matrix::Zero(2, 2), a2 = Matrix::Zero(2, 2);
    a1(0, 0) = Complex(1.0);
    a1(1, 1) = Complex(2.0);
    a2(0, 0) = Complex(3.0);
    a2(1, 1) = Complex(5.0);
    auto w = commuting_corollary(a1, a2, catalog_lookup("identity"));
    CHECK(w.quasi_norm == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("commuting corollary error paths") {
    Matrix a1 = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(commuting_corollary(a1, a1, catalog_lookup("x^2")), SingularMatrixError);

    Matrix flip(2, 2);
    flip << Complex(0.0), Complex(1.0), Complex(1.0), Complex(0.0);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = Complex(1.0);
    d(1, 1) = Complex(2.0);
    CHECK_THROWS_AS(commuting_corollary(flip, d, catalog_lookup("x^2")), HypothesisError);
}
