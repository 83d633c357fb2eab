#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qcomm/funcalc.hpp"
#include "qcomm/linalg.hpp"

namespace qcomm {

/// A concrete nondecreasing bound g : [0, inf) -> [0, inf). Linear bounds are
/// t -> slope * t; tabulated bounds interpolate piecewise-linearly between
/// samples and clamp outside the sampled range. `valid_radius`, when present,
/// is the operator-norm ball the bound is derived for; checks refuse inputs
/// outside it.
struct BoundFunction {
    struct Linear {
        double slope;
    };
    struct Tabulated {
        std::vector<std::pair<double, double>> samples; // (t, g(t)), t ascending
    };

    std::variant<Linear, Tabulated> form;
    std::string provenance;
    std::optional<double> valid_radius;

    double operator()(double t) const;
    bool is_linear() const { return std::holds_alternative<Linear>(form); }
    double slope() const; // Linear only
};

BoundFunction linear_bound(double slope, std::string provenance,
                           std::optional<double> valid_radius = std::nullopt);

/// Throws InputError unless samples are t-ascending with nondecreasing values.
BoundFunction tabulated_bound(std::vector<std::pair<double, double>> samples,
                              std::string provenance);

/// Sorts by t, merges duplicate abscissas by max, and takes the running max
/// so the result is a valid nondecreasing table.
std::vector<std::pair<double, double>>
monotone_envelope(std::vector<std::pair<double, double>> samples);

/// Commutator bound for a polynomial f = sum c_k x^k on the operator-norm
/// ball of the given radius: telescoping [Q, A^k] over powers gives
/// ||Q f(A) - f(A) Q|| <= L ||Q A - A Q|| with L = sum_k |c_k| k radius^{k-1},
/// for every Q (the slope never depends on Q).
BoundFunction polynomial_g1(const ScalarFunction& f, double radius);

/// For f(z) = m z + f0 the commutator estimate is an equality:
/// returns (||Q f(A) - f(A) Q||, |m| ||Q A - A Q||), both formed explicitly.
std::pair<double, double> affine_exactness(Complex m, Complex f0, const Matrix& q,
                                           const Matrix& a);

struct HypothesisCheck {
    bool satisfied;
    double margin; // g(||commutator||) - ||f-commutator||
    double slack;  // 1e-10 * (1 + g value)
    double g_value;
    double lhs_norm;         // the f-side norm
    double commutator_norm;  // the argument fed to g
};

/// ||Q f(A) - f(A) Q|| <= g(||Q A - A Q||), for invertible Q.
HypothesisCheck check_hypothesis(const BoundFunction& g, const Matrix& q, const Matrix& a,
                                 const ScalarFunction& f,
                                 std::optional<CalculusPath> path = std::nullopt,
                                 double q_cond_threshold = 1e8);

/// ||f(A1) S - S f(A2)|| <= g(||A1 S - S A2||), with the same g as the
/// hypothesis check; g's radius must cover max(||A1||, ||A2||).
HypothesisCheck check_transfer(const BoundFunction& g, const Matrix& a1, const Matrix& a2,
                               const Matrix& s, const ScalarFunction& f,
                               std::optional<CalculusPath> path = std::nullopt);

} // namespace qcomm
