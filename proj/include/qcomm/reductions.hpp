#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcomm/funcalc.hpp"
#include "qcomm/linalg.hpp"
#include "qcomm/stacking.hpp"

namespace qcomm {

enum class TheoremTag { Thm1, Thm3, Thm4, CommutingCorollary };

const char* to_string(TheoremTag tag);

struct BoundCheckRecord {
    double g_value;
    bool satisfied;
};

/// The instance a witness certifies. For the shift construction a2 holds
/// A1 + eps I; for the commuting corollary s holds the computed
/// (A1 - A2)^{-1}.
struct WitnessInputs {
    Matrix a1;
    Matrix a2;
    std::optional<Matrix> s;
    std::optional<Complex> eps;
    std::string function_name;
};

/// Fully materialized record of one theorem-construction instance. The
/// residuals map carries named scale-free residuals (each block-identity
/// residual is divided by 1 + the norm of its expected block, norm-equality
/// residuals by 1 + the compared norm); structural_residual is the largest
/// block-identity residual.
struct ReductionWitness {
    TheoremTag theorem;
    WitnessInputs inputs;
    Matrix q;
    Matrix a_stacked;
    std::optional<Matrix> b;
    std::map<std::string, double> residuals;
    double structural_residual = 0.0;
    double commutator_norm = 0.0;
    double quasi_norm = 0.0;
    std::optional<BoundCheckRecord> bound_check;
    bool identity_verified = false;
    bool oracle_available = true;
    std::string note;
};

struct ReductionOptions {
    double identity_tol = 1e-9;  // scaled block-identity threshold
    double bridge_tol = 1e-12;   // scaled norm-equality threshold
    double commuting_tol_scale = 1e-10;
    double difference_cond_threshold = 1e8;
    std::optional<CalculusPath> path; // override the per-matrix auto choice
};

/// Quasi-commutator -> commutator reduction: builds Q = [[I, -S], [0, I]] and
/// A = diag(A1, A2), verifies that Q f(A) - f(A) Q is exactly the corner
/// embedding of f(A1) S - S f(A2) (and the same with f stripped), and that
/// the corner norms bridge back to the quasi-commutator norms.
ReductionWitness thm1_reduce(const Matrix& a1, const Matrix& a2, const Matrix& s,
                             const ScalarFunction& f, const ReductionOptions& opts = {});

/// Shift construction behind the Lipschitz consequence: Q = [[I, (1/eps) I],
/// [0, I]] against A = diag(A1, A1 + eps I). The commutator collapses to the
/// corner embedding of I; the f-side corner is (1/eps)(f(A1+eps I) - f(A1)).
ReductionWitness thm3_construct(const Matrix& a1, Complex eps, const ScalarFunction& f,
                                const ReductionOptions& opts = {});

/// Difference quotients ||f(A1 + eps I) - f(A1)|| / |eps| over a grid, in
/// grid order.
std::vector<std::pair<Complex, double>>
thm3_lipschitz_quotient(const Matrix& a1, const std::vector<Complex>& eps_grid,
                        const ScalarFunction& f, const ReductionOptions& opts = {});

/// B = [[I,-S],[0,I]] diag(A1,A2) [[I,S],[0,I]], which equals
/// [[A1, A1 S - S A2], [0, A2]]; route_residual measures the agreement of the
/// two constructions, scaled by 1 + ||B||.
struct CornerSimilarity {
    Matrix b;
    Matrix q; // [[I, -S], [0, I]]
    double route_residual;
    bool routes_agree; // route_residual <= 1e-13
};

CornerSimilarity thm4_construct_b(const Matrix& a1, const Matrix& a2, const Matrix& s);

/// f(B) two ways: through the similarity route Q diag(f(A1), f(A2)) Q^{-1}
/// and through an independent functional-calculus oracle on B itself (Horner
/// for polynomial-form f, general diagonalization otherwise). Also records
/// the norm chain ||f(B) - f(A)|| = ||f(A1) S - S f(A2)|| and
/// ||B - A|| = ||A1 S - S A2||.
ReductionWitness thm4_f_of_b(const Matrix& a1, const Matrix& a2, const Matrix& s,
                             const ScalarFunction& f, const ReductionOptions& opts = {});

/// For commuting A1, A2 with invertible difference, S = (A1 - A2)^{-1}
/// satisfies A1 S - S A2 = I; the quasi-commutator norm is then
/// ||(A1 - A2)^{-1} (f(A2) - f(A1))||, formed verbatim.
ReductionWitness commuting_corollary(const Matrix& a1, const Matrix& a2,
                                     const ScalarFunction& f,
                                     const ReductionOptions& opts = {});

} // namespace qcomm
