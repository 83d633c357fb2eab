#include "qcomm/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcomm {

const char* to_string(TheoremTag tag) {
    switch (tag) {
    case TheoremTag::Thm1: return "Thm1";
    case TheoremTag::Thm3: return "Thm3";
    case TheoremTag::Thm4: return "Thm4";
    case TheoremTag::CommutingCorollary: return "CommutingCorollary";
    }
    return "Unknown";
}

namespace {

double scaled_gap(const Matrix& actual, const Matrix& expected) {
    return spectral_norm(actual - expected) / (1.0 + spectral_norm(expected));
}

double scaled_norm_gap(double measured, double reference) {
    return std::abs(measured - reference) / (1.0 + reference);
}

Matrix apply_with(const ScalarFunction& f, const Matrix& a, const ReductionOptions& opts) {
    if (opts.path)
        return apply_function(f, a, *opts.path);
    return apply_function(f, a);
}

void finalize_identity_flags(ReductionWitness& w, const ReductionOptions& opts,
                             const std::vector<std::string>& identity_keys,
                             const std::vector<std::string>& bridge_keys) {
    w.structural_residual = 0.0;
    for (const auto& key : identity_keys)
        w.structural_residual = std::max(w.structural_residual, w.residuals.at(key));
    bool bridges_ok = true;
    for (const auto& key : bridge_keys)
        bridges_ok = bridges_ok && w.residuals.at(key) <= opts.bridge_tol;
    w.identity_verified = w.structural_residual <= opts.identity_tol && bridges_ok;
}

} // namespace

ReductionWitness thm1_reduce(const Matrix& a1, const Matrix& a2, const Matrix& s,
                             const ScalarFunction& f, const ReductionOptions& opts) {
    require_square(a1);
    require_square(a2);
    if (s.rows() != a1.rows() || s.cols() != a2.rows()) {
        std::ostringstream os;
        os << "S must be " << a1.rows() << "x" << a2.rows() << ", got " << s.rows() << "x"
           << s.cols();
        throw ShapeError(os.str());
    }

    ReductionWitness w;
    w.theorem = TheoremTag::Thm1;
    w.inputs = WitnessInputs{a1, a2, s, std::nullopt, f.name};
    w.q = corner_q(s, Complex(-1.0, 0.0));
    w.a_stacked = direct_sum(a1, a2);

    Matrix fa1 = apply_with(f, a1, opts);
    Matrix fa2 = apply_with(f, a2, opts);
    Matrix f_stacked = apply_with(f, w.a_stacked, opts);

    Matrix quasi_f = fa1 * s - s * fa2;
    Matrix quasi_a = a1 * s - s * a2;
    w.quasi_norm = spectral_norm(quasi_f);
    w.commutator_norm = spectral_norm(quasi_a);

    Matrix f_comm = w.q * f_stacked - f_stacked * w.q;
    Matrix a_comm = w.q * w.a_stacked - w.a_stacked * w.q;
    w.residuals["f_block_identity"] = scaled_gap(f_comm, embed_upper_right(quasi_f));
    w.residuals["a_block_identity"] = scaled_gap(a_comm, embed_upper_right(quasi_a));
    w.residuals["f_norm_bridge"] = scaled_norm_gap(spectral_norm(f_comm), w.quasi_norm);
    w.residuals["a_norm_bridge"] = scaled_norm_gap(spectral_norm(a_comm), w.commutator_norm);

    finalize_identity_flags(w, opts, {"f_block_identity", "a_block_identity"},
                            {"f_norm_bridge", "a_norm_bridge"});
    return w;
}

ReductionWitness thm3_construct(const Matrix& a1, Complex eps, const ScalarFunction& f,
                                const ReductionOptions& opts) {
    require_square(a1);
    require_nonempty(a1);
    if (eps == Complex(0.0, 0.0))
        throw DegenerateShiftError("eps must be nonzero");

    Index n = a1.rows();
    Matrix eye = identity_matrix(n);
    Matrix shifted = a1 + eps * eye;

    ReductionWitness w;
    w.theorem = TheoremTag::Thm3;
    w.inputs = WitnessInputs{a1, shifted, std::nullopt, eps, f.name};
    w.q = corner_q(eye, Complex(1.0, 0.0) / eps);
    w.a_stacked = direct_sum(a1, shifted);

    // ||I|| = 1 is what lets the bound be read off at argument 1; check it
    // rather than assume it.
    double identity_norm = spectral_norm(eye);
    if (std::abs(identity_norm - 1.0) > 1e-14)
        throw Error("spectral norm of the identity deviates from 1");
    w.commutator_norm = identity_norm;

    double a_norm = spectral_norm(a1);
    double eps_abs = std::abs(eps);

    Matrix a_comm = w.q * w.a_stacked - w.a_stacked * w.q;
    double comm_raw = spectral_norm(a_comm - embed_upper_right(eye));
    w.residuals["commutator_block"] = comm_raw;
    // The corner mixes eps^{-1}-scaled entries, so raw round-off grows like
    // ||A1|| / |eps|; the scaled residual divides that amplification out.
    w.residuals["commutator_block_scaled"] = comm_raw / (1.0 + a_norm / eps_abs);

    Matrix f_a1 = apply_with(f, a1, opts);
    Matrix f_shifted = apply_with(f, shifted, opts);
    Matrix quotient = (f_shifted - f_a1) / eps;
    w.quasi_norm = spectral_norm(quotient);

    Matrix f_stacked = apply_with(f, w.a_stacked, opts);
    Matrix f_comm = w.q * f_stacked - f_stacked * w.q;
    w.residuals["f_block_identity"] = scaled_gap(f_comm, embed_upper_right(quotient));
    w.residuals["f_norm_bridge"] = scaled_norm_gap(spectral_norm(f_comm), w.quasi_norm);

    finalize_identity_flags(w, opts, {"commutator_block_scaled", "f_block_identity"},
                            {"f_norm_bridge"});
    return w;
}

std::vector<std::pair<Complex, double>>
thm3_lipschitz_quotient(const Matrix& a1, const std::vector<Complex>& eps_grid,
                        const ScalarFunction& f, const ReductionOptions& opts) {
    require_square(a1);
    require_nonempty(a1);
    Matrix eye = identity_matrix(a1.rows());
    Matrix f_a1 = apply_with(f, a1, opts);
    std::vector<std::pair<Complex, double>> out;
    out.reserve(eps_grid.size());
    for (Complex eps : eps_grid) {
        if (eps == Complex(0.0, 0.0))
            throw DegenerateShiftError("eps grid contains zero");
        Matrix f_shifted = apply_with(f, a1 + eps * eye, opts);
        out.emplace_back(eps, spectral_norm(f_shifted - f_a1) / std::abs(eps));
    }
    return out;
}

CornerSimilarity thm4_construct_b(const Matrix& a1, const Matrix& a2, const Matrix& s) {
    require_square(a1);
    require_square(a2);
    if (s.rows() != a1.rows() || s.cols() != a2.rows())
        throw ShapeError("S does not match the block dimensions");

    CornerSimilarity cs;
    cs.q = corner_q(s, Complex(-1.0, 0.0));
    Matrix q_inv = corner_q(s, Complex(1.0, 0.0));
    cs.b = cs.q * direct_sum(a1, a2) * q_inv;

    Matrix direct = direct_sum(a1, a2);
    direct.topRightCorner(a1.rows(), a2.rows()) = a1 * s - s * a2;
    cs.route_residual = spectral_norm(cs.b - direct) / (1.0 + spectral_norm(cs.b));
    cs.routes_agree = cs.route_residual <= 1e-13;
    return cs;
}

ReductionWitness thm4_f_of_b(const Matrix& a1, const Matrix& a2, const Matrix& s,
                             const ScalarFunction& f, const ReductionOptions& opts) {
    CornerSimilarity cs = thm4_construct_b(a1, a2, s);

    ReductionWitness w;
    w.theorem = TheoremTag::Thm4;
    w.inputs = WitnessInputs{a1, a2, s, std::nullopt, f.name};
    w.q = cs.q;
    w.a_stacked = direct_sum(a1, a2);
    w.b = cs.b;
    w.residuals["construction_routes"] = cs.route_residual;

    Matrix fa1 = apply_with(f, a1, opts);
    Matrix fa2 = apply_with(f, a2, opts);
    Matrix q_inv = corner_q(s, Complex(1.0, 0.0));
    Matrix f_b_similarity = cs.q * direct_sum(fa1, fa2) * q_inv;

    Matrix quasi_f = fa1 * s - s * fa2;
    w.quasi_norm = spectral_norm(quasi_f);
    w.commutator_norm = spectral_norm(a1 * s - s * a2);

    // Independent oracle on B itself. B is generally non-normal, so the
    // Hermitian path never applies here.
    try {
        Matrix f_b_oracle = f.is_polynomial_form()
                                ? apply_function(f, cs.b, CalculusPath::PolynomialHornerPath)
                                : apply_function(f, cs.b, CalculusPath::DiagonalizablePath);
        w.residuals["f_routes"] =
            spectral_norm(f_b_similarity - f_b_oracle) / (1.0 + spectral_norm(f_b_similarity));
    } catch (const PathError& e) {
        w.oracle_available = false;
        w.note = std::string("oracle-unavailable: ") + e.what();
    }

    Matrix f_stacked = apply_with(f, w.a_stacked, opts);
    w.residuals["f_norm_chain"] =
        scaled_norm_gap(spectral_norm(f_b_similarity - f_stacked), w.quasi_norm);
    w.residuals["a_norm_chain"] =
        scaled_norm_gap(spectral_norm(cs.b - w.a_stacked), w.commutator_norm);

    finalize_identity_flags(w, opts, {"construction_routes"}, {"f_norm_chain", "a_norm_chain"});
    return w;
}

ReductionWitness commuting_corollary(const Matrix& a1, const Matrix& a2, const ScalarFunction& f,
                                     const ReductionOptions& opts) {
    require_square(a1);
    require_square(a2);
    if (a1.rows() != a2.rows())
        throw ShapeError("commuting pair must act on the same space");

    double commutation_defect = spectral_norm(a1 * a2 - a2 * a1);
    double commuting_tol =
        opts.commuting_tol_scale * (1.0 + spectral_norm(a1)) * (1.0 + spectral_norm(a2));
    if (commutation_defect > commuting_tol) {
        std::ostringstream os;
        os << "inputs do not commute: ||A1 A2 - A2 A1|| = " << commutation_defect << " > "
           << commuting_tol;
        throw HypothesisError(os.str());
    }

    Matrix difference = a1 - a2;
    Matrix eye = identity_matrix(a1.rows());
    Matrix s = solve(difference, eye, opts.difference_cond_threshold);

    ReductionWitness w;
    w.theorem = TheoremTag::CommutingCorollary;
    w.inputs = WitnessInputs{a1, a2, s, std::nullopt, f.name};
    w.q = corner_q(s, Complex(-1.0, 0.0));
    w.a_stacked = direct_sum(a1, a2);
    w.commutator_norm = spectral_norm(eye);
    w.residuals["commutation_defect"] = commutation_defect;
    w.residuals["sylvester_identity"] = spectral_norm(a1 * s - s * a2 - eye);

    Matrix f_gap = apply_with(f, a2, opts) - apply_with(f, a1, opts);
    w.quasi_norm = spectral_norm(solve(difference, f_gap, opts.difference_cond_threshold));

    w.structural_residual = w.residuals["sylvester_identity"];
    double cond = condition_number(difference);
    w.identity_verified = w.structural_residual <= opts.identity_tol * cond;
    return w;
}

} // namespace qcomm
