#include "qcomm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcomm {

double BoundFunction::operator()(double t) const {
    if (t < 0.0 || !std::isfinite(t))
        throw InputError("bound functions are defined on [0, inf)");
    if (const auto* lin = std::get_if<Linear>(&form))
        return lin->slope * t;
    const auto& samples = std::get<Tabulated>(form).samples;
    if (t <= samples.front().first)
        return samples.front().second;
    if (t >= samples.back().first)
        return samples.back().second;
    auto hi = std::upper_bound(samples.begin(), samples.end(), t,
                               [](double v, const auto& s) { return v < s.first; });
    auto lo = hi - 1;
    double w = (t - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
}

double BoundFunction::slope() const {
    if (const auto* lin = std::get_if<Linear>(&form))
        return lin->slope;
    throw Error("slope() called on a tabulated bound");
}

BoundFunction linear_bound(double slope, std::string provenance,
                           std::optional<double> valid_radius) {
    if (slope < 0.0 || !std::isfinite(slope))
        throw InputError("linear bound slope must be finite and nonnegative");
    return BoundFunction{BoundFunction::Linear{slope}, std::move(provenance), valid_radius};
}

BoundFunction tabulated_bound(std::vector<std::pair<double, double>> samples,
                              std::string provenance) {
    if (samples.empty())
        throw InputError("tabulated bound needs at least one sample");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].first < 0.0 || samples[i].second < 0.0)
            throw InputError("tabulated bound samples must be nonnegative");
        if (i > 0 && (samples[i].first <= samples[i - 1].first ||
                      samples[i].second < samples[i - 1].second))
            throw InputError("tabulated bound samples must be ascending and nondecreasing");
    }
    return BoundFunction{BoundFunction::Tabulated{std::move(samples)}, std::move(provenance),
                         std::nullopt};
}

std::vector<std::pair<double, double>>
monotone_envelope(std::vector<std::pair<double, double>> samples) {
    std::sort(samples.begin(), samples.end());
    std::vector<std::pair<double, double>> out;
    for (const auto& s : samples) {
        if (!out.empty() && out.back().first == s.first) {
            out.back().second = std::max(out.back().second, s.second);
            continue;
        }
        double floor = out.empty() ? 0.0 : out.back().second;
        out.emplace_back(s.first, std::max(s.second, floor));
    }
    return out;
}

BoundFunction polynomial_g1(const ScalarFunction& f, double radius) {
    if (!f.is_polynomial_form())
        throw UnsupportedFunctionError("polynomial_g1 needs a polynomial-form function, got '" +
                                       f.name + "'");
    if (radius < 0.0 || !std::isfinite(radius))
        throw InputError("radius must be finite and nonnegative");
    auto coeffs = f.polynomial_coefficients();
    double slope = 0.0;
    for (std::size_t k = 1; k < coeffs.size(); ++k)
        slope += std::abs(coeffs[k]) * static_cast<double>(k) *
                 std::pow(radius, static_cast<double>(k - 1));
    std::ostringstream provenance;
    provenance << "telescoped power commutators of '" << f.name
               << "': L = sum_k k|c_k| r^(k-1) at r = " << radius;
    return linear_bound(slope, provenance.str(), radius);
}

std::pair<double, double> affine_exactness(Complex m, Complex f0, const Matrix& q,
                                           const Matrix& a) {
    require_square(q);
    require_square(a);
    if (q.rows() != a.rows())
        throw ShapeError("Q and A must act on the same space");
    Matrix fa = m * a + f0 * Matrix::Identity(a.rows(), a.cols());
    double lhs = spectral_norm(q * fa - fa * q);
    double rhs = std::abs(m) * spectral_norm(q * a - a * q);
    return {lhs, rhs};
}

namespace {

double radius_cover_slack(double radius) { return radius * 1e-9 + 1e-12; }

HypothesisCheck evaluate_margin(const BoundFunction& g, double commutator_norm,
                                double lhs_norm) {
    HypothesisCheck check{};
    check.commutator_norm = commutator_norm;
    check.lhs_norm = lhs_norm;
    check.g_value = g(commutator_norm);
    check.slack = 1e-10 * (1.0 + check.g_value);
    check.margin = check.g_value - lhs_norm;
    check.satisfied = check.margin >= -check.slack;
    return check;
}

Matrix apply_via(const ScalarFunction& f, const Matrix& a, std::optional<CalculusPath> path) {
    return path ? apply_function(f, a, *path) : apply_function(f, a);
}

} // namespace

HypothesisCheck check_hypothesis(const BoundFunction& g, const Matrix& q, const Matrix& a,
                                 const ScalarFunction& f, std::optional<CalculusPath> path,
                                 double q_cond_threshold) {
    require_square(q);
    require_square(a);
    if (q.rows() != a.rows())
        throw ShapeError("Q and A must act on the same space");
    double q_cond = condition_number(q);
    if (!std::isfinite(q_cond) || q_cond > q_cond_threshold) {
        std::ostringstream os;
        os << "Q must be invertible: condition " << q_cond << " exceeds " << q_cond_threshold;
        throw HypothesisError(os.str());
    }
    if (g.valid_radius) {
        double a_norm = spectral_norm(a);
        if (a_norm > *g.valid_radius + radius_cover_slack(*g.valid_radius)) {
            std::ostringstream os;
            os << "bound radius " << *g.valid_radius << " does not cover ||A|| = " << a_norm;
            throw HypothesisError(os.str());
        }
    }
    Matrix fa = apply_via(f, a, path);
    return evaluate_margin(g, spectral_norm(q * a - a * q), spectral_norm(q * fa - fa * q));
}

HypothesisCheck check_transfer(const BoundFunction& g, const Matrix& a1, const Matrix& a2,
                               const Matrix& s, const ScalarFunction& f,
                               std::optional<CalculusPath> path) {
    require_square(a1);
    require_square(a2);
    if (s.rows() != a1.rows() || s.cols() != a2.rows())
        throw ShapeError("S does not match the block dimensions");
    if (g.valid_radius) {
        double stacked_norm = std::max(spectral_norm(a1), spectral_norm(a2));
        if (stacked_norm > *g.valid_radius + radius_cover_slack(*g.valid_radius)) {
            std::ostringstream os;
            os << "bound radius " << *g.valid_radius
               << " does not cover max(||A1||, ||A2||) = " << stacked_norm;
            throw HypothesisError(os.str());
        }
    }
    Matrix fa1 = apply_via(f, a1, path);
    Matrix fa2 = apply_via(f, a2, path);
    return evaluate_margin(g, spectral_norm(a1 * s - s * a2), spectral_norm(fa1 * s - s * fa2));
}

} // namespace qcomm
