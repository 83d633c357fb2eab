#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcomm/bounds.hpp"
#include "qcomm/ensemble.hpp"
#include "qcomm/funcalc.hpp"
#include "qcomm/linalg.hpp"

namespace qcomm {

enum class Suite {
    Stacking,
    Thm1,
    Thm3,
    Thm4,
    Commuting,
    HypothesisTransfer,
    LipschitzProbe,
};

const char* to_string(Suite suite);
Suite parse_suite(const std::string& name);

/// Everything that determines a run. Together with the artifact version this
/// fixes every matrix, residual, and verdict; `parallel` only controls how
/// the trials are scheduled, never what they compute.
struct TrialConfig {
    std::uint64_t seed = 42;
    int dim1 = 4;
    int dim2 = 3;
    Ensemble ensemble = Ensemble::HermitianGaussian;
    std::string function_name = "x^2";
    int trials = 100;
    std::map<std::string, double> tolerance_overrides;
    std::vector<Complex> eps_grid; // empty means the suite default
    int parallel = 1;
};

/// Pass thresholds, resolved from defaults plus tolerance_overrides.
struct Tolerances {
    double eq1 = 1e-12;             // stacked-norm identity, relative
    double identity = 1e-9;         // block identities, scaled
    double bridge = 1e-12;          // norm-equality bridges, scaled
    double comm_block = 1e-14;      // shift-commutator corner, scaled
    double construction = 1e-13;    // corner-similarity dual route, scaled
    double f_routes_scale = 1e-8;   // times cond(Q)^2
    double norm_chain = 1e-12;      // norm chain, relative
    double sylvester_scale = 1e-9;  // times cond(A1 - A2)
    double g1_radius = 1.0;         // radius handed to polynomial_g1
    double spectral_shift = 1.1;    // PSD shift applied for sqrt
};

Tolerances resolve_tolerances(const std::map<std::string, double>& overrides);

struct TrialRecord {
    int trial_index = 0;
    std::map<std::string, double> residuals;   // scale-free defect measures
    std::map<std::string, double> diagnostics; // conditions, probe quotients
    double commutator_norm = 0.0;
    double quasi_norm = 0.0;
    std::optional<double> margin;
    bool pass = true;
    std::string note;
};

struct Aggregate {
    double max_residual = 0.0;
    std::optional<double> min_margin;
    int passed = 0;
    int total = 0;
};

Aggregate recompute_aggregate(const std::vector<TrialRecord>& records);

struct VerificationReport {
    Suite suite = Suite::Stacking;
    TrialConfig config;
    std::string version;
    std::string generator_id;
    std::optional<BoundFunction> bound; // the g in use, or the probe envelope
    std::vector<TrialRecord> records;
    Aggregate aggregate;
    double wall_ms = 0.0;

    bool all_passed() const { return aggregate.passed == aggregate.total; }
};

/// Validates the configuration (throwing ConfigError before any trial runs),
/// then executes config.trials independent trials. Per-trial randomness is
/// derived from (seed, trial index), so records do not depend on `parallel`.
VerificationReport run_suite(const TrialConfig& config, Suite suite);

} // namespace qcomm
