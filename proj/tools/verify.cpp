// Command-line front end: runs one verification suite on a seeded random
// ensemble and optionally writes the structured report.
//
// Exit codes: 0 all assertions passed, 1 assertion failure, 2 bad configuration.

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "qcomm/report.hpp"
#include "qcomm/suite.hpp"
#include "qcomm/version.hpp"

namespace {

std::vector<qcomm::Complex> parse_eps_grid(const std::string& text) {
    std::vector<qcomm::Complex> grid;
    std::string current;
    for (char c : text + ",") {
        if (c == ',') {
            if (!current.empty())
                grid.push_back(qcomm::parse_complex(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    return grid;
}

void apply_tolerance_flags(const std::vector<std::string>& flags, qcomm::TrialConfig& config) {
    for (const auto& flag : flags) {
        auto pos = flag.find('=');
        if (pos == std::string::npos || pos == 0 || pos + 1 == flag.size())
            throw qcomm::ConfigError("--tol wants name=value, got '" + flag + "'");
        std::size_t consumed = 0;
        double value = 0.0;
        try {
            value = std::stod(flag.substr(pos + 1), &consumed);
        } catch (const std::exception&) {
            throw qcomm::ConfigError("--tol value in '" + flag + "' is not a number");
        }
        if (consumed != flag.size() - pos - 1)
            throw qcomm::ConfigError("--tol value in '" + flag + "' is not a number");
        config.tolerance_overrides[flag.substr(0, pos)] = value;
    }
}

void print_summary(const qcomm::VerificationReport& report) {
    std::cout << "suite " << to_string(report.suite) << ": " << report.aggregate.passed << "/"
              << report.aggregate.total << " trials passed, max residual "
              << report.aggregate.max_residual;
    if (report.aggregate.min_margin)
        std::cout << ", min margin " << *report.aggregate.min_margin;
    std::cout << ", " << report.wall_ms << " ms\n";

    int shown = 0;
    for (const auto& rec : report.records) {
        if (rec.pass)
            continue;
        if (++shown > 10) {
            std::cout << "  ... more failing trials omitted\n";
            break;
        }
        std::cout << "  trial " << rec.trial_index << " FAILED"
                  << (rec.note.empty() ? "" : " (" + rec.note + ")") << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Randomized verification of stacked commutator constructions"};
    app.set_version_flag("--version", std::string(qcomm::kVersion));

    std::string suite_name;
    app.add_option("suite", suite_name,
                   "one of: stacking, thm1, thm3, thm4, commuting, hypothesis-transfer, "
                   "lipschitz-probe")
        ->required();

    qcomm::TrialConfig config;
    std::string ensemble_name;
    std::string eps_grid_text;
    std::string out_path;
    std::vector<std::string> tol_flags;

    app.add_option("--seed", config.seed, "master seed for the trial streams");
    app.add_option("--dim1", config.dim1, "dimension of the first space (<= 64)");
    app.add_option("--dim2", config.dim2, "dimension of the second space (<= 64)");
    app.add_option("--trials", config.trials, "number of independent trials");
    app.add_option("--function", config.function_name,
                   "catalog name, poly:c0,c1,..., or affine:m,f0");
    app.add_option("--ensemble", ensemble_name,
                   "HermitianGaussian, NormalRandom, DiagonalizableRandom, or "
                   "CommutingDiagonalPair");
    app.add_option("--eps-grid", eps_grid_text, "comma list of complex shifts, e.g. 1e-3,0.5+0.5i");
    app.add_option("--tol", tol_flags, "threshold override name=value (repeatable)");
    app.add_option("--out", out_path, "write the line-delimited report here");
    app.add_option("--parallel", config.parallel, "worker threads (never affects results)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        qcomm::Suite suite = qcomm::parse_suite(suite_name);
        if (!ensemble_name.empty())
            config.ensemble = qcomm::parse_ensemble(ensemble_name);
        else if (suite == qcomm::Suite::Commuting)
            config.ensemble = qcomm::Ensemble::CommutingDiagonalPair;
        if (!eps_grid_text.empty())
            config.eps_grid = parse_eps_grid(eps_grid_text);
        apply_tolerance_flags(tol_flags, config);

        qcomm::VerificationReport report = qcomm::run_suite(config, suite);
        if (!out_path.empty())
            qcomm::emit_report(report, out_path);
        print_summary(report);
        return report.all_passed() ? 0 : 1;
    } catch (const qcomm::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const qcomm::ReportIoError& e) {
        std::cerr << "report error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
