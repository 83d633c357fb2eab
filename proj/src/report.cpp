#include "qcomm/report.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace qcomm {

namespace {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json bound_to_json(const BoundFunction& g) {
    json j;
    j["provenance"] = g.provenance;
    if (g.valid_radius)
        j["valid_radius"] = *g.valid_radius;
    else
        j["valid_radius"] = nullptr;
    if (g.is_linear()) {
        j["form"] = "linear";
        j["slope"] = g.slope();
    } else {
        j["form"] = "tabulated";
        json samples = json::array();
        for (const auto& [t, v] : std::get<BoundFunction::Tabulated>(g.form).samples)
            samples.push_back(json::array({t, v}));
        j["samples"] = samples;
    }
    return j;
}

BoundFunction bound_from_json(const json& j) {
    std::optional<double> radius;
    if (!j.at("valid_radius").is_null())
        radius = j.at("valid_radius").get<double>();
    if (j.at("form") == "linear")
        return linear_bound(j.at("slope").get<double>(), j.at("provenance").get<std::string>(),
                            radius);
    std::vector<std::pair<double, double>> samples;
    for (const auto& s : j.at("samples"))
        samples.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
    return tabulated_bound(std::move(samples), j.at("provenance").get<std::string>());
}

json header_to_json(const VerificationReport& report) {
    json config;
    config["seed"] = report.config.seed;
    config["dims"] = json::array({report.config.dim1, report.config.dim2});
    config["ensemble"] = to_string(report.config.ensemble);
    config["function"] = report.config.function_name;
    config["trials"] = report.config.trials;
    json grid = json::array();
    for (Complex eps : report.config.eps_grid)
        grid.push_back(complex_to_json(eps));
    config["eps_grid"] = grid;
    config["tolerance_overrides"] = report.config.tolerance_overrides;

    json aggregate;
    aggregate["max_residual"] = report.aggregate.max_residual;
    aggregate["min_margin"] =
        report.aggregate.min_margin ? json(*report.aggregate.min_margin) : json(nullptr);
    aggregate["passed"] = report.aggregate.passed;
    aggregate["total"] = report.aggregate.total;

    json header;
    header["suite"] = to_string(report.suite);
    header["config"] = config;
    header["aggregate"] = aggregate;
    header["version"] = report.version;
    header["generator_id"] = report.generator_id;
    header["bound"] = report.bound ? bound_to_json(*report.bound) : json(nullptr);
    return header;
}

json record_to_json(const TrialRecord& rec) {
    json j;
    j["trial_index"] = rec.trial_index;
    j["residuals"] = rec.residuals;
    j["diagnostics"] = rec.diagnostics;
    j["norms"] = {{"commutator", rec.commutator_norm}, {"quasi", rec.quasi_norm}};
    j["margin"] = rec.margin ? json(*rec.margin) : json(nullptr);
    j["pass"] = rec.pass;
    j["note"] = rec.note;
    return j;
}

TrialRecord record_from_json(const json& j) {
    TrialRecord rec;
    rec.trial_index = j.at("trial_index").get<int>();
    rec.residuals = j.at("residuals").get<std::map<std::string, double>>();
    rec.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
    rec.commutator_norm = j.at("norms").at("commutator").get<double>();
    rec.quasi_norm = j.at("norms").at("quasi").get<double>();
    if (!j.at("margin").is_null())
        rec.margin = j.at("margin").get<double>();
    rec.pass = j.at("pass").get<bool>();
    rec.note = j.at("note").get<std::string>();
    return rec;
}

} // namespace

std::string deterministic_payload(const VerificationReport& report) {
    std::ostringstream os;
    os << header_to_json(report).dump() << '\n';
    for (const auto& rec : report.records)
        os << record_to_json(rec).dump() << '\n';
    return os.str();
}

void emit_report(const VerificationReport& report, const std::filesystem::path& path) {
    std::string payload = deterministic_payload(report);
    json timing;
    timing["wall_ms"] = report.wall_ms;
    timing["parallel"] = report.config.parallel;

    std::ofstream out(path, std::ios::trunc);
    if (!out.is_open())
        throw ReportIoError("cannot open report file '" + path.string() + "'");
    out << payload << timing.dump() << '\n';
    out.flush();
    if (!out.good()) {
        out.close();
        std::error_code ec;
        std::filesystem::remove(path, ec);
        throw ReportIoError("failed while writing report file '" + path.string() + "'");
    }
}

VerificationReport read_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in.is_open())
        throw ReportIoError("cannot open report file '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line))
        throw ReportIoError("report file is empty");

    json header;
    try {
        header = json::parse(line);
    } catch (const json::exception& e) {
        throw ReportIoError(std::string("malformed report header: ") + e.what());
    }

    VerificationReport report;
    try {
        report.suite = parse_suite(header.at("suite").get<std::string>());
        const json& config = header.at("config");
        report.config.seed = config.at("seed").get<std::uint64_t>();
        report.config.dim1 = config.at("dims").at(0).get<int>();
        report.config.dim2 = config.at("dims").at(1).get<int>();
        report.config.ensemble = parse_ensemble(config.at("ensemble").get<std::string>());
        report.config.function_name = config.at("function").get<std::string>();
        report.config.trials = config.at("trials").get<int>();
        for (const auto& eps : config.at("eps_grid"))
            report.config.eps_grid.push_back(complex_from_json(eps));
        report.config.tolerance_overrides =
            config.at("tolerance_overrides").get<std::map<std::string, double>>();

        const json& aggregate = header.at("aggregate");
        report.aggregate.max_residual = aggregate.at("max_residual").get<double>();
        if (!aggregate.at("min_margin").is_null())
            report.aggregate.min_margin = aggregate.at("min_margin").get<double>();
        report.aggregate.passed = aggregate.at("passed").get<int>();
        report.aggregate.total = aggregate.at("total").get<int>();

        report.version = header.at("version").get<std::string>();
        report.generator_id = header.at("generator_id").get<std::string>();
        if (!header.at("bound").is_null())
            report.bound = bound_from_json(header.at("bound"));

        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            json j = json::parse(line);
            if (j.contains("wall_ms")) {
                report.wall_ms = j.at("wall_ms").get<double>();
                if (j.contains("parallel"))
                    report.config.parallel = j.at("parallel").get<int>();
                break;
            }
            report.records.push_back(record_from_json(j));
        }
    } catch (const json::exception& e) {
        throw ReportIoError(std::string("malformed report content: ") + e.what());
    }
    return report;
}

} // namespace qcomm
