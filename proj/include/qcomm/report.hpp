#pragma once

#include <filesystem>
#include <string>

#include "qcomm/suite.hpp"

namespace qcomm {

/// The deterministic report section: one header object plus one
/// line-delimited record per trial. Everything here is a pure function of
/// (config, suite, version); wall-clock timing is excluded.
std::string deterministic_payload(const VerificationReport& report);

/// Writes the deterministic section followed by a timing line. On failure the
/// partial file is removed and ReportIoError is thrown.
void emit_report(const VerificationReport& report, const std::filesystem::path& path);

/// Re-reads an emitted report. Aggregates come back as written; compare with
/// recompute_aggregate(records) to confirm they are consistent.
VerificationReport read_report(const std::filesystem::path& path);

} // namespace qcomm
