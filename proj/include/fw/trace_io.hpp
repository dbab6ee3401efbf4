#pragma once

#include <string>
#include <vector>

#include "fw/checks.hpp"
#include "fw/solver.hpp"

#include "json.hpp"

namespace fw {

/// CSV schema "fw-trace v1": one row per iterate with the fixed columns
/// k, f, gap_exact, gap_approx, step, grad_norm, slack_onestep, beta.
std::string trace_to_csv(const IterateTrace& trace);

nlohmann::json trace_summary_json(const IterateTrace& trace);
nlohmann::json checks_json(const std::vector<CheckResult>& checks);

/// Writes via a temporary file and rename, so readers never see a torn file.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace fw
