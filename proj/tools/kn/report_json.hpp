#pragma once

#include "json.hpp"

#include "kiselman/stochastic.hpp"

namespace kiselman::cli {

using Json = nlohmann::ordered_json;

// The simulate/verify report file. Per-trial hitting times are summarised
// by the histogram and not written out.
Json report_to_json(const SimulationReport& report, const Verdict& verdict,
                    const VerificationConfig& config);

// Reads back rank, p, seed, trials, mode and histogram; enough to re-run
// verify_distribution against a freshly computed pmf.
SimulationReport report_from_json(const Json& j);

}  // namespace kiselman::cli
