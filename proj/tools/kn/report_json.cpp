#include "kn/report_json.hpp"

#include <numeric>

#include "kiselman/errors.hpp"

namespace kiselman::cli {

Json report_to_json(const SimulationReport& report, const Verdict& verdict,
                    const VerificationConfig& config) {
  const double expected_mean = std::accumulate(
      report.p.begin(), report.p.end(), 0.0,
      [](double acc, double pi) { return acc + 1.0 / pi; });
  const double se = report.standard_error();

  Json transitions = Json::array();
  for (unsigned i = 1; i <= report.rank; ++i) {
    Json row;
    row["state"] = i;
    row["visits"] = report.visits[i];
    row["descents"] = report.descents[i];
    row["frequency"] =
        report.visits[i] > 0
            ? static_cast<double>(report.descents[i]) / report.visits[i]
            : 0.0;
    row["p"] = report.p[i - 1];
    transitions.push_back(std::move(row));
  }

  Json j;
  j["n"] = report.rank;
  j["p"] = report.p;
  j["seed"] = report.seed;
  j["trials"] = report.trials;
  j["mode"] = std::string(to_string(report.mode));
  j["rng"] = report.rng;
  j["histogram"] = report.histogram;
  j["mean"] = report.mean;
  j["variance"] = report.variance;
  j["standard_error"] = se;
  j["expected_mean"] = expected_mean;
  j["mean_within_3se"] = std::abs(report.mean - expected_mean) <= 3.0 * se;
  j["transitions"] = std::move(transitions);
  j["cross_checked_trials"] = report.cross_checked_trials;
  j["cross_check_failures"] = report.cross_check_failures;
  j["tv_vs_exact"] = verdict.total_variation;
  j["tv_bound"] = config.tv_bound;
  j["chi_square"] = verdict.chi_square;
  j["chi_square_bins"] = verdict.bins;
  j["chi_square_p_value"] = verdict.p_value;
  j["p_value_floor"] = config.p_value_floor;
  j["pass"] = verdict.pass && report.cross_check_failures == 0;
  return j;
}

SimulationReport report_from_json(const Json& j) {
  try {
    SimulationReport r;
    r.rank = j.at("n").get<unsigned>();
    r.p = j.at("p").get<std::vector<double>>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.mode = parse_simulation_mode(j.at("mode").get<std::string>());
    r.rng = j.value("rng", std::string{});
    r.histogram = j.at("histogram").get<std::vector<std::uint64_t>>();
    r.trials = std::accumulate(r.histogram.begin(), r.histogram.end(),
                               std::size_t{0});
    if (j.contains("trials") && j.at("trials").get<std::size_t>() != r.trials) {
      throw MalformedInput("report: histogram total does not match trials");
    }
    if (r.p.size() != r.rank) {
      throw MalformedInput("report: p has the wrong length");
    }
    r.mean = j.value("mean", 0.0);
    r.variance = j.value("variance", 0.0);
    r.cross_checked_trials = j.value("cross_checked_trials", std::size_t{0});
    r.cross_check_failures = j.value("cross_check_failures", std::size_t{0});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("report: ") + e.what());
  }
}

}  // namespace kiselman::cli
