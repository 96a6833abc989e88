#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kiselman/core.hpp"

namespace kiselman {

// ------------------------------------------------------ partial products

// A generator sequence x_1, x_2, ...: either a preamble followed by a cycle
// repeated forever, or a finite explicit prefix.
class SequenceSpec {
 public:
  static SequenceSpec periodic(Word preamble, Word cycle);
  static SequenceSpec finite(Word prefix);

  unsigned rank() const noexcept { return preamble_.rank(); }
  bool is_periodic() const noexcept { return periodic_; }
  const Word& preamble() const noexcept { return preamble_; }
  const Word& cycle() const noexcept { return cycle_; }
  // Number of available letters; nullopt for periodic sequences.
  std::optional<std::size_t> length() const;
  // x_j, 1-based.
  Letter at(std::size_t j) const;

  // Indices occurring anywhere in the sequence.
  IndexSet letters_used() const;
  // Indices occurring infinitely often (the cycle's letters; empty for a
  // finite prefix).
  IndexSet letters_recurring() const;

 private:
  SequenceSpec(Word preamble, Word cycle, bool periodic)
      : preamble_(std::move(preamble)),
        cycle_(std::move(cycle)),
        periodic_(periodic) {}

  Word preamble_;
  Word cycle_;
  bool periodic_;
};

enum class StabilityStatus { stable, not_yet_stable };

struct PartialProductTrace {
  // s_0 = e, s_1, ..., up to the step at which the run stopped.
  std::vector<Element> products;
  StabilityStatus status = StabilityStatus::not_yet_stable;
  // Last index at which the product changed; s_m = s_{m0} for every observed
  // m >= m0.
  std::size_t m0 = 0;

  const Element& value() const { return products.back(); }
};

// Runs up to `horizon` steps. A periodic run is certified stable once the
// product survives |cycle| consecutive steps of the periodic part unchanged
// (it then absorbs every letter that can follow). Any run reaching the zero
// is certified too.
PartialProductTrace partial_products(const SequenceSpec& seq,
                                     std::size_t horizon);

// e_M for a periodic spec whose preamble letters all recur. Throws
// PreconditionViolation otherwise; iterate with partial_products instead.
Element eventual_value(const SequenceSpec& seq);

// ------------------------------------------------------------ level chain

inline constexpr double kProbabilityTolerance = 1e-12;

// p_1..p_n: the law of a single random generator.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> p);
  static ProbabilityVector uniform(unsigned rank);

  unsigned rank() const noexcept { return static_cast<unsigned>(p_.size()); }
  // p_i, 1-based.
  double p(unsigned i) const { return p_.at(i - 1); }
  double q(unsigned i) const { return 1.0 - p(i); }
  const std::vector<double>& values() const noexcept { return p_; }
  bool strictly_positive() const noexcept;

  // Throws PreconditionViolation unless every p_i > 0.
  void require_positive() const;

 private:
  std::vector<double> p_;
};

// States 0..n of the level process.
struct TransitionMatrix {
  unsigned rank = 0;
  // (rank + 1) x (rank + 1), row-major.
  std::vector<double> entries;
  // Initial law: all mass on state n.
  std::vector<double> initial;

  double at(unsigned from, unsigned to) const {
    return entries[std::size_t{from} * (rank + 1) + to];
  }
};

TransitionMatrix transition_matrix(const ProbabilityVector& p);

// Distribution over states after `steps` steps: initial * P^steps.
std::vector<double> chain_distribution(const TransitionMatrix& P,
                                       std::size_t steps);

// P(T <= k) = (initial * P^k)_0 for k = 0..k_max.
std::vector<double> chain_absorption_cdf(const TransitionMatrix& P,
                                         std::size_t k_max);

// Expected steps to absorption from each state, by solving (I - Q) t = 1 on
// the transient states. Requires every p_i > 0.
std::vector<double> expected_absorption_times(const TransitionMatrix& P);

inline constexpr double kDefaultTailMass = 1e-9;

// Smallest k with P(T > k) < tail_mass.
std::size_t default_k_max(const ProbabilityVector& p,
                          double tail_mass = kDefaultTailMass);

struct HittingTimePMF {
  unsigned rank = 0;
  std::vector<double> p;
  // mass[k] = P(T = k) for k = 0..k_max.
  std::vector<double> mass;
  // P(T > k_max).
  double tail = 0.0;

  std::size_t k_max() const noexcept { return mass.size() - 1; }
  double cdf(std::size_t k) const;
  // Sum of k * P(T = k) over the truncated support.
  double truncated_mean() const;
};

// Convolution of the n geometric laws P(V_i = k) = q_i^{k-1} p_i, truncated
// at k_max (default_k_max when omitted). Throws PreconditionViolation if some
// p_i = 0.
HittingTimePMF exact_hitting_pmf(const ProbabilityVector& p,
                                 std::optional<std::size_t> k_max = {});

// E[T] recovered from a truncated pmf: the truncated mean plus the exact
// contribution of {T > k_max} computed from the chain.
double pmf_mean_with_tail_correction(const HittingTimePMF& pmf);

// ----------------------------------------------------------- Monte Carlo

enum class SimulationMode {
  level_only,  // track L_j only
  full,        // also track P_j and check L_j = level(P_j) at every step
  sampled,     // full tracking on every `sample_every`-th trial
};

std::string_view to_string(SimulationMode mode);
SimulationMode parse_simulation_mode(std::string_view text);

struct SimulationOptions {
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  SimulationMode mode = SimulationMode::full;
  unsigned threads = 1;
  std::uint64_t step_budget = 1'000'000;
  std::size_t sample_every = 100;
};

struct SimulationReport {
  unsigned rank = 0;
  std::vector<double> p;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  SimulationMode mode = SimulationMode::level_only;
  std::string rng;

  std::vector<std::uint32_t> hitting_times;
  // histogram[k] = number of trials with T = k.
  std::vector<std::uint64_t> histogram;
  double mean = 0.0;
  // Unbiased sample variance.
  double variance = 0.0;

  // Per state i: steps taken from i, and how many of them went to i - 1.
  std::vector<std::uint64_t> visits;
  std::vector<std::uint64_t> descents;

  std::size_t cross_checked_trials = 0;
  std::size_t cross_check_failures = 0;

  double standard_error() const;
};

// Fills histogram, mean and variance of `report` from its hitting_times.
void summarize_hitting_times(SimulationReport& report);

// Deterministic in (p, options) minus `threads`: the report is identical for
// any thread count. Throws BudgetExceeded when a trial runs past
// step_budget.
SimulationReport simulate(const ProbabilityVector& p,
                          const SimulationOptions& options);

struct VerificationConfig {
  double tv_bound = 0.01;
  double p_value_floor = 1e-3;
  double min_expected = 5.0;
};

struct Verdict {
  double total_variation = 0.0;
  double chi_square = 0.0;
  std::size_t bins = 0;
  double p_value = 0.0;
  bool tv_ok = false;
  bool chi_square_ok = false;
  bool pass = false;
};

// Total variation distance between the empirical histogram and the pmf
// (observations past k_max pooled against the tail mass) and a chi-square
// goodness-of-fit test over adjacent bins merged until each expects at
// least min_expected counts. Throws PreconditionViolation when fewer than
// two bins can be formed.
Verdict verify_distribution(const SimulationReport& report,
                            const HittingTimePMF& pmf,
                            const VerificationConfig& config = {});

}  // namespace kiselman
