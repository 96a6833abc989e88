#include "kiselman/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

#include "kiselman/errors.hpp"
#include "kiselman/level_metric.hpp"
#include "kiselman/rng.hpp"

namespace kiselman {

// ------------------------------------------------------ partial products

SequenceSpec SequenceSpec::periodic(Word preamble, Word cycle) {
  if (preamble.rank() != cycle.rank()) {
    throw RankMismatch(preamble.rank(), cycle.rank());
  }
  if (cycle.empty()) {
    throw MalformedInput("periodic sequence needs a nonempty cycle");
  }
  return SequenceSpec(std::move(preamble), std::move(cycle), true);
}

SequenceSpec SequenceSpec::finite(Word prefix) {
  Word none(prefix.rank());
  return SequenceSpec(std::move(prefix), std::move(none), false);
}

std::optional<std::size_t> SequenceSpec::length() const {
  if (periodic_) return std::nullopt;
  return preamble_.size();
}

Letter SequenceSpec::at(std::size_t j) const {
  if (j == 0) throw MalformedInput("sequence positions are 1-based");
  if (j <= preamble_.size()) return preamble_[j - 1];
  if (!periodic_) throw MalformedInput("position past the end of the prefix");
  return cycle_[(j - preamble_.size() - 1) % cycle_.size()];
}

IndexSet SequenceSpec::letters_used() const {
  return content(preamble_) | content(cycle_);
}

IndexSet SequenceSpec::letters_recurring() const { return content(cycle_); }

PartialProductTrace partial_products(const SequenceSpec& seq,
                                     std::size_t horizon) {
  if (horizon < 1) throw MalformedInput("horizon must be at least 1");
  const unsigned n = seq.rank();
  const Element f = Element::zero(n);
  PartialProductTrace trace;
  trace.products.push_back(Element::unit(n));

  std::size_t steps = horizon;
  if (auto len = seq.length()) steps = std::min(steps, *len);
  std::size_t unchanged = 0;
  for (std::size_t j = 1; j <= steps; ++j) {
    Element next = multiply(trace.products.back(), seq.at(j));
    const bool changed = next != trace.products.back();
    trace.products.push_back(std::move(next));
    if (changed) {
      trace.m0 = j;
      unchanged = 0;
    } else if (j > seq.preamble().size()) {
      ++unchanged;
    }
    if (trace.products.back() == f ||
        (seq.is_periodic() && unchanged >= seq.cycle().size())) {
      trace.status = StabilityStatus::stable;
      break;
    }
  }
  return trace;
}

Element eventual_value(const SequenceSpec& seq) {
  if (!seq.is_periodic()) {
    throw PreconditionViolation("eventual_value needs a periodic sequence");
  }
  const IndexSet used = seq.letters_used();
  if (used != seq.letters_recurring()) {
    throw PreconditionViolation(
        "preamble uses letters {" + (used - seq.letters_recurring()).to_string() +
        "} that do not recur; iterate partial products instead");
  }
  return idempotent(used);
}

// ------------------------------------------------------------ level chain

ProbabilityVector::ProbabilityVector(std::vector<double> p) : p_(std::move(p)) {
  check_rank(static_cast<unsigned>(std::min<std::size_t>(p_.size(), 1000)));
  double sum = 0.0;
  for (double v : p_) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw MalformedInput("probabilities must lie in [0, 1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw MalformedInput("probabilities must sum to 1");
  }
}

ProbabilityVector ProbabilityVector::uniform(unsigned rank) {
  check_rank(rank);
  return ProbabilityVector(std::vector<double>(rank, 1.0 / rank));
}

bool ProbabilityVector::strictly_positive() const noexcept {
  return std::all_of(p_.begin(), p_.end(), [](double v) { return v > 0.0; });
}

void ProbabilityVector::require_positive() const {
  if (!strictly_positive()) {
    throw PreconditionViolation(
        "every p_i must be positive, otherwise the zero is not reached almost "
        "surely");
  }
}

TransitionMatrix transition_matrix(const ProbabilityVector& p) {
  const unsigned n = p.rank();
  TransitionMatrix P;
  P.rank = n;
  P.entries.assign(std::size_t{n + 1} * (n + 1), 0.0);
  auto cell = [&](unsigned i, unsigned j) -> double& {
    return P.entries[std::size_t{i} * (n + 1) + j];
  };
  cell(0, 0) = 1.0;
  for (unsigned i = 1; i <= n; ++i) {
    cell(i, i - 1) = p.p(i);
    cell(i, i) = p.q(i);
  }
  P.initial.assign(n + 1, 0.0);
  P.initial[n] = 1.0;
  return P;
}

namespace {

std::vector<double> step(const TransitionMatrix& P,
                         const std::vector<double>& dist) {
  const unsigned n = P.rank;
  std::vector<double> next(n + 1, 0.0);
  for (unsigned i = 0; i <= n; ++i) {
    if (dist[i] == 0.0) continue;
    for (unsigned j = 0; j <= n; ++j) next[j] += dist[i] * P.at(i, j);
  }
  return next;
}

double transient_mass(const std::vector<double>& dist) {
  return std::accumulate(dist.begin() + 1, dist.end(), 0.0);
}

}  // namespace

std::vector<double> chain_distribution(const TransitionMatrix& P,
                                       std::size_t steps) {
  std::vector<double> dist = P.initial;
  for (std::size_t k = 0; k < steps; ++k) dist = step(P, dist);
  return dist;
}

std::vector<double> chain_absorption_cdf(const TransitionMatrix& P,
                                         std::size_t k_max) {
  std::vector<double> cdf;
  cdf.reserve(k_max + 1);
  std::vector<double> dist = P.initial;
  cdf.push_back(dist[0]);
  for (std::size_t k = 1; k <= k_max; ++k) {
    dist = step(P, dist);
    cdf.push_back(dist[0]);
  }
  return cdf;
}

std::vector<double> expected_absorption_times(const TransitionMatrix& P) {
  const unsigned n = P.rank;
  // Augmented system (I - Q | 1) over transient states 1..n.
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (unsigned r = 0; r < n; ++r) {
    for (unsigned c = 0; c < n; ++c) {
      a[r][c] = (r == c ? 1.0 : 0.0) - P.at(r + 1, c + 1);
    }
    a[r][n] = 1.0;
  }
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = col;
    for (unsigned r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0.0) {
      throw PreconditionViolation(
          "absorption is not certain: some transient state never leaves");
    }
    std::swap(a[col], a[pivot]);
    for (unsigned r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double factor = a[r][col] / a[col][col];
      for (unsigned c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  std::vector<double> t(n + 1, 0.0);
  for (unsigned r = 0; r < n; ++r) t[r + 1] = a[r][n] / a[r][r];
  return t;
}

std::size_t default_k_max(const ProbabilityVector& p, double tail_mass) {
  p.require_positive();
  const TransitionMatrix P = transition_matrix(p);
  constexpr std::size_t kLimit = 100'000'000;
  std::vector<double> dist = P.initial;
  for (std::size_t k = 0; k < kLimit; ++k) {
    if (transient_mass(dist) < tail_mass) return k;
    dist = step(P, dist);
  }
  throw BudgetExceeded("default_k_max: tail does not fall below " +
                       std::to_string(tail_mass));
}

double HittingTimePMF::cdf(std::size_t k) const {
  k = std::min(k, k_max());
  return std::accumulate(mass.begin(), mass.begin() + k + 1, 0.0);
}

double HittingTimePMF::truncated_mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < mass.size(); ++k) m += k * mass[k];
  return m;
}

HittingTimePMF exact_hitting_pmf(const ProbabilityVector& p,
                                 std::optional<std::size_t> k_max) {
  p.require_positive();
  const std::size_t K = k_max ? *k_max : default_k_max(p);
  HittingTimePMF out;
  out.rank = p.rank();
  out.p = p.values();

  // Start from the point mass at 0 and convolve with each geometric law.
  // h = f * Geom(p) satisfies h(k) = q h(k-1) + p f(k-1).
  std::vector<double> f(K + 1, 0.0);
  f[0] = 1.0;
  std::vector<double> h(K + 1, 0.0);
  for (unsigned i = 1; i <= p.rank(); ++i) {
    const double pi = p.p(i);
    const double qi = p.q(i);
    h[0] = 0.0;
    for (std::size_t k = 1; k <= K; ++k) h[k] = qi * h[k - 1] + pi * f[k - 1];
    std::swap(f, h);
  }
  out.mass = std::move(f);
  out.tail = std::max(0.0, 1.0 - std::accumulate(out.mass.begin(),
                                                 out.mass.end(), 0.0));
  return out;
}

double pmf_mean_with_tail_correction(const HittingTimePMF& pmf) {
  const ProbabilityVector p(pmf.p);
  const TransitionMatrix P = transition_matrix(p);
  const std::vector<double> t = expected_absorption_times(P);
  const std::vector<double> dist = chain_distribution(P, pmf.k_max());
  // E[T; T > K] = sum over transient i of P(L_K = i) (K + E_i[T]).
  double correction = 0.0;
  const auto K = static_cast<double>(pmf.k_max());
  for (unsigned i = 1; i <= pmf.rank; ++i) correction += dist[i] * (K + t[i]);
  return pmf.truncated_mean() + correction;
}

// ----------------------------------------------------------- Monte Carlo

std::string_view to_string(SimulationMode mode) {
  switch (mode) {
    case SimulationMode::level_only:
      return "level";
    case SimulationMode::full:
      return "full";
    case SimulationMode::sampled:
      return "sampled";
  }
  return "?";
}

SimulationMode parse_simulation_mode(std::string_view text) {
  if (text == "level" || text == "level-only") return SimulationMode::level_only;
  if (text == "full") return SimulationMode::full;
  if (text == "sampled") return SimulationMode::sampled;
  throw MalformedInput("unknown simulation mode '" + std::string(text) + "'");
}

double SimulationReport::standard_error() const {
  return trials > 0 ? std::sqrt(variance / static_cast<double>(trials)) : 0.0;
}

void summarize_hitting_times(SimulationReport& report) {
  report.trials = report.hitting_times.size();
  const std::uint32_t max_t =
      report.hitting_times.empty()
          ? 0
          : *std::max_element(report.hitting_times.begin(),
                              report.hitting_times.end());
  report.histogram.assign(std::size_t{max_t} + 1, 0);
  double sum = 0.0;
  for (auto t : report.hitting_times) {
    ++report.histogram[t];
    sum += t;
  }
  const double n = static_cast<double>(report.trials);
  report.mean = report.trials > 0 ? sum / n : 0.0;
  double ss = 0.0;
  for (auto t : report.hitting_times) {
    const double d = t - report.mean;
    ss += d * d;
  }
  report.variance = report.trials > 1 ? ss / (n - 1.0) : 0.0;
}

namespace {

struct ChunkStats {
  std::vector<std::uint64_t> visits;
  std::vector<std::uint64_t> descents;
  std::size_t checked = 0;
  std::size_t failures = 0;
};

class GeneratorSampler {
 public:
  explicit GeneratorSampler(const ProbabilityVector& p) {
    double acc = 0.0;
    for (unsigned i = 1; i <= p.rank(); ++i) {
      acc += p.p(i);
      cumulative_.push_back(acc);
      if (p.p(i) > 0.0) last_positive_ = i;
    }
  }

  unsigned draw(TrialRng& rng) const {
    const double u = rng.uniform();
    for (unsigned i = 0; i < cumulative_.size(); ++i) {
      if (u < cumulative_[i]) return i + 1;
    }
    // u landed in the rounding gap above the last partial sum.
    return last_positive_;
  }

 private:
  std::vector<double> cumulative_;
  unsigned last_positive_ = 1;
};

void run_trials(const ProbabilityVector& p, const SimulationOptions& opt,
                std::size_t begin, std::size_t end,
                std::vector<std::uint32_t>& hitting, ChunkStats& stats) {
  const unsigned n = p.rank();
  const GeneratorSampler sampler(p);
  const Element f = Element::zero(n);
  stats.visits.assign(n + 1, 0);
  stats.descents.assign(n + 1, 0);
  for (std::size_t t = begin; t < end; ++t) {
    TrialRng rng(opt.seed, t);
    const bool track =
        opt.mode == SimulationMode::full ||
        (opt.mode == SimulationMode::sampled && t % opt.sample_every == 0);
    Level level = n;
    Element product = Element::unit(n);
    std::uint64_t steps = 0;
    while (level != 0) {
      if (++steps > opt.step_budget) {
        throw BudgetExceeded("trial " + std::to_string(t) + " exceeded " +
                             std::to_string(opt.step_budget) + " steps");
      }
      const unsigned i = sampler.draw(rng);
      const Level next = g(level, i);
      ++stats.visits[level];
      if (next != level) ++stats.descents[level];
      level = next;
      if (track) {
        product = multiply(product, i);
        if (level_by_definition(product) != level ||
            (product == f) != (level == 0)) {
          ++stats.failures;
        }
      }
    }
    if (track) ++stats.checked;
    hitting[t] = static_cast<std::uint32_t>(steps);
  }
}

}  // namespace

SimulationReport simulate(const ProbabilityVector& p,
                          const SimulationOptions& options) {
  p.require_positive();
  if (options.trials < 1) throw MalformedInput("trials must be at least 1");
  if (options.sample_every < 1) {
    throw MalformedInput("sample_every must be at least 1");
  }
  SimulationReport report;
  report.rank = p.rank();
  report.p = p.values();
  report.seed = options.seed;
  report.mode = options.mode;
  report.rng = std::string(kRngName);
  report.hitting_times.assign(options.trials, 0);

  const unsigned threads = std::clamp<unsigned>(
      options.threads, 1,
      static_cast<unsigned>(std::min<std::size_t>(options.trials, 256)));
  std::vector<ChunkStats> stats(threads);
  std::vector<std::exception_ptr> errors(threads);
  auto chunk_begin = [&](unsigned c) {
    return options.trials * c / threads;
  };
  auto work = [&](unsigned c) {
    try {
      run_trials(p, options, chunk_begin(c), chunk_begin(c + 1),
                 report.hitting_times, stats[c]);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned c = 0; c < threads; ++c) pool.emplace_back(work, c);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  report.visits.assign(p.rank() + 1, 0);
  report.descents.assign(p.rank() + 1, 0);
  for (const ChunkStats& s : stats) {
    for (unsigned i = 0; i <= p.rank(); ++i) {
      report.visits[i] += s.visits[i];
      report.descents[i] += s.descents[i];
    }
    report.cross_checked_trials += s.checked;
    report.cross_check_failures += s.failures;
  }
  summarize_hitting_times(report);
  return report;
}

Verdict verify_distribution(const SimulationReport& report,
                            const HittingTimePMF& pmf,
                            const VerificationConfig& config) {
  if (report.trials == 0) {
    throw PreconditionViolation("report has no trials");
  }
  const double trials = static_cast<double>(report.trials);
  const std::size_t K = pmf.k_max();
  auto observed = [&](std::size_t k) -> double {
    return k < report.histogram.size()
               ? static_cast<double>(report.histogram[k])
               : 0.0;
  };
  double observed_tail = 0.0;
  for (std::size_t k = K + 1; k < report.histogram.size(); ++k) {
    observed_tail += static_cast<double>(report.histogram[k]);
  }

  Verdict v;
  double tv = std::abs(observed_tail / trials - pmf.tail);
  for (std::size_t k = 0; k <= K; ++k) {
    tv += std::abs(observed(k) / trials - pmf.mass[k]);
  }
  v.total_variation = 0.5 * tv;

  struct Bin {
    double expected = 0.0;
    double observed = 0.0;
  };
  std::vector<Bin> bins;
  Bin acc;
  for (std::size_t k = 0; k <= K; ++k) {
    acc.expected += trials * pmf.mass[k];
    acc.observed += observed(k);
    if (acc.expected >= config.min_expected) {
      bins.push_back(acc);
      acc = Bin{};
    }
  }
  acc.expected += trials * pmf.tail;
  acc.observed += observed_tail;
  if (acc.expected >= config.min_expected || bins.empty()) {
    bins.push_back(acc);
  } else {
    bins.back().expected += acc.expected;
    bins.back().observed += acc.observed;
  }
  if (bins.size() < 2) {
    throw PreconditionViolation(
        "too few trials: fewer than two bins reach the minimum expected count");
  }
  for (const Bin& b : bins) {
    if (b.expected > 0.0) {
      const double d = b.observed - b.expected;
      v.chi_square += d * d / b.expected;
    } else if (b.observed > 0.0) {
      v.chi_square = std::numeric_limits<double>::infinity();
    }
  }
  v.bins = bins.size();
  const double dof = static_cast<double>(bins.size() - 1);
  v.p_value = std::isfinite(v.chi_square)
                  ? boost::math::gamma_q(dof / 2.0, v.chi_square / 2.0)
                  : 0.0;
  v.tv_ok = v.total_variation < config.tv_bound;
  v.chi_square_ok = v.p_value > config.p_value_floor;
  v.pass = v.tv_ok && v.chi_square_ok;
  return v;
}

}  // namespace kiselman
