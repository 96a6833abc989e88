#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "kiselman/errors.hpp"
#include "kiselman/level_metric.hpp"
#include "kiselman/rng.hpp"
#include "kiselman/stochastic.hpp"
#include "support/generators.hpp"

namespace kiselman {
namespace {

using testing::Gen;

double sum_inverse(const ProbabilityVector& p) {
  double s = 0.0;
  for (double v : p.values()) s += 1.0 / v;
  return s;
}

TEST(PartialProducts, ConstantSequence) {
  const auto seq = SequenceSpec::periodic(Word(2), Word(2, {1}));
  const PartialProductTrace t = partial_products(seq, 50);
  EXPECT_EQ(t.status, StabilityStatus::stable);
  EXPECT_EQ(t.m0, 1U);
  EXPECT_EQ(t.value(), Element::generator(2, 1));
  EXPECT_EQ(t.products.front(), Element::unit(2));
}

TEST(PartialProducts, Examples) {
  const auto full = SequenceSpec::periodic(Word(3), Word(3, {1, 2, 3}));
  EXPECT_EQ(partial_products(full, 100).value(), Element::zero(3));
  EXPECT_EQ(eventual_value(full), Element::zero(3));

  const auto two = SequenceSpec::periodic(Word(3), Word(3, {1, 2}));
  const PartialProductTrace t = partial_products(two, 100);
  EXPECT_EQ(t.status, StabilityStatus::stable);
  EXPECT_EQ(t.value().canonical(), Word(3, {2, 1}));
  EXPECT_EQ(eventual_value(two), t.value());

  EXPECT_EQ(eventual_value(SequenceSpec::periodic(Word(4), Word(4, {3}))),
            Element::generator(4, 3));

  const auto pre = SequenceSpec::periodic(Word(3, {3}), Word(3, {3, 1}));
  EXPECT_EQ(partial_products(pre, 100).value().canonical(), Word(3, {3, 1}));
  EXPECT_EQ(eventual_value(pre), partial_products(pre, 100).value());
}

TEST(PartialProducts, ObservedProductsMatchDirectMultiplication) {
  const auto seq = SequenceSpec::periodic(Word(3, {2, 2}), Word(3, {3, 1, 1}));
  const PartialProductTrace t = partial_products(seq, 30);
  Element s = Element::unit(3);
  for (std::size_t j = 1; j < t.products.size(); ++j) {
    s = multiply(s, seq.at(j));
    ASSERT_EQ(t.products[j], s);
  }
  for (std::size_t j = t.m0; j < t.products.size(); ++j) {
    EXPECT_EQ(t.products[j], t.value());
  }
}

TEST(PartialProducts, FinitePrefix) {
  const auto seq = SequenceSpec::finite(Word(3, {1, 2}));
  const PartialProductTrace t = partial_products(seq, 100);
  EXPECT_EQ(t.status, StabilityStatus::not_yet_stable);
  EXPECT_EQ(t.value().canonical(), Word(3, {1, 2}));
  const auto hits_zero = SequenceSpec::finite(Word(2, {2, 1, 1}));
  EXPECT_EQ(partial_products(hits_zero, 100).status, StabilityStatus::stable);
  EXPECT_THROW(SequenceSpec::periodic(Word(2), Word(2)), MalformedInput);
}

TEST(PartialProducts, EventualValuePrecondition) {
  EXPECT_THROW(eventual_value(SequenceSpec::finite(Word(2, {1}))),
               PreconditionViolation);
  const auto seq = SequenceSpec::periodic(Word(3, {2}), Word(3, {1}));
  EXPECT_EQ(seq.letters_used(), IndexSet(3, {1, 2}));
  EXPECT_EQ(seq.letters_recurring(), IndexSet(3, {1}));
  EXPECT_THROW(eventual_value(seq), PreconditionViolation);
  EXPECT_EQ(partial_products(seq, 20).status, StabilityStatus::stable);
}

TEST(ProbabilityVector, Validation) {
  EXPECT_THROW(ProbabilityVector({0.5, 0.6}), MalformedInput);
  EXPECT_THROW(ProbabilityVector({-0.1, 1.1}), MalformedInput);
  const ProbabilityVector p({0.0, 1.0});
  EXPECT_FALSE(p.strictly_positive());
  EXPECT_THROW(p.require_positive(), PreconditionViolation);
  EXPECT_THROW(exact_hitting_pmf(p), PreconditionViolation);
  EXPECT_THROW(simulate(p, {}), PreconditionViolation);
}

TEST(Chain, TransitionMatrix) {
  const TransitionMatrix P = transition_matrix(ProbabilityVector({0.3, 0.7}));
  const std::vector<double> expected = {1, 0, 0, 0.3, 0.7, 0, 0, 0.7, 0.3};
  ASSERT_EQ(P.entries.size(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    EXPECT_NEAR(P.entries[k], expected[k], 1e-15);
  }
  EXPECT_EQ(P.initial, (std::vector<double>{0, 0, 1}));
  Gen gen(31);
  for (int t = 0; t < 20; ++t) {
    const unsigned n = gen.uniform(2, 6);
    const TransitionMatrix Q = transition_matrix(ProbabilityVector(gen.probabilities(n)));
    for (unsigned i = 0; i <= n; ++i) {
      double row = 0.0;
      for (unsigned j = 0; j <= n; ++j) row += Q.at(i, j);
      EXPECT_NEAR(row, 1.0, 1e-15);
    }
  }
}

TEST(Chain, DeterministicWhenNoStalls) {
  // All q_i = 0 is only possible at rank 1.
  const TransitionMatrix P = transition_matrix(ProbabilityVector({1.0}));
  EXPECT_EQ(chain_absorption_cdf(P, 3), (std::vector<double>{0, 1, 1, 1}));
}

TEST(Pmf, UniformRankTwo) {
  const HittingTimePMF pmf = exact_hitting_pmf(ProbabilityVector::uniform(2), 40);
  EXPECT_EQ(pmf.mass[0], 0.0);
  EXPECT_EQ(pmf.mass[1], 0.0);
  for (std::size_t k = 2; k <= 40; ++k) {
    EXPECT_NEAR(pmf.mass[k], double(k - 1) * std::ldexp(1.0, -int(k)), 1e-15);
  }
  EXPECT_NEAR(pmf.tail, 1.0 - pmf.cdf(40), 1e-15);
}

TEST(Pmf, ZeroBelowRank) {
  Gen gen(32);
  for (int t = 0; t < 20; ++t) {
    const unsigned n = gen.uniform(2, 5);
    const HittingTimePMF pmf = exact_hitting_pmf(ProbabilityVector(gen.probabilities(n)));
    for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(pmf.mass[k], 0.0);
    EXPECT_LT(pmf.tail, kDefaultTailMass);
    EXPECT_LE(std::accumulate(pmf.mass.begin(), pmf.mass.end(), 0.0),
              1.0 + 1e-12);
  }
}

TEST(Pmf, AgreesWithChain) {
  Gen gen(33);
  for (int t = 0; t < 40; ++t) {
    const unsigned n = gen.uniform(2, 5);
    const ProbabilityVector p(gen.probabilities(n));
    const HittingTimePMF pmf = exact_hitting_pmf(p);
    const std::vector<double> cdf =
        chain_absorption_cdf(transition_matrix(p), pmf.k_max());
    for (std::size_t k = 0; k <= pmf.k_max(); ++k) {
      ASSERT_NEAR(cdf[k], pmf.cdf(k), 1e-12);
    }
  }
}

TEST(Pmf, MeanIsSumOfInverses) {
  Gen gen(34);
  for (int t = 0; t < 40; ++t) {
    const unsigned n = gen.uniform(2, 5);
    const ProbabilityVector p(gen.probabilities(n));
    EXPECT_NEAR(pmf_mean_with_tail_correction(exact_hitting_pmf(p)),
                sum_inverse(p), 1e-9);
    // A short truncation still recovers the mean exactly.
    EXPECT_NEAR(pmf_mean_with_tail_correction(exact_hitting_pmf(p, n + 3)),
                sum_inverse(p), 1e-9);
  }
  const auto times = expected_absorption_times(
      transition_matrix(ProbabilityVector({0.2, 0.3, 0.5})));
  EXPECT_NEAR(times[3], 1 / 0.2 + 1 / 0.3 + 1 / 0.5, 1e-12);
}

TEST(Rng, SubstreamsAreStable) {
  static_assert(substream_seed(1, 0) != substream_seed(1, 1));
  static_assert(substream_seed(1, 0) != substream_seed(2, 0));
  TrialRng a(7, 3), b(7, 3);
  for (int k = 0; k < 10; ++k) {
    const double u = a.uniform();
    EXPECT_EQ(u, b.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

SimulationReport run(const ProbabilityVector& p, std::size_t trials,
                     std::uint64_t seed, SimulationMode mode,
                     unsigned threads = 1) {
  SimulationOptions o;
  o.trials = trials;
  o.seed = seed;
  o.mode = mode;
  o.threads = threads;
  return simulate(p, o);
}

TEST(Simulate, UniformRankTwoMean) {
  const SimulationReport r =
      run(ProbabilityVector::uniform(2), 100'000, 1, SimulationMode::full);
  EXPECT_EQ(r.cross_check_failures, 0U);
  EXPECT_EQ(r.cross_checked_trials, 100'000U);
  EXPECT_LT(std::abs(r.mean - 4.0), 3 * r.standard_error());
  const Verdict v =
      verify_distribution(r, exact_hitting_pmf(ProbabilityVector::uniform(2)));
  EXPECT_TRUE(v.pass) << "tv=" << v.total_variation << " p=" << v.p_value;
}

TEST(Simulate, SkewedRankThreeMean) {
  const ProbabilityVector p({0.2, 0.3, 0.5});
  const SimulationReport r = run(p, 100'000, 2, SimulationMode::full);
  EXPECT_EQ(r.cross_check_failures, 0U);
  EXPECT_LT(std::abs(r.mean - sum_inverse(p)), 3 * r.standard_error());
  EXPECT_TRUE(verify_distribution(r, exact_hitting_pmf(p)).pass);
}

TEST(Simulate, HistogramAndPaths) {
  const ProbabilityVector p({0.1, 0.2, 0.3, 0.4});
  const SimulationReport r = run(p, 20'000, 3, SimulationMode::sampled);
  EXPECT_EQ(r.cross_checked_trials, 200U);
  EXPECT_EQ(r.cross_check_failures, 0U);
  EXPECT_EQ(std::accumulate(r.histogram.begin(), r.histogram.end(),
                            std::uint64_t{0}),
            20'000U);
  for (std::size_t k = 0; k < 4 && k < r.histogram.size(); ++k) {
    EXPECT_EQ(r.histogram[k], 0U);
  }
  // Every trial visits each level exactly once on the way down.
  EXPECT_EQ(r.visits[0], 0U);
  for (unsigned i = 1; i <= 4; ++i) {
    EXPECT_EQ(r.descents[i], 20'000U);
    const double n = double(r.visits[i]);
    const double freq = double(r.descents[i]) / n;
    const double se = std::sqrt(p.p(i) * p.q(i) / n);
    EXPECT_LT(std::abs(freq - p.p(i)), 3 * se) << "state " << i;
  }
}

TEST(Simulate, ThreadCountDoesNotMatter) {
  const ProbabilityVector p({0.2, 0.3, 0.5});
  const SimulationReport one = run(p, 5'000, 9, SimulationMode::full, 1);
  const SimulationReport four = run(p, 5'000, 9, SimulationMode::full, 4);
  EXPECT_EQ(one.hitting_times, four.hitting_times);
  EXPECT_EQ(one.visits, four.visits);
  EXPECT_EQ(one.mean, four.mean);
  EXPECT_EQ(one.variance, four.variance);
  const SimulationReport other = run(p, 5'000, 10, SimulationMode::full, 1);
  EXPECT_NE(one.hitting_times, other.hitting_times);
  const SimulationReport level = run(p, 5'000, 9, SimulationMode::level_only);
  EXPECT_EQ(level.hitting_times, one.hitting_times);
  EXPECT_EQ(level.cross_checked_trials, 0U);
}

TEST(Simulate, StepBudget) {
  SimulationOptions o;
  o.trials = 10;
  o.seed = 1;
  o.step_budget = 100;
  EXPECT_THROW(simulate(ProbabilityVector({1e-9, 1.0 - 1e-9}), o),
               BudgetExceeded);
}

TEST(Simulate, Modes) {
  EXPECT_EQ(parse_simulation_mode("full"), SimulationMode::full);
  EXPECT_EQ(parse_simulation_mode("level"), SimulationMode::level_only);
  EXPECT_EQ(parse_simulation_mode("level-only"), SimulationMode::level_only);
  EXPECT_EQ(parse_simulation_mode("sampled"), SimulationMode::sampled);
  EXPECT_EQ(to_string(SimulationMode::level_only), "level");
  EXPECT_THROW(parse_simulation_mode("fast"), MalformedInput);
}

// Sample directly from the pmf by inverse CDF.
SimulationReport sample_from(const HittingTimePMF& pmf, std::size_t trials) {
  SimulationReport r;
  r.rank = pmf.rank;
  r.p = pmf.p;
  r.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    TrialRng rng(77, t);
    const double u = rng.uniform();
    std::size_t k = 0;
    while (k < pmf.k_max() && pmf.cdf(k) <= u) ++k;
    r.hitting_times.push_back(static_cast<std::uint32_t>(k));
  }
  summarize_hitting_times(r);
  return r;
}

TEST(Verify, SelfConsistentSamplePasses) {
  const HittingTimePMF pmf = exact_hitting_pmf(ProbabilityVector({0.2, 0.3, 0.5}));
  const Verdict v = verify_distribution(sample_from(pmf, 50'000), pmf);
  EXPECT_TRUE(v.pass);
  EXPECT_GE(v.bins, 10U);
}

TEST(Verify, WrongPmfFails) {
  const SimulationReport r =
      run(ProbabilityVector::uniform(2), 100'000, 4, SimulationMode::level_only);
  const Verdict v =
      verify_distribution(r, exact_hitting_pmf(ProbabilityVector::uniform(3)));
  EXPECT_FALSE(v.pass);
  EXPECT_FALSE(v.tv_ok);
  EXPECT_FALSE(v.chi_square_ok);
}

TEST(Verify, TooFewTrials) {
  const SimulationReport r =
      run(ProbabilityVector::uniform(2), 1, 5, SimulationMode::level_only);
  EXPECT_THROW(
      verify_distribution(r, exact_hitting_pmf(ProbabilityVector::uniform(2))),
      PreconditionViolation);
}

}  // namespace
}  // namespace kiselman
