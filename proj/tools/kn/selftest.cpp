#include "kn/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "kiselman/kiselman.hpp"

namespace kiselman::cli {

namespace {

// A law body returns the first counterexample it finds, or "" if none.
using Body = std::function<std::string(unsigned n)>;

class Runner {
 public:
  Runner(unsigned max_rank, std::uint64_t seed) : max_rank_(max_rank), seed_(seed) {
    for (unsigned n = 1; n <= max_rank; ++n) universe_[n] = enumerate(n);
  }

  const ElementList& universe(unsigned n) { return universe_.at(n); }
  std::mt19937_64 rng(unsigned salt) const { return std::mt19937_64(seed_ ^ salt); }

  void law(std::string law, const Body& body) {
    LawResult r{std::move(law), fmt::format("ranks 2..{}", max_rank_), true, {}};
    for (unsigned n = 2; n <= max_rank_ && r.pass; ++n) {
      std::string cx = body(n);
      if (!cx.empty()) {
        r.pass = false;
        r.detail = fmt::format("n={}: {}", n, cx);
      }
    }
    results_.push_back(std::move(r));
  }

  std::vector<LawResult> take() { return std::move(results_); }

 private:
  unsigned max_rank_;
  std::uint64_t seed_;
  std::map<unsigned, ElementList> universe_;
  std::vector<LawResult> results_;
};

std::string show(const Element& x) { return "[" + x.to_string() + "]"; }

Element e_upper(unsigned n, unsigned i) {
  return idempotent(IndexSet::full(n) - IndexSet::prefix(n, i));
}

Element e_prefix(unsigned n, unsigned i) {
  return idempotent(IndexSet::prefix(n, i));
}

Element cut(unsigned n, unsigned i, const Element& x) {
  return delete_indices(IndexSet::prefix(n, i), x);
}

std::vector<Word> all_words(unsigned n, unsigned max_len) {
  std::vector<Word> out{Word(n)};
  std::vector<Word> layer{Word(n)};
  for (unsigned l = 1; l <= max_len; ++l) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      for (unsigned i = 1; i <= n; ++i) next.push_back(w + Word(n, {i}));
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<LawResult> run_selftest(unsigned max_rank, std::uint64_t seed) {
  Runner R(max_rank, seed);

  R.law("reduce(u) = reduce(v) <=> u ~ v under a_i^2 = a_i, a_i a_j a_i = a_j a_i a_j = a_i a_j",
        [&](unsigned n) -> std::string {
          if (n > 3) return "";
          const unsigned len = n == 2 ? 6 : 8;
          const CongruencePartition oracle = congruence_oracle(n, len, 2);
          std::map<std::uint32_t, Element> by_class;
          std::map<Element, std::uint32_t> by_element;
          for (std::size_t i = 0; i < oracle.words.size(); ++i) {
            const Element x = reduce(oracle.words[i]);
            auto [it1, fresh1] = by_class.emplace(oracle.class_of[i], x);
            auto [it2, fresh2] = by_element.emplace(x, oracle.class_of[i]);
            if (it1->second != x || it2->second != oracle.class_of[i]) {
              return "word " + oracle.words[i].to_string();
            }
          }
          return "";
        });

  R.law("{e_X : X subset [n]} = {x : x x = x}", [&](unsigned n) -> std::string {
    std::vector<Element> ids;
    for (const auto& X : IndexSet::all_subsets(n)) ids.push_back(idempotent(X));
    std::sort(ids.begin(), ids.end());
    std::vector<Element> found;
    for (const auto& x : R.universe(n).elements) {
      if (x * x == x) found.push_back(x);
    }
    return ids == found ? "" : "idempotent sets differ";
  });

  R.law("c(x y) = c(x) u c(y)", [&](unsigned n) -> std::string {
    for (const auto& x : R.universe(n).elements) {
      for (const auto& y : R.universe(n).elements) {
        if (content(x * y) != (content(x) | content(y))) return show(x) + show(y);
      }
    }
    return "";
  });

  R.law("x^k = e_c(x) for k >= |c(x)|", [&](unsigned n) -> std::string {
    for (const auto& x : R.universe(n).elements) {
      const auto c = static_cast<unsigned>(content(x).size());
      for (unsigned k = std::max(c, 1U); k <= c + 2; ++k) {
        if (power(x, k) != idempotent(content(x))) return show(x);
      }
    }
    return "";
  });

  R.law("tau(x y) = tau(y) tau(x), tau(tau(x)) = x", [&](unsigned n) -> std::string {
    for (const auto& x : R.universe(n).elements) {
      if (tau(tau(x)) != x) return show(x);
      for (const auto& y : R.universe(n).elements) {
        if (tau(x * y) != tau(y) * tau(x)) return show(x) + show(y);
      }
    }
    return "";
  });

  R.law("I_X I_Y = I_(X n Y); D_n closed under product", [&](unsigned n) -> std::string {
    const auto subsets = IndexSet::all_subsets(n);
    for (const auto& X : subsets) {
      for (const auto& Y : subsets) {
        const BoolMatrix prod = dn_product(BoolMatrix::diagonal(X), BoolMatrix::diagonal(Y));
        if (prod != BoolMatrix::diagonal(X & Y) || !dn_member(prod)) {
          return "X={" + X.to_string() + "} Y={" + Y.to_string() + "}";
        }
      }
    }
    return "";
  });

  R.law("del_X(phi(w)) = phi(del_X(w)) = Theta^-1(I_X^c)(phi(w))", [&](unsigned n) -> std::string {
    const auto words = all_words(n, n == 2 ? 6 : 5);
    for (const auto& X : IndexSet::all_subsets(n)) {
      const EndomorphismSpec psi = deletion_matrix(X);
      for (const auto& w : words) {
        const Element lhs = delete_indices(X, reduce(w));
        if (lhs != reduce(word_delete(X, w)) ||
            lhs != apply_endomorphism(psi, reduce(w))) {
          return "w=" + w.to_string() + " X={" + X.to_string() + "}";
        }
      }
    }
    return "";
  });

  R.law("del_X(e_Y) = e_(Y \\ X)", [&](unsigned n) -> std::string {
    for (const auto& X : IndexSet::all_subsets(n)) {
      for (const auto& Y : IndexSet::all_subsets(n)) {
        if (delete_indices(X, idempotent(Y)) != idempotent(Y - X)) {
          return "X={" + X.to_string() + "} Y={" + Y.to_string() + "}";
        }
      }
    }
    return "";
  });

  R.law("del_(X u Y) = del_X del_Y = del_Y del_X", [&](unsigned n) -> std::string {
    const auto subsets = IndexSet::all_subsets(n);
    for (const auto& x : R.universe(n).elements) {
      for (const auto& X : subsets) {
        for (const auto& Y : subsets) {
          const Element both = delete_indices(X | Y, x);
          if (delete_indices(X, delete_indices(Y, x)) != both ||
              delete_indices(Y, delete_indices(X, x)) != both) {
            return show(x);
          }
        }
      }
    }
    return "";
  });

  R.law("del_[m](x) = e_([n]\\[m]) => del_[m+r](x) = e_([n]\\[m+r])", [&](unsigned n) -> std::string {
    for (const auto& x : R.universe(n).elements) {
      for (unsigned m = 0; m <= n; ++m) {
        if (cut(n, m, x) != e_upper(n, m)) continue;
        for (unsigned k = m; k <= n; ++k) {
          if (cut(n, k, x) != e_upper(n, k)) return show(x);
        }
      }
    }
    return "";
  });

  R.law("del_[m-1](x) a_m = del_[m](x) a_m", [&](unsigned n) -> std::string {
    for (const auto& x : R.universe(n).elements) {
      for (unsigned m = 1; m <= n; ++m) {
        if (multiply(cut(n, m - 1, x), m) != multiply(cut(n, m, x), m)) return show(x);
      }
    }
    return "";
  });

  R.law("x e_[i] = del_[j](x) e_[i] for j <= i", [&](unsigned n) -> std::string {
    for (const auto& x : R.universe(n).elements) {
      for (unsigned i = 0; i <= n; ++i) {
        for (unsigned j = 0; j <= i; ++j) {
          if (x * e_prefix(n, i) != cut(n, j, x) * e_prefix(n, i)) return show(x);
        }
      }
    }
    return "";
  });

  R.law("del_[m](x) = e_([n]\\[m]) => del_[m-1](x a_m) = e_([n]\\[m-1])", [&](unsigned n) -> std::string {
    for (const auto& x : R.universe(n).elements) {
      for (unsigned m = 1; m <= n; ++m) {
        if (cut(n, m, x) == e_upper(n, m) &&
            cut(n, m - 1, multiply(x, m)) != e_upper(n, m - 1)) {
          return show(x);
        }
      }
    }
    return "";
  });

  R.law("del_[m](x a_(m+k)) or del_[m](a_(m+r) x) = e_([n]\\[m]) => del_[m](x) = e_([n]\\[m])",
        [&](unsigned n) -> std::string {
          for (const auto& x : R.universe(n).elements) {
            for (unsigned m = 0; m + 2 <= n; ++m) {
              for (unsigned k = 2; k <= n - m; ++k) {
                if (cut(n, m, multiply(x, m + k)) == e_upper(n, m) &&
                    cut(n, m, x) != e_upper(n, m)) {
                  return show(x);
                }
              }
              for (unsigned r = 1; r + m + 1 <= n; ++r) {
                if (cut(n, m, Element::generator(n, m + r) * x) == e_upper(n, m) &&
                    cut(n, m, x) != e_upper(n, m)) {
                  return show(x);
                }
              }
            }
          }
          return "";
        });

  R.law("x a_k = f (k >= 2) or a_r x = f (r <= n-1) => x = f", [&](unsigned n) -> std::string {
    const Element f = Element::zero(n);
    for (const auto& x : R.universe(n).elements) {
      if (x == f) continue;
      for (unsigned k = 2; k <= n; ++k) {
        if (multiply(x, k) == f) return show(x);
      }
      for (unsigned r = 1; r < n; ++r) {
        if (Element::generator(n, r) * x == f) return show(x);
      }
    }
    return "";
  });

  R.law("L(x) = 0 <=> x = f; L(x) = n <=> c(x) subset [n-1]", [&](unsigned n) -> std::string {
    const Element f = Element::zero(n);
    const IndexSet lower = IndexSet::prefix(n, n - 1);
    for (const auto& x : R.universe(n).elements) {
      const Level l = level_by_definition(x);
      if ((l == 0) != (x == f)) return show(x);
      if ((l == n) != content(x).subset_of(lower)) return show(x);
    }
    return "";
  });

  R.law("L(x y) <= min(L(x), L(y))", [&](unsigned n) -> std::string {
    for (const auto& x : R.universe(n).elements) {
      for (const auto& y : R.universe(n).elements) {
        if (level_by_definition(x * y) >
            std::min(level_by_definition(x), level_by_definition(y))) {
          return show(x) + show(y);
        }
      }
    }
    return "";
  });

  R.law("L(x a_i) = g(L(x), i)", [&](unsigned n) -> std::string {
    for (const auto& x : R.universe(n).elements) {
      for (unsigned i = 1; i <= n; ++i) {
        if (level_by_definition(multiply(x, i)) != g(level_by_definition(x), i)) {
          return show(x) + " i=" + std::to_string(i);
        }
      }
    }
    return "";
  });

  R.law("L(y x) = L(x) when c(y) subset [n-1]", [&](unsigned n) -> std::string {
    const IndexSet lower = IndexSet::prefix(n, n - 1);
    for (const auto& y : R.universe(n).elements) {
      if (!content(y).subset_of(lower)) continue;
      for (const auto& x : R.universe(n).elements) {
        if (level_by_definition(y * x) != level_by_definition(x)) return show(y) + show(x);
      }
    }
    return "";
  });

  R.law("L(a_n e_([n-1]\\[j])) = j", [&](unsigned n) -> std::string {
    for (unsigned j = 0; j < n; ++j) {
      const Element x = Element::generator(n, n) *
                        idempotent(IndexSet::prefix(n, n - 1) - IndexSet::prefix(n, j));
      if (level_by_definition(x) != j) return "j=" + std::to_string(j);
    }
    return "";
  });

  R.law("A_x = B_x and L = m = fold of g over any word", [&](unsigned n) -> std::string {
    for (const auto& x : R.universe(n).elements) {
      const LevelSets s = level_sets(x);
      const Level l = level_by_definition(x);
      if (s.by_deletion != s.by_annihilation || m_function(x) != l ||
          level_by_recursion(x.canonical()) != l) {
        return show(x);
      }
    }
    for (const auto& w : all_words(n, n == 2 ? 6 : 5)) {
      if (level_by_recursion(w) != level_by_definition(reduce(w))) return "w=" + w.to_string();
    }
    return "";
  });

  R.law("R = {x : x a_1 = f} = B(f, 1), |R| = 1 + |K_(n-1)|, structure of R",
        [&](unsigned n) -> std::string {
          const ElementList& u = R.universe(n);
          const ElementList r = r_set(u);
          if (r.elements != ball(Element::zero(n), 1, u).elements) return "R != B(f,1)";
          if (r.size() != 1 + R.universe(n - 1).size()) return "wrong |R|";
          if (r.elements != r_set_by_structure(u).elements) return "structure set differs";
          return "";
        });

  R.law("d is an ultrametric; d(x, f) = L(x)", [&](unsigned n) -> std::string {
    const auto& els = R.universe(n).elements;
    const Element f = Element::zero(n);
    for (const auto& x : els) {
      if (distance(x, f) != level_by_definition(x)) return show(x);
    }
    auto rng = R.rng(n);
    std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
    for (int t = 0; t < 20000; ++t) {
      const auto& x = els[pick(rng)];
      const auto& y = els[pick(rng)];
      const auto& z = els[pick(rng)];
      const Level dxy = distance(x, y);
      if ((dxy == 0) != (x == y) || dxy != distance(y, x) ||
          dxy > std::max(distance(x, z), distance(z, y))) {
        return show(x) + show(y) + show(z);
      }
    }
    return "";
  });

  R.law("B(f, r) = {x : x e_[r] = f}; S(f, n) = {x : c(x) subset [n-1]}, |S(f, n)| = |K_(n-1)|",
        [&](unsigned n) -> std::string {
          const ElementList& u = R.universe(n);
          const Element f = Element::zero(n);
          for (unsigned r = 0; r <= n; ++r) {
            for (const auto& x : u.elements) {
              if (ball(f, r, u).contains(x) != (x * e_prefix(n, r) == f)) return show(x);
            }
          }
          const ElementList s = sphere(f, n, u);
          for (const auto& x : u.elements) {
            if (s.contains(x) != content(x).subset_of(IndexSet::prefix(n, n - 1))) {
              return show(x);
            }
          }
          return s.size() == R.universe(n - 1).size() ? "" : "wrong |S(f,n)|";
        });

  R.law("partial products stabilise; N = M => s_m = e_M; N = [n] => s_m = f",
        [&](unsigned n) -> std::string {
          auto rng = R.rng(100 + n);
          std::uniform_int_distribution<unsigned> letter(1, n);
          std::uniform_int_distribution<unsigned> len(0, 4);
          for (int t = 0; t < 200; ++t) {
            std::vector<Letter> pre, cyc;
            const unsigned lp = len(rng);
            const unsigned lc = 1 + len(rng);
            for (unsigned k = 0; k < lc; ++k) cyc.push_back(static_cast<Letter>(letter(rng)));
            for (unsigned k = 0; k < lp; ++k) pre.push_back(static_cast<Letter>(letter(rng)));
            const auto seq = SequenceSpec::periodic(Word(n, pre), Word(n, cyc));
            const auto trace = partial_products(seq, 10'000);
            if (trace.status != StabilityStatus::stable) return "unstable";
            if (seq.letters_used() == seq.letters_recurring() &&
                trace.value() != eventual_value(seq)) {
              return "cycle " + seq.cycle().to_string();
            }
            if (seq.letters_recurring() == IndexSet::full(n) &&
                trace.value() != Element::zero(n)) {
              return "cycle " + seq.cycle().to_string();
            }
          }
          return "";
        });

  R.law("P(T <= k) = (pi P^k)_0 = geometric convolution CDF; E[T] = sum 1/p_i",
        [&](unsigned n) -> std::string {
          auto rng = R.rng(200 + n);
          std::uniform_real_distribution<double> w(0.05, 1.0);
          for (int t = 0; t < 20; ++t) {
            std::vector<double> p(n);
            for (auto& v : p) v = w(rng);
            const double s = std::accumulate(p.begin(), p.end(), 0.0);
            for (auto& v : p) v /= s;
            const ProbabilityVector pv(p);
            const HittingTimePMF pmf = exact_hitting_pmf(pv);
            const auto cdf = chain_absorption_cdf(transition_matrix(pv), pmf.k_max());
            double acc = 0.0;
            for (std::size_t k = 0; k <= pmf.k_max(); ++k) {
              acc += pmf.mass[k];
              if (std::abs(acc - cdf[k]) > 1e-12) return "cdf at k=" + std::to_string(k);
            }
            double expected = 0.0;
            for (double v : p) expected += 1.0 / v;
            if (std::abs(pmf_mean_with_tail_correction(pmf) - expected) > 1e-9) return "mean";
          }
          return "";
        });

  R.law("L_j = L(P_j) along random products; E[T] = n^2 for uniform p (3 SE)",
        [&](unsigned n) -> std::string {
          SimulationOptions opt;
          opt.trials = 20'000;
          opt.seed = seed + n;
          opt.mode = n <= 3 ? SimulationMode::full : SimulationMode::sampled;
          const SimulationReport r = simulate(ProbabilityVector::uniform(n), opt);
          if (r.cross_check_failures != 0) return "cross-check failures";
          const double target = static_cast<double>(n) * n;
          if (std::abs(r.mean - target) > 3.0 * r.standard_error()) {
            return fmt::format("mean {} vs {}", r.mean, target);
          }
          return "";
        });

  return R.take();
}

}  // namespace kiselman::cli
