#include "kn/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "kiselman/kiselman.hpp"
#include "kn/report_json.hpp"
#include "kn/selftest.hpp"

namespace kiselman::cli {

namespace {

enum class Format { plain, json, tsv };

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "tsv") return Format::tsv;
  return Format::plain;
}

std::string num(double v) { return fmt::format("{}", v); }

// Element cap for enumerations; KN_BUDGET overrides the built-in default.
std::size_t default_cap() {
  if (const char* env = std::getenv("KN_BUDGET")) {
    auto values = text::parse_integers(env);
    if (values.size() == 1 && values[0] > 0) return values[0];
    throw MalformedInput("KN_BUDGET must be a positive integer");
  }
  return 1'000'000;
}

class Printer {
 public:
  Printer(std::ostream& out, Format format) : out_(out), format_(format) {}

  Format format() const { return format_; }

  void json(const Json& j, int indent = -1) { out_ << j.dump(indent) << '\n'; }
  void line(const std::string& s) { out_ << s << '\n'; }

  void element(const Element& x) {
    if (format_ == Format::json) {
      json({{"element", x.to_string()}, {"rank", x.rank()}});
    } else {
      line(x.to_string());
    }
  }

  void elements(const ElementList& list) {
    if (format_ == Format::json) {
      Json arr = Json::array();
      for (const auto& x : list.elements) arr.push_back(x.to_string());
      json(arr);
    } else {
      for (const auto& x : list.elements) line(x.to_string());
    }
  }

 private:
  std::ostream& out_;
  Format format_;
};

SimulationMode resolve_mode(const std::string& mode, unsigned n) {
  if (mode == "auto") {
    return n <= 3 ? SimulationMode::full : SimulationMode::sampled;
  }
  return parse_simulation_mode(mode);
}

ElementList complete_universe(unsigned n) {
  ElementList u = enumerate(n, default_cap());
  if (!u.complete) {
    throw BudgetExceeded("enumeration of K_" + std::to_string(n) +
                         " exceeded the element cap");
  }
  return u;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"exact computation and simulation in Kiselman's semigroup", "kn"};
  app.require_subcommand(1);

  unsigned n = 0;
  std::string format = "plain";
  std::string word, x_text, y_text, set_text, center_text, p_text;
  std::string method = "definition";
  std::string mode_text = "auto";
  std::string out_path, report_path;
  unsigned radius = 0;
  std::optional<std::size_t> k_opt;
  std::optional<std::size_t> cap_opt;
  std::optional<std::uint64_t> seed_opt;
  std::size_t trials = 0;
  unsigned threads = 1;
  unsigned max_rank = 0;
  std::uint64_t step_budget = 1'000'000;
  bool table = false;
  VerificationConfig vconfig;

  std::function<int(Printer&)> action;

  auto sub = [&](const std::string& name, const std::string& help,
                 bool needs_rank = true) {
    CLI::App* s = app.add_subcommand(name, help);
    if (needs_rank) {
      s->add_option("--n", n, "rank of the semigroup")
          ->required()
          ->check(CLI::Range(2U, kMaxRank));
    }
    s->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"plain", "json", "tsv"}));
    return s;
  };
  auto word_of = [&](const std::string& text) { return Word::parse(n, text); };
  auto element_of = [&](const std::string& text) {
    return reduce(word_of(text));
  };

  // ------------------------------------------------------------ algebra
  auto* c_reduce = sub("reduce", "canonical form of a word");
  c_reduce->add_option("--word", word, "letters, e.g. \"2 1 3 2\"");
  c_reduce->callback([&] {
    action = [&](Printer& pr) {
      pr.element(element_of(word));
      return kOk;
    };
  });

  auto* c_mul = sub("mul", "product of two elements");
  c_mul->add_option("--x", x_text)->required();
  c_mul->add_option("--y", y_text)->required();
  c_mul->callback([&] {
    action = [&](Printer& pr) {
      pr.element(element_of(x_text) * element_of(y_text));
      return kOk;
    };
  });

  auto* c_tau = sub("tau", "image under the antiautomorphism a_i -> a_{n-i+1}");
  c_tau->add_option("--word", word);
  c_tau->callback([&] {
    action = [&](Printer& pr) {
      pr.element(tau(element_of(word)));
      return kOk;
    };
  });

  auto* c_content = sub("content", "set of letters occurring");
  c_content->add_option("--word", word);
  c_content->callback([&] {
    action = [&](Printer& pr) {
      const IndexSet c = content(element_of(word));
      if (pr.format() == Format::json) {
        pr.json({{"element", element_of(word).to_string()},
                 {"content", c.members()}});
      } else {
        pr.line(c.to_string());
      }
      return kOk;
    };
  });

  auto* c_delete = sub("delete", "apply the deletion endomorphism for a set");
  c_delete->add_option("--set", set_text, "indices to delete")->required();
  c_delete->add_option("--word", word);
  c_delete->callback([&] {
    action = [&](Printer& pr) {
      pr.element(delete_indices(IndexSet::parse(n, set_text), element_of(word)));
      return kOk;
    };
  });

  auto* c_level = sub("level", "level of an element");
  c_level->add_option("--word", word);
  c_level->add_option("--method", method, "definition | recursion | m")
      ->check(CLI::IsMember({"definition", "recursion", "m"}));
  c_level->callback([&] {
    action = [&](Printer& pr) {
      const Word w = word_of(word);
      const Element x = reduce(w);
      Level l = 0;
      if (method == "recursion") {
        l = level_by_recursion(w);
      } else if (method == "m") {
        l = m_function(x);
      } else {
        l = level_by_definition(x);
      }
      if (pr.format() == Format::json) {
        pr.json({{"element", x.to_string()}, {"level", l}});
      } else {
        pr.line(std::to_string(l));
      }
      return kOk;
    };
  });

  auto* c_m = sub("m", "least i with x e_[i] = f");
  c_m->add_option("--word", word);
  c_m->callback([&] {
    action = [&](Printer& pr) {
      const Element x = element_of(word);
      const Level v = m_function(x);
      if (pr.format() == Format::json) {
        pr.json({{"element", x.to_string()}, {"m", v}});
      } else {
        pr.line(std::to_string(v));
      }
      return kOk;
    };
  });

  auto* c_dist = sub("dist", "ultrametric distance");
  c_dist->add_option("--x", x_text)->required();
  c_dist->add_option("--y", y_text)->required();
  c_dist->callback([&] {
    action = [&](Printer& pr) {
      const Element x = element_of(x_text);
      const Element y = element_of(y_text);
      const Level d = distance(x, y);
      if (pr.format() == Format::json) {
        pr.json({{"x", x.to_string()}, {"y", y.to_string()}, {"d", d}});
      } else {
        pr.line(std::to_string(d));
      }
      return kOk;
    };
  });

  // -------------------------------------------------------- enumeration
  auto* c_enum = sub("enumerate", "list K_n, or tabulate |K_n|", false);
  c_enum->add_option("--n", n, "rank")->check(CLI::Range(2U, kMaxRank));
  c_enum->add_option("--cap", cap_opt, "maximum number of elements");
  c_enum->add_flag("--table", table, "print |K_n| for n = 2..max-rank");
  c_enum->add_option("--max-rank", max_rank, "last rank of the table")
      ->check(CLI::Range(2U, kMaxRank));
  c_enum->callback([&] {
    action = [&](Printer& pr) {
      const std::size_t cap = cap_opt.value_or(default_cap());
      if (table) {
        const unsigned top = max_rank ? max_rank : (n ? n : 4);
        const CardinalityTable t = cardinality_table(top, cap);
        if (pr.format() == Format::json) {
          Json rows = Json::array();
          for (auto r : t.rows) rows.push_back({{"n", r.rank}, {"count", r.count}});
          pr.json({{"rows", rows}, {"truncated", t.truncated}});
        } else {
          for (auto r : t.rows) pr.line(fmt::format("{}\t{}", r.rank, r.count));
        }
        if (t.truncated) {
          err << "notice: table truncated, element cap " << cap
              << " reached at rank " << (t.rows.size() + 2) << '\n';
          return kBudgetExceeded;
        }
        return kOk;
      }
      if (n == 0) throw MalformedInput("enumerate needs --n (or --table)");
      const ElementList list = enumerate(n, cap);
      pr.elements(list);
      if (!list.complete) {
        err << "notice: element cap " << cap
            << " reached; list is incomplete\n";
        return kBudgetExceeded;
      }
      return kOk;
    };
  });

  // ------------------------------------------------------------- metric
  auto add_ball = [&](const std::string& name, bool is_ball) {
    auto* c = sub(name, is_ball ? "metric ball B(center, r)"
                                : "metric sphere S(center, r)");
    c->add_option("--center", center_text)->required();
    c->add_option("--r", radius)->required();
    c->callback([&, is_ball] {
      action = [&, is_ball](Printer& pr) {
        if (radius > n) throw MalformedInput("radius must be at most n");
        const ElementList u = complete_universe(n);
        const Element center = element_of(center_text);
        pr.elements(is_ball ? ball(center, radius, u)
                            : sphere(center, radius, u));
        return kOk;
      };
    });
  };
  add_ball("ball", true);
  add_ball("sphere", false);

  auto* c_rset = sub("rset", "elements x with x a_1 = f");
  c_rset->callback([&] {
    action = [&](Printer& pr) {
      pr.elements(r_set(complete_universe(n)));
      return kOk;
    };
  });

  // --------------------------------------------------------- stochastic
  auto probabilities = [&] {
    auto v = text::parse_doubles(p_text);
    if (v.size() != n) {
      throw MalformedInput("--p needs exactly n = " + std::to_string(n) +
                           " values");
    }
    return ProbabilityVector(std::move(v));
  };

  auto* c_chain = sub("chain", "transition matrix of the level chain");
  c_chain->add_option("--p", p_text, "p_1,...,p_n")->required();
  c_chain->callback([&] {
    action = [&](Printer& pr) {
      const TransitionMatrix P = transition_matrix(probabilities());
      if (pr.format() == Format::json) {
        Json rows = Json::array();
        for (unsigned i = 0; i <= n; ++i) {
          Json row = Json::array();
          for (unsigned j = 0; j <= n; ++j) row.push_back(P.at(i, j));
          rows.push_back(row);
        }
        pr.json({{"n", n}, {"matrix", rows}, {"initial", P.initial}});
      } else {
        const char* sep = pr.format() == Format::tsv ? "\t" : " ";
        for (unsigned i = 0; i <= n; ++i) {
          std::string s;
          for (unsigned j = 0; j <= n; ++j) {
            if (j) s += sep;
            s += num(P.at(i, j));
          }
          pr.line(s);
        }
        if (pr.format() == Format::plain) {
          std::string s = "initial:";
          for (double v : P.initial) s += " " + num(v);
          pr.line(s);
        }
      }
      return kOk;
    };
  });

  auto* c_pmf = sub("pmf", "exact distribution of the hitting time of f");
  c_pmf->add_option("--p", p_text)->required();
  c_pmf->add_option("--k", k_opt, "truncation point (default: tail < 1e-9)");
  c_pmf->callback([&] {
    action = [&](Printer& pr) {
      const ProbabilityVector p = probabilities();
      const HittingTimePMF pmf = exact_hitting_pmf(p, k_opt);
      if (pr.format() == Format::json) {
        Json mass = Json::array();
        for (std::size_t k = 0; k <= pmf.k_max(); ++k) mass.push_back(pmf.mass[k]);
        pr.json({{"n", n},
                 {"p", p.values()},
                 {"k_max", pmf.k_max()},
                 {"pmf", mass},
                 {"tail", pmf.tail},
                 {"mean", pmf_mean_with_tail_correction(pmf)}});
      } else {
        for (std::size_t k = n; k <= pmf.k_max(); ++k) {
          pr.line(pr.format() == Format::tsv
                      ? fmt::format("{}\t{}", k, num(pmf.mass[k]))
                      : fmt::format("P(T={})={}", k, num(pmf.mass[k])));
        }
      }
      return kOk;
    };
  });

  auto add_sim_options = [&](CLI::App* c, bool required) {
    auto* p_opt = c->add_option("--p", p_text, "p_1,...,p_n");
    auto* t_opt = c->add_option("--trials", trials)->check(CLI::PositiveNumber);
    auto* s_opt = c->add_option("--seed", seed_opt, "master seed");
    if (required) {
      p_opt->required();
      t_opt->required();
      s_opt->required();
    }
    c->add_option("--mode", mode_text, "full | level | sampled | auto")
        ->check(CLI::IsMember({"full", "level", "level-only", "sampled", "auto"}));
    c->add_option("--threads", threads)->check(CLI::Range(1U, 256U));
    c->add_option("--step-budget", step_budget)->check(CLI::PositiveNumber);
    c->add_option("--tv-bound", vconfig.tv_bound);
    c->add_option("--p-floor", vconfig.p_value_floor);
    c->add_option("--out", out_path, "write the JSON report here");
  };
  auto simulate_and_verify = [&] {
    const ProbabilityVector p = probabilities();
    SimulationOptions opt;
    opt.trials = trials;
    opt.seed = *seed_opt;
    opt.mode = resolve_mode(mode_text, n);
    opt.threads = threads;
    opt.step_budget = step_budget;
    SimulationReport report = simulate(p, opt);
    const Verdict v = verify_distribution(report, exact_hitting_pmf(p), vconfig);
    return std::pair{std::move(report), v};
  };
  auto emit_report = [&](Printer& pr, const Json& j) {
    if (out_path.empty()) {
      pr.json(j, 2);
    } else {
      std::ofstream f(out_path);
      if (!f) throw MalformedInput("cannot write " + out_path);
      f << j.dump(2) << '\n';
      pr.line(fmt::format("wrote {}: {}", out_path,
                          j.at("pass").get<bool>() ? "pass" : "fail"));
    }
    return j.at("pass").get<bool>() ? kOk : kVerificationFailed;
  };

  auto* c_sim = sub("simulate", "Monte Carlo hitting times of f");
  add_sim_options(c_sim, true);
  c_sim->callback([&] {
    action = [&](Printer& pr) {
      auto [report, verdict] = simulate_and_verify();
      return emit_report(pr, report_to_json(report, verdict, vconfig));
    };
  });

  auto* c_verify = sub("verify", "check a simulation report against the exact law",
                       false);
  c_verify->add_option("--report", report_path, "report written by simulate");
  c_verify->add_option("--n", n)->check(CLI::Range(2U, kMaxRank));
  add_sim_options(c_verify, false);
  c_verify->callback([&] {
    action = [&](Printer& pr) {
      if (!report_path.empty()) {
        std::ifstream f(report_path);
        if (!f) throw MalformedInput("cannot read " + report_path);
        Json j;
        try {
          j = Json::parse(f);
        } catch (const nlohmann::json::exception& e) {
          throw MalformedInput(std::string("report: ") + e.what());
        }
        SimulationReport report = report_from_json(j);
        const ProbabilityVector p(report.p);
        const Verdict v = verify_distribution(report, exact_hitting_pmf(p), vconfig);
        const bool pass = v.pass && report.cross_check_failures == 0;
        Json out_j{{"report", report_path},
                   {"tv_vs_exact", v.total_variation},
                   {"chi_square", v.chi_square},
                   {"chi_square_p_value", v.p_value},
                   {"cross_check_failures", report.cross_check_failures},
                   {"pass", pass}};
        if (pr.format() == Format::json) {
          pr.json(out_j);
        } else {
          pr.line(fmt::format("tv={} chi2={} p={} {}", num(v.total_variation),
                              num(v.chi_square), num(v.p_value),
                              pass ? "PASS" : "FAIL"));
        }
        return pass ? kOk : kVerificationFailed;
      }
      if (n == 0 || p_text.empty() || trials == 0 || !seed_opt) {
        throw MalformedInput(
            "verify needs --report, or --n, --p, --trials and --seed");
      }
      auto [report, verdict] = simulate_and_verify();
      return emit_report(pr, report_to_json(report, verdict, vconfig));
    };
  });

  auto* c_self = sub("selftest", "check every law at small rank", false);
  unsigned self_rank = 3;
  std::uint64_t self_seed = 20240601;
  c_self->add_option("--max-rank", self_rank)->check(CLI::Range(2U, 4U));
  c_self->add_option("--seed", self_seed);
  c_self->callback([&] {
    action = [&](Printer& pr) {
      const auto results = run_selftest(self_rank, self_seed);
      bool all = true;
      Json arr = Json::array();
      for (const auto& r : results) {
        all = all && r.pass;
        if (pr.format() == Format::json) {
          arr.push_back({{"law", r.law},
                         {"scope", r.scope},
                         {"pass", r.pass},
                         {"detail", r.detail}});
        } else {
          pr.line(fmt::format("[{}] {}  ({}){}", r.pass ? "PASS" : "FAIL",
                              r.law, r.scope,
                              r.detail.empty() ? "" : " -- " + r.detail));
        }
      }
      if (pr.format() == Format::json) pr.json(arr, 2);
      return all ? kOk : kVerificationFailed;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  Printer printer(out, parse_format(format));
  try {
    return action(printer);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const OracleUnstable& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace kiselman::cli
