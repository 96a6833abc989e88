#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace kiselman::cli {

struct LawResult {
  std::string law;     // the identity being checked, in formula form
  std::string scope;   // what it was checked over
  bool pass = false;
  std::string detail;  // first counterexample on failure
};

// Checks every algebraic and probabilistic law the library relies on,
// exhaustively at ranks 2..max_rank (plus seeded random sampling where the
// law ranges over infinitely many objects).
std::vector<LawResult> run_selftest(unsigned max_rank, std::uint64_t seed);

}  // namespace kiselman::cli
