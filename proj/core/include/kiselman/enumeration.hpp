#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "kiselman/core.hpp"

namespace kiselman {

// A list of distinct elements of one K_n in shortlex order of canonical
// words. `complete` is set only when the list is all of K_n.
struct ElementList {
  unsigned rank = 0;
  std::vector<Element> elements;
  bool complete = false;

  std::size_t size() const noexcept { return elements.size(); }
  bool contains(const Element& x) const;
};

// Breadth-first search of the right Cayley graph from e. Stops (and returns
// an incomplete list) once more than `cap` elements have been found.
ElementList enumerate(unsigned rank, std::size_t cap = 1'000'000);

// Words of length <= max_len over a_1..a_rank partitioned into classes of
// the congruence generated by the defining relations. The closure is
// computed over words of length <= max_len + slack and verified to be the
// same for slack + 1.
struct CongruencePartition {
  unsigned rank = 0;
  unsigned max_len = 0;
  unsigned slack = 0;
  // All words of length <= max_len, in shortlex order.
  std::vector<Word> words;
  // class_of[i] is the index in `words` of the shortlex-least member of the
  // class of words[i].
  std::vector<std::uint32_t> class_of;

  std::size_t class_count() const;
  // Index of w in `words`; w must have length <= max_len.
  std::size_t index_of(const Word& w) const;
  bool same_class(const Word& u, const Word& v) const;
};

inline constexpr std::uint64_t kDefaultWordBudget = 20'000'000;

// Throws BudgetExceeded when rank^(max_len + slack + 2) exceeds
// `word_budget`, OracleUnstable when the two slack levels disagree.
CongruencePartition congruence_oracle(unsigned rank, unsigned max_len,
                                      unsigned slack,
                                      std::uint64_t word_budget =
                                          kDefaultWordBudget);

struct CardinalityRow {
  unsigned rank;
  std::size_t count;
};

struct CardinalityTable {
  std::vector<CardinalityRow> rows;
  // Set when enumeration hit the cap at some rank; rows stop before it.
  bool truncated = false;
};

// |K_n| for n = 2..max_rank.
CardinalityTable cardinality_table(unsigned max_rank,
                                   std::size_t cap = 1'000'000);

}  // namespace kiselman
