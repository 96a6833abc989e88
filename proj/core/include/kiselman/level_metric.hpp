#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kiselman/core.hpp"
#include "kiselman/enumeration.hpp"

namespace kiselman {

// Values 0..n of the level function and of the metric.
using Level = unsigned;

// A subset of {0, 1, ..., rank}.
class LevelSet {
 public:
  explicit LevelSet(unsigned rank) : rank_(rank) {}
  static LevelSet all(unsigned rank);

  unsigned rank() const noexcept { return rank_; }
  bool contains(Level i) const noexcept { return i <= rank_ && ((bits_ >> i) & 1U); }
  void insert(Level i);
  std::vector<Level> members() const;
  std::string to_string() const;

  friend bool operator==(const LevelSet&, const LevelSet&) = default;

 private:
  unsigned rank_;
  std::uint64_t bits_ = 0;
};

// Least i such that deleting a_1..a_i from x leaves e_{[n] \ [i]}.
Level level_by_definition(const Element& x);

// One step of the level under right multiplication by a_j.
constexpr Level g(Level i, unsigned j) noexcept { return i == j ? i - 1 : i; }

// Folds g over the letters of w starting from n. Valid for any word, not only
// canonical ones.
Level level_by_recursion(const Word& w);

// Least i with x * e_[i] = f.
Level m_function(const Element& x);

struct LevelSets {
  // {i : deleting a_1..a_i from x gives e_{[n] \ [i]}}
  LevelSet by_deletion;
  // {i : x * e_[i] = f}
  LevelSet by_annihilation;
};

LevelSets level_sets(const Element& x);

// Least i such that x and y agree after deleting a_1..a_i.
Level distance(const Element& x, const Element& y);

// {x in universe : d(center, x) <= r}. The universe must be complete.
ElementList ball(const Element& center, Level r, const ElementList& universe);
// {x in universe : d(center, x) = r}.
ElementList sphere(const Element& center, Level r, const ElementList& universe);

// {x : x a_1 = f}.
ElementList r_set(const ElementList& universe);

// The same set assembled from the submonoid generated by a_2..a_n:
// {e_{2..n}} together with x a_1 e_{{2..m(x)}} for every such x.
ElementList r_set_by_structure(const ElementList& universe);

}  // namespace kiselman
