#include "kiselman/level_metric.hpp"

#include <algorithm>

#include "kiselman/errors.hpp"
#include "kiselman/morphisms.hpp"

namespace kiselman {

namespace {

void require_complete(const ElementList& universe, const Element& probe) {
  if (!universe.complete) {
    throw PreconditionViolation("universe is not a complete enumeration");
  }
  if (universe.rank != probe.rank()) {
    throw RankMismatch(universe.rank, probe.rank());
  }
}

// e_{[n] \ [i]}
Element upper_idempotent(unsigned rank, Level i) {
  return idempotent(IndexSet::full(rank) - IndexSet::prefix(rank, i));
}

bool deletion_hits_idempotent(const Element& x, Level i) {
  const unsigned n = x.rank();
  return delete_indices(IndexSet::prefix(n, i), x) == upper_idempotent(n, i);
}

bool annihilated_by_prefix(const Element& x, Level i) {
  const unsigned n = x.rank();
  return x * idempotent(IndexSet::prefix(n, i)) == Element::zero(n);
}

template <typename Pred>
ElementList filter(const ElementList& universe, Pred&& keep) {
  ElementList out{universe.rank, {}, false};
  std::copy_if(universe.elements.begin(), universe.elements.end(),
               std::back_inserter(out.elements), keep);
  return out;
}

}  // namespace

LevelSet LevelSet::all(unsigned rank) {
  LevelSet s(rank);
  for (Level i = 0; i <= rank; ++i) s.insert(i);
  return s;
}

void LevelSet::insert(Level i) {
  if (i > rank_) {
    throw MalformedInput("level " + std::to_string(i) + " exceeds rank " +
                         std::to_string(rank_));
  }
  bits_ |= std::uint64_t{1} << i;
}

std::vector<Level> LevelSet::members() const {
  std::vector<Level> out;
  for (Level i = 0; i <= rank_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string LevelSet::to_string() const {
  std::string s;
  for (Level i : members()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(i);
  }
  return s;
}

Level level_by_definition(const Element& x) {
  const unsigned n = x.rank();
  for (Level i = 0; i < n; ++i) {
    if (deletion_hits_idempotent(x, i)) return i;
  }
  return n;
}

Level level_by_recursion(const Word& w) {
  Level l = w.rank();
  for (Letter j : w.letters()) l = g(l, j);
  return l;
}

Level m_function(const Element& x) {
  const unsigned n = x.rank();
  for (Level i = 0; i <= n; ++i) {
    if (annihilated_by_prefix(x, i)) return i;
  }
  // x * e_[n] = x * f = f, so the loop always returns.
  throw Error("m_function: zero element is not absorbing");
}

LevelSets level_sets(const Element& x) {
  const unsigned n = x.rank();
  LevelSets out{LevelSet(n), LevelSet(n)};
  for (Level i = 0; i <= n; ++i) {
    if (deletion_hits_idempotent(x, i)) out.by_deletion.insert(i);
    if (annihilated_by_prefix(x, i)) out.by_annihilation.insert(i);
  }
  return out;
}

Level distance(const Element& x, const Element& y) {
  if (x.rank() != y.rank()) throw RankMismatch(x.rank(), y.rank());
  const unsigned n = x.rank();
  for (Level i = 0; i < n; ++i) {
    const IndexSet cut = IndexSet::prefix(n, i);
    if (delete_indices(cut, x) == delete_indices(cut, y)) return i;
  }
  return n;
}

ElementList ball(const Element& center, Level r, const ElementList& universe) {
  require_complete(universe, center);
  return filter(universe,
                [&](const Element& x) { return distance(center, x) <= r; });
}

ElementList sphere(const Element& center, Level r,
                   const ElementList& universe) {
  require_complete(universe, center);
  return filter(universe,
                [&](const Element& x) { return distance(center, x) == r; });
}

ElementList r_set(const ElementList& universe) {
  const Element f = Element::zero(universe.rank);
  require_complete(universe, f);
  return filter(universe, [&](const Element& x) { return multiply(x, 1U) == f; });
}

ElementList r_set_by_structure(const ElementList& universe) {
  const unsigned n = universe.rank;
  const Element f = Element::zero(n);
  require_complete(universe, f);
  const IndexSet upper = IndexSet::full(n) - IndexSet::prefix(n, 1);
  std::vector<Element> members{idempotent(upper)};
  for (const Element& x : universe.elements) {
    if (!content(x).subset_of(upper)) continue;
    const Level m = m_function(x);
    const IndexSet tail = IndexSet::prefix(n, m) - IndexSet::prefix(n, 1);
    members.push_back(x * Element::generator(n, 1) * idempotent(tail));
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return ElementList{n, std::move(members), false};
}

}  // namespace kiselman
