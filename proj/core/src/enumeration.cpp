#include "kiselman/enumeration.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "kiselman/errors.hpp"

namespace kiselman {

bool ElementList::contains(const Element& x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

ElementList enumerate(unsigned rank, std::size_t cap) {
  check_rank(rank);
  ElementList out{rank, {}, false};
  std::unordered_set<Element> seen;
  std::deque<Element> frontier;
  const Element e = Element::unit(rank);
  seen.insert(e);
  frontier.push_back(e);
  bool capped = false;
  while (!frontier.empty() && !capped) {
    Element x = std::move(frontier.front());
    frontier.pop_front();
    for (unsigned i = 1; i <= rank; ++i) {
      Element y = multiply(x, i);
      if (seen.contains(y)) continue;
      if (seen.size() >= cap) {
        capped = true;
        break;
      }
      seen.insert(y);
      frontier.push_back(std::move(y));
    }
  }
  out.elements.assign(seen.begin(), seen.end());
  std::sort(out.elements.begin(), out.elements.end());
  out.complete = !capped;
  return out;
}

// ------------------------------------------------------- congruence oracle

namespace {

// Words of length <= bound, indexed in shortlex order: the words of length l
// occupy [offset[l], offset[l+1]) and are ordered as base-rank numerals.
class WordSpace {
 public:
  WordSpace(unsigned rank, unsigned bound) : rank_(rank), bound_(bound) {
    offset_.resize(bound + 2);
    std::uint64_t count = 1;
    for (unsigned l = 0; l <= bound; ++l) {
      offset_[l + 1] = offset_[l] + count;
      count *= rank;
    }
  }

  std::uint64_t size() const { return offset_[bound_ + 1]; }
  unsigned length_of(std::uint64_t index) const {
    unsigned l = 0;
    while (offset_[l + 1] <= index) ++l;
    return l;
  }

  std::uint64_t encode(const Letter* letters, unsigned len) const {
    std::uint64_t v = 0;
    for (unsigned k = 0; k < len; ++k) v = v * rank_ + (letters[k] - 1U);
    return offset_[len] + v;
  }

  // Fills letters[0..len) and returns len.
  unsigned decode(std::uint64_t index, Letter* letters) const {
    const unsigned len = length_of(index);
    std::uint64_t v = index - offset_[len];
    for (unsigned k = len; k-- > 0;) {
      letters[k] = static_cast<Letter>(v % rank_ + 1);
      v /= rank_;
    }
    return len;
  }

 private:
  unsigned rank_;
  unsigned bound_;
  std::vector<std::uint64_t> offset_;
};

class UnionFind {
 public:
  explicit UnionFind(std::uint64_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0U);
  }
  std::uint32_t find(std::uint32_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

struct Rule {
  std::vector<Letter> lhs;
  std::vector<Letter> rhs;
};

// ii = i, and for j < i: iji = ij, jij = ij. Only the longer-to-shorter
// orientation is listed; unions are symmetric, and any equal-length step
// iji <-> jij factors through ij.
std::vector<Rule> defining_rules(unsigned rank) {
  std::vector<Rule> rules;
  for (unsigned i = 1; i <= rank; ++i) {
    const auto a = static_cast<Letter>(i);
    rules.push_back({{a, a}, {a}});
    for (unsigned j = 1; j < i; ++j) {
      const auto b = static_cast<Letter>(j);
      rules.push_back({{a, b, a}, {a, b}});
      rules.push_back({{b, a, b}, {a, b}});
    }
  }
  return rules;
}

// Class representative (least shortlex index) for every word of length
// <= max_len, using closure over words of length <= bound.
std::vector<std::uint32_t> restricted_classes(unsigned rank, unsigned max_len,
                                              unsigned bound) {
  const WordSpace space(rank, bound);
  const auto rules = defining_rules(rank);
  UnionFind uf(space.size());
  std::vector<Letter> w(bound + 1);
  std::vector<Letter> v(bound + 1);
  for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
    const unsigned len = space.decode(idx, w.data());
    for (const Rule& r : rules) {
      const auto k = static_cast<unsigned>(r.lhs.size());
      for (unsigned p = 0; p + k <= len; ++p) {
        if (!std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + p)) continue;
        unsigned out = 0;
        for (unsigned q = 0; q < p; ++q) v[out++] = w[q];
        for (Letter c : r.rhs) v[out++] = c;
        for (unsigned q = p + k; q < len; ++q) v[out++] = w[q];
        uf.unite(static_cast<std::uint32_t>(idx),
                 static_cast<std::uint32_t>(space.encode(v.data(), out)));
      }
    }
  }
  const std::uint64_t kept = WordSpace(rank, max_len).size();
  std::vector<std::uint32_t> rep(space.size(), UINT32_MAX);
  std::vector<std::uint32_t> class_of(kept);
  for (std::uint32_t idx = 0; idx < kept; ++idx) {
    const std::uint32_t root = uf.find(idx);
    if (rep[root] == UINT32_MAX) rep[root] = idx;
    class_of[idx] = rep[root];
  }
  return class_of;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp,
                          std::uint64_t limit) {
  std::uint64_t v = 1;
  for (unsigned k = 0; k < exp; ++k) {
    if (base > 1 && v > limit / base) return limit + 1;
    v *= base;
  }
  return v;
}

}  // namespace

std::size_t CongruencePartition::class_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < class_of.size(); ++i) {
    if (class_of[i] == i) ++n;
  }
  return n;
}

std::size_t CongruencePartition::index_of(const Word& w) const {
  if (w.rank() != rank) throw RankMismatch(rank, w.rank());
  if (w.size() > max_len) {
    throw PreconditionViolation("word longer than the oracle's max_len");
  }
  const WordSpace space(rank, max_len);
  return static_cast<std::size_t>(space.encode(
      w.letters().data(), static_cast<unsigned>(w.size())));
}

bool CongruencePartition::same_class(const Word& u, const Word& v) const {
  return class_of[index_of(u)] == class_of[index_of(v)];
}

CongruencePartition congruence_oracle(unsigned rank, unsigned max_len,
                                      unsigned slack,
                                      std::uint64_t word_budget) {
  check_rank(rank);
  const unsigned bound = max_len + slack + 1;
  if (checked_pow(std::max(rank, 2U), bound + 1, word_budget) > word_budget ||
      checked_pow(std::max(rank, 2U), bound + 1, word_budget) > UINT32_MAX) {
    throw BudgetExceeded("congruence oracle: rank " + std::to_string(rank) +
                         " with words up to length " + std::to_string(bound) +
                         " exceeds the word budget of " +
                         std::to_string(word_budget));
  }
  auto base = restricted_classes(rank, max_len, max_len + slack);
  auto wider = restricted_classes(rank, max_len, max_len + slack + 1);
  if (base != wider) {
    throw OracleUnstable("congruence oracle: partition of words of length <= " +
                         std::to_string(max_len) + " changed between slack " +
                         std::to_string(slack) + " and " +
                         std::to_string(slack + 1));
  }

  CongruencePartition out;
  out.rank = rank;
  out.max_len = max_len;
  out.slack = slack;
  out.class_of = std::move(base);
  const WordSpace space(rank, max_len);
  out.words.reserve(out.class_of.size());
  std::vector<Letter> buf(max_len + 1);
  for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
    const unsigned len = space.decode(idx, buf.data());
    out.words.emplace_back(rank,
                           std::vector<Letter>(buf.begin(), buf.begin() + len));
  }
  return out;
}

CardinalityTable cardinality_table(unsigned max_rank, std::size_t cap) {
  CardinalityTable table;
  for (unsigned n = 2; n <= max_rank; ++n) {
    ElementList list = enumerate(n, cap);
    if (!list.complete) {
      table.truncated = true;
      break;
    }
    table.rows.push_back({n, list.size()});
  }
  return table;
}

}  // namespace kiselman
