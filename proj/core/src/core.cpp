#include "kiselman/core.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "kiselman/errors.hpp"
#include "kiselman/text.hpp"

namespace kiselman {

void check_rank(unsigned rank) {
  if (rank < 1 || rank > kMaxRank) {
    throw MalformedInput("rank must be in [1, " + std::to_string(kMaxRank) +
                         "], got " + std::to_string(rank));
  }
}

namespace {

void check_index(unsigned rank, std::uint64_t i) {
  if (i < 1 || i > rank) {
    throw MalformedInput("index " + std::to_string(i) + " out of range [1, " +
                         std::to_string(rank) + "]");
  }
}

void check_same_rank(unsigned a, unsigned b) {
  if (a != b) throw RankMismatch(a, b);
}

// Applies one deletion to the leftmost reducible pair whose right end is at
// or after `from`. Returns the position at which scanning may resume, or
// npos when w is already canonical from `from` onwards.
std::size_t reduce_once(std::vector<Letter>& w, std::size_t from) {
  for (std::size_t right = std::max<std::size_t>(from, 1); right < w.size();
       ++right) {
    const Letter c = w[right];
    Letter lo = std::numeric_limits<Letter>::max();
    Letter hi = 0;
    for (std::size_t left = right; left-- > 0;) {
      if (w[left] == c) {
        if (hi < c) {
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(right));
          return right;
        }
        if (lo > c) {
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(left));
          return left;
        }
        break;
      }
      lo = std::min(lo, w[left]);
      hi = std::max(hi, w[left]);
    }
  }
  return std::string::npos;
}

// Pairs whose right end lies before a deleted position are untouched by the
// deletion, so the scan resumes there instead of restarting.
void reduce_in_place(std::vector<Letter>& w, std::size_t from = 0) {
  while ((from = reduce_once(w, from)) != std::string::npos) {
  }
}

}  // namespace

// ---------------------------------------------------------------- IndexSet

IndexSet::IndexSet(unsigned rank) : rank_(rank) { check_rank(rank); }

IndexSet::IndexSet(unsigned rank, std::initializer_list<unsigned> members)
    : IndexSet(rank, std::span<const unsigned>(members.begin(), members.size())) {}

IndexSet::IndexSet(unsigned rank, std::span<const unsigned> members)
    : IndexSet(rank) {
  for (unsigned i : members) insert(i);
}

IndexSet IndexSet::prefix(unsigned rank, unsigned i) {
  check_rank(rank);
  if (i > rank) {
    throw MalformedInput("prefix length " + std::to_string(i) +
                         " exceeds rank " + std::to_string(rank));
  }
  std::uint64_t bits = ((std::uint64_t{1} << i) - 1) << 1;
  return IndexSet(rank, bits);
}

IndexSet IndexSet::parse(unsigned rank, std::string_view text) {
  IndexSet out(rank);
  for (auto v : text::parse_integers(text)) {
    check_index(rank, v);
    out.insert(static_cast<unsigned>(v));
  }
  return out;
}

std::vector<IndexSet> IndexSet::all_subsets(unsigned rank) {
  check_rank(rank);
  if (rank > 20) throw BudgetExceeded("all_subsets: rank too large");
  std::vector<IndexSet> out;
  out.reserve(std::size_t{1} << rank);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << rank); ++m) {
    out.push_back(IndexSet(rank, m << 1));
  }
  return out;
}

bool IndexSet::contains(unsigned i) const noexcept {
  return i >= 1 && i <= rank_ && ((bits_ >> i) & 1U);
}

std::size_t IndexSet::size() const noexcept {
  return static_cast<std::size_t>(std::popcount(bits_));
}

bool IndexSet::subset_of(const IndexSet& other) const {
  check_same_rank(rank_, other.rank_);
  return (bits_ & ~other.bits_) == 0;
}

void IndexSet::insert(unsigned i) {
  check_index(rank_, i);
  bits_ |= std::uint64_t{1} << i;
}

std::vector<unsigned> IndexSet::members() const {
  std::vector<unsigned> out;
  for (unsigned i = 1; i <= rank_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string IndexSet::to_string() const {
  std::string s;
  for (unsigned i : members()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(i);
  }
  return s;
}

IndexSet IndexSet::complement() const {
  return IndexSet(rank_, full(rank_).bits_ & ~bits_);
}

IndexSet operator|(const IndexSet& a, const IndexSet& b) {
  check_same_rank(a.rank_, b.rank_);
  return IndexSet(a.rank_, a.bits_ | b.bits_);
}

IndexSet operator&(const IndexSet& a, const IndexSet& b) {
  check_same_rank(a.rank_, b.rank_);
  return IndexSet(a.rank_, a.bits_ & b.bits_);
}

IndexSet operator-(const IndexSet& a, const IndexSet& b) {
  check_same_rank(a.rank_, b.rank_);
  return IndexSet(a.rank_, a.bits_ & ~b.bits_);
}

// -------------------------------------------------------------------- Word

Word::Word(unsigned rank, std::vector<Letter> letters)
    : rank_(rank), letters_(std::move(letters)) {
  check_rank(rank);
  for (Letter l : letters_) check_index(rank, l);
}

Word::Word(unsigned rank, std::initializer_list<unsigned> letters)
    : rank_(rank) {
  check_rank(rank);
  letters_.reserve(letters.size());
  for (unsigned l : letters) {
    check_index(rank, l);
    letters_.push_back(static_cast<Letter>(l));
  }
}

Word Word::parse(unsigned rank, std::string_view text) {
  check_rank(rank);
  std::vector<Letter> letters;
  for (auto v : text::parse_integers(text)) {
    check_index(rank, v);
    letters.push_back(static_cast<Letter>(v));
  }
  return Word(rank, std::move(letters));
}

Word Word::operator+(const Word& other) const {
  check_same_rank(rank_, other.rank_);
  std::vector<Letter> out;
  out.reserve(letters_.size() + other.letters_.size());
  out.insert(out.end(), letters_.begin(), letters_.end());
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  Word w(rank_);
  w.letters_ = std::move(out);
  return w;
}

std::string Word::to_string() const {
  std::string s;
  for (Letter l : letters_) {
    if (!s.empty()) s += ' ';
    s += std::to_string(l);
  }
  return s;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.letters_.begin(), a.letters_.end(), b.letters_.begin(),
      b.letters_.end());
}

// ----------------------------------------------------------------- Element

Element Element::unit(unsigned rank) { return Element(Word(rank)); }

Element Element::generator(unsigned rank, unsigned i) {
  return Element(Word(rank, {i}));
}

Element Element::zero(unsigned rank) {
  return idempotent(IndexSet::full(rank));
}

Element reduce(const Word& w) {
  std::vector<Letter> letters(w.letters().begin(), w.letters().end());
  reduce_in_place(letters);
  return Element(Word(w.rank(), std::move(letters)));
}

bool is_canonical(const Word& w) {
  std::vector<Letter> letters(w.letters().begin(), w.letters().end());
  return reduce_once(letters, 0) == std::string::npos;
}

Element multiply(const Element& x, const Element& y) {
  check_same_rank(x.rank(), y.rank());
  if (x.is_unit()) return y;
  if (y.is_unit()) return x;
  return reduce(x.canonical() + y.canonical());
}

Element multiply(const Element& x, unsigned i) {
  check_index(x.rank(), i);
  std::vector<Letter> letters(x.canonical().letters().begin(),
                              x.canonical().letters().end());
  letters.push_back(static_cast<Letter>(i));
  // Only pairs ending at the new letter can be reducible.
  reduce_in_place(letters, letters.size() - 1);
  return Element(Word(x.rank(), std::move(letters)));
}

IndexSet content(const Word& w) {
  IndexSet out(w.rank());
  for (Letter l : w.letters()) out.insert(l);
  return out;
}

IndexSet content(const Element& x) { return content(x.canonical()); }

Element idempotent(const IndexSet& X) {
  auto m = X.members();
  std::vector<Letter> letters(m.rbegin(), m.rend());
  return reduce(Word(X.rank(), std::move(letters)));
}

Element power(const Element& x, unsigned k) {
  if (k == 0) throw MalformedInput("power: exponent must be >= 1");
  Element acc = x;
  for (unsigned j = 1; j < k; ++j) {
    Element next = acc * x;
    // Powers stabilise once they reach e_{c(x)}.
    if (next == acc) break;
    acc = std::move(next);
  }
  return acc;
}

Element tau(const Element& x) {
  const unsigned n = x.rank();
  auto src = x.canonical().letters();
  std::vector<Letter> letters;
  letters.reserve(src.size());
  for (auto it = src.rbegin(); it != src.rend(); ++it) {
    letters.push_back(static_cast<Letter>(n - *it + 1));
  }
  return reduce(Word(n, std::move(letters)));
}

}  // namespace kiselman

std::size_t std::hash<kiselman::Word>::operator()(
    const kiselman::Word& w) const noexcept {
  std::size_t h = w.rank() * 0x9e3779b97f4a7c15ULL;
  for (auto l : w.letters()) {
    h ^= l + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}
