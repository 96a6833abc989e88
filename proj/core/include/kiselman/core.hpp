#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kiselman {

// Generator index, 1-based. a_i is written as the letter i.
using Letter = std::uint8_t;

inline constexpr unsigned kMaxRank = 32;

// Throws MalformedInput unless 1 <= rank <= kMaxRank.
void check_rank(unsigned rank);

// A subset of {1, ..., rank}.
class IndexSet {
 public:
  explicit IndexSet(unsigned rank);
  IndexSet(unsigned rank, std::initializer_list<unsigned> members);
  IndexSet(unsigned rank, std::span<const unsigned> members);

  // [i] = {1, ..., i}; [0] is empty.
  static IndexSet prefix(unsigned rank, unsigned i);
  static IndexSet full(unsigned rank) { return prefix(rank, rank); }
  // Reads the word text format ("1 3", "1,3", "").
  static IndexSet parse(unsigned rank, std::string_view text);
  // Every subset of {1..rank}, ordered by bit pattern.
  static std::vector<IndexSet> all_subsets(unsigned rank);

  unsigned rank() const noexcept { return rank_; }
  std::uint64_t bits() const noexcept { return bits_; }
  bool contains(unsigned i) const noexcept;
  bool empty() const noexcept { return bits_ == 0; }
  std::size_t size() const noexcept;
  bool subset_of(const IndexSet& other) const;

  void insert(unsigned i);
  // Ascending.
  std::vector<unsigned> members() const;
  std::string to_string() const;

  IndexSet complement() const;
  friend IndexSet operator|(const IndexSet& a, const IndexSet& b);
  friend IndexSet operator&(const IndexSet& a, const IndexSet& b);
  // Set difference a \ b.
  friend IndexSet operator-(const IndexSet& a, const IndexSet& b);
  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  IndexSet(unsigned rank, std::uint64_t bits) : rank_(rank), bits_(bits) {}

  unsigned rank_;
  std::uint64_t bits_ = 0;
};

// A finite word over the generators a_1..a_rank. Not reduced.
class Word {
 public:
  explicit Word(unsigned rank) : Word(rank, std::vector<Letter>{}) {}
  Word(unsigned rank, std::vector<Letter> letters);
  Word(unsigned rank, std::initializer_list<unsigned> letters);

  // Whitespace- or comma-separated indices; "" is the empty word.
  static Word parse(unsigned rank, std::string_view text);

  unsigned rank() const noexcept { return rank_; }
  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word operator+(const Word& other) const;
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  // Shortlex: shorter words first, then lexicographic.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  unsigned rank_;
  std::vector<Letter> letters_;
};

// An element of K_rank, held as its canonical word. Only reduce() and the
// named constructors create Elements, so every instance is canonical.
class Element {
 public:
  // The unit e.
  static Element unit(unsigned rank);
  // The generator a_i.
  static Element generator(unsigned rank, unsigned i);
  // The zero f = a_n a_{n-1} ... a_1.
  static Element zero(unsigned rank);

  unsigned rank() const noexcept { return canonical_.rank(); }
  const Word& canonical() const noexcept { return canonical_; }
  bool is_unit() const noexcept { return canonical_.empty(); }
  std::string to_string() const { return canonical_.to_string(); }

  friend bool operator==(const Element&, const Element&) = default;
  friend std::strong_ordering operator<=>(const Element& a,
                                          const Element& b) {
    return a.canonical_ <=> b.canonical_;
  }

 private:
  friend Element reduce(const Word& w);
  friend Element multiply(const Element& x, unsigned i);
  explicit Element(Word canonical) : canonical_(std::move(canonical)) {}

  Word canonical_;
};

// Decides the word problem: returns the element represented by w. Rewrites
// to a fixed point, always acting on the leftmost pair of consecutive equal
// letters i .. i that admits a deletion:
//   every letter between them is < i  -> drop the right i
//   every letter between them is > i  -> drop the left i
//   nothing between them              -> drop the right i
Element reduce(const Word& w);

// True iff no deletion rule applies to w, i.e. between any two consecutive
// occurrences of a letter i there is both a letter > i and a letter < i.
bool is_canonical(const Word& w);

Element multiply(const Element& x, const Element& y);
// x * a_i.
Element multiply(const Element& x, unsigned i);

inline Element operator*(const Element& x, const Element& y) {
  return multiply(x, y);
}

// Letters occurring in the word.
IndexSet content(const Word& w);
IndexSet content(const Element& x);

// e_X: the product of the a_i, i in X, in strictly decreasing order of i.
Element idempotent(const IndexSet& X);

// x^k for k >= 1; k = 0 is rejected.
Element power(const Element& x, unsigned k);

// The antiautomorphism induced by a_i -> a_{n-i+1}.
Element tau(const Element& x);

}  // namespace kiselman

template <>
struct std::hash<kiselman::Word> {
  std::size_t operator()(const kiselman::Word& w) const noexcept;
};

template <>
struct std::hash<kiselman::Element> {
  std::size_t operator()(const kiselman::Element& x) const noexcept {
    return std::hash<kiselman::Word>{}(x.canonical());
  }
};
