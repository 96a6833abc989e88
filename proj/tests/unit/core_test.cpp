#include <gtest/gtest.h>

#include "kiselman/core.hpp"
#include "kiselman/enumeration.hpp"
#include "kiselman/errors.hpp"
#include "support/generators.hpp"

namespace kiselman {
namespace {

using testing::Gen;

Element el(unsigned n, std::initializer_list<unsigned> w) {
  return reduce(Word(n, w));
}

TEST(Reduce, Idempotency) {
  EXPECT_EQ(el(2, {1, 1}).canonical(), Word(2, {1}));
}

TEST(Reduce, DefiningRelations) {
  EXPECT_EQ(el(2, {1, 2, 1}).canonical(), Word(2, {2, 1}));
  EXPECT_EQ(el(2, {2, 1, 2}).canonical(), Word(2, {2, 1}));
}

TEST(Reduce, EmptyWordIsUnit) {
  EXPECT_TRUE(reduce(Word(3)).is_unit());
  EXPECT_EQ(reduce(Word(3)), Element::unit(3));
}

TEST(Reduce, MixedGapIsIrreducible) {
  // Between the two 2s sit 1 < 2 and 3 > 2.
  const Word w(3, {2, 1, 3, 2});
  EXPECT_EQ(reduce(w).canonical(), w);
  EXPECT_TRUE(is_canonical(w));
  // And it is the only word of length <= 4 in its class.
  const CongruencePartition oracle = congruence_oracle(3, 4, 2);
  std::size_t members = 0;
  for (const Word& u : oracle.words) members += oracle.same_class(u, w);
  EXPECT_EQ(members, 1U);
}

TEST(Reduce, LongerWordsCascade) {
  // 3 1 2 1 3 -> 3 2 1 3 (left 1 dropped, gap {2} > 1) -> 3 2 1 (gap < 3).
  EXPECT_EQ(el(3, {3, 1, 2, 1, 3}).canonical(), Word(3, {3, 2, 1}));
}

TEST(Reduce, RejectsOutOfRangeLetters) {
  EXPECT_THROW(Word(2, {3}), MalformedInput);
  EXPECT_THROW(Word(2, {0}), MalformedInput);
  EXPECT_THROW(Word::parse(2, "1 5"), MalformedInput);
  EXPECT_THROW(Word::parse(2, "1 x"), MalformedInput);
}

TEST(Word, TextFormat) {
  EXPECT_EQ(Word::parse(3, "2 1 3 2"), Word(3, {2, 1, 3, 2}));
  EXPECT_EQ(Word::parse(3, "2,1, 3,2"), Word(3, {2, 1, 3, 2}));
  EXPECT_TRUE(Word::parse(3, "").empty());
  EXPECT_EQ(Word(3, {2, 1, 3, 2}).to_string(), "2 1 3 2");
}

TEST(Word, ShortlexOrder) {
  EXPECT_LT(Word(2), Word(2, {2}));
  EXPECT_LT(Word(2, {2}), Word(2, {1, 1}));
  EXPECT_LT(Word(2, {1, 2}), Word(2, {2, 1}));
}

TEST(Multiply, UnitAndZero) {
  Gen gen(1);
  for (unsigned n = 2; n <= 4; ++n) {
    const Element e = Element::unit(n);
    const Element f = Element::zero(n);
    for (int t = 0; t < 50; ++t) {
      const Element x = gen.element(n);
      EXPECT_EQ(e * x, x);
      EXPECT_EQ(x * e, x);
      EXPECT_EQ(f * x, f);
      EXPECT_EQ(x * f, f);
    }
  }
}

TEST(Multiply, RelationExample) {
  EXPECT_EQ(Element::generator(2, 1) * el(2, {2, 1}), el(2, {2, 1}));
}

TEST(Multiply, ByGeneratorMatchesGeneral) {
  Gen gen(2);
  for (int t = 0; t < 500; ++t) {
    const unsigned n = gen.uniform(2, 5);
    const Element x = gen.element(n, 15);
    const unsigned i = gen.uniform(1, n);
    EXPECT_EQ(multiply(x, i), x * Element::generator(n, i));
  }
}

TEST(Multiply, RankMismatch) {
  EXPECT_THROW(Element::unit(2) * Element::unit(3), RankMismatch);
}

TEST(Multiply, Associative) {
  Gen gen(3);
  for (int t = 0; t < 2000; ++t) {
    const unsigned n = gen.uniform(2, 4);
    const Element x = gen.element(n), y = gen.element(n), z = gen.element(n);
    ASSERT_EQ((x * y) * z, x * (y * z)) << x.to_string() << " | "
                                        << y.to_string() << " | "
                                        << z.to_string();
  }
}

TEST(Content, Examples) {
  EXPECT_TRUE(content(Element::unit(3)).empty());
  EXPECT_EQ(content(el(2, {2, 1})), IndexSet(2, {1, 2}));
}

TEST(Content, IsRepresentativeIndependentAndAHomomorphism) {
  Gen gen(4);
  for (int t = 0; t < 1000; ++t) {
    const unsigned n = gen.uniform(2, 4);
    const Word u = gen.word(n, 10), v = gen.word(n, 10);
    EXPECT_EQ(content(reduce(u)), content(u));
    EXPECT_EQ(content(reduce(u) * reduce(v)),
              content(reduce(u)) | content(reduce(v)));
  }
}

TEST(Idempotent, Examples) {
  EXPECT_EQ(idempotent(IndexSet(3)), Element::unit(3));
  EXPECT_EQ(idempotent(IndexSet(3, {1, 3})).canonical(), Word(3, {3, 1}));
  EXPECT_EQ(idempotent(IndexSet::full(4)), Element::zero(4));
  EXPECT_EQ(Element::zero(3).canonical(), Word(3, {3, 2, 1}));
  EXPECT_THROW(IndexSet(3, {4}), MalformedInput);
}

TEST(Idempotent, ExactlyTheIdempotents) {
  for (unsigned n = 2; n <= 4; ++n) {
    std::vector<Element> from_sets;
    for (const IndexSet& X : IndexSet::all_subsets(n)) {
      const Element e = idempotent(X);
      EXPECT_EQ(e * e, e);
      from_sets.push_back(e);
    }
    std::sort(from_sets.begin(), from_sets.end());
    EXPECT_EQ(std::adjacent_find(from_sets.begin(), from_sets.end()),
              from_sets.end());
    std::vector<Element> found;
    for (const Element& x : enumerate(n).elements) {
      if (x * x == x) found.push_back(x);
    }
    EXPECT_EQ(found, from_sets) << "rank " << n;
  }
}

TEST(Power, Examples) {
  const Element x = el(2, {1, 2});
  EXPECT_EQ(power(x, 1), x);
  EXPECT_EQ(power(x, 2), el(2, {2, 1}));
  EXPECT_EQ(power(x, 2), idempotent(IndexSet(2, {1, 2})));
  EXPECT_NE(power(x, 1), power(x, 2));
  EXPECT_THROW(power(x, 0), MalformedInput);
}

TEST(Power, ReachesIdempotentOfContent) {
  for (unsigned n = 2; n <= 4; ++n) {
    for (const Element& x : enumerate(n).elements) {
      const auto c = static_cast<unsigned>(content(x).size());
      for (unsigned k = std::max(c, 1U); k <= c + 3; ++k) {
        ASSERT_EQ(power(x, k), idempotent(content(x))) << x.to_string();
      }
    }
  }
}

TEST(Tau, Examples) {
  EXPECT_EQ(tau(Element::unit(2)), Element::unit(2));
  EXPECT_EQ(tau(Element::generator(2, 1)), Element::generator(2, 2));
  EXPECT_EQ(tau(el(2, {1, 2})), el(2, {1, 2}));
}

TEST(Tau, InvolutiveAntiautomorphism) {
  Gen gen(5);
  for (int t = 0; t < 2000; ++t) {
    const unsigned n = gen.uniform(2, 4);
    const Element x = gen.element(n), y = gen.element(n);
    ASSERT_EQ(tau(x * y), tau(y) * tau(x));
    ASSERT_EQ(tau(tau(x)), x);
  }
}

TEST(IndexSet, Operations) {
  const IndexSet a(4, {1, 2, 3});
  const IndexSet b(4, {3, 4});
  EXPECT_EQ(a | b, IndexSet::full(4));
  EXPECT_EQ(a & b, IndexSet(4, {3}));
  EXPECT_EQ(a - b, IndexSet(4, {1, 2}));
  EXPECT_EQ(b.complement(), IndexSet(4, {1, 2}));
  EXPECT_EQ(IndexSet::prefix(4, 0), IndexSet(4));
  EXPECT_EQ(IndexSet::prefix(4, 2), IndexSet(4, {1, 2}));
  EXPECT_EQ(IndexSet::parse(4, "3,1"), IndexSet(4, {1, 3}));
  EXPECT_EQ(IndexSet(4, {3, 1}).to_string(), "1 3");
  EXPECT_THROW((void)(a | IndexSet(3)), RankMismatch);
}

}  // namespace
}  // namespace kiselman
