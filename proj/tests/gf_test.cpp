#include <gtest/gtest.h>

#include <map>

#include "albert/gf.hpp"

using namespace albert;
using namespace albert::gf;

TEST(Gf, PrimeFieldArithmetic) {
  const Field f = Field::of_order(3);
  EXPECT_EQ(f.add(Elem{2}, Elem{2}), Elem{1});
  EXPECT_EQ(f.inv(Elem{2}), Elem{2});
  EXPECT_EQ(f.neg(f.one()), Elem{2});
  EXPECT_THROW(f.inv(f.zero()), DomainError);
}

TEST(Gf, Gf4ProductReducesByModulus) {
  const Field f = Field::of_order(4);
  EXPECT_EQ(f.spec().modulus, (std::vector<unsigned>{1, 1, 1}));
  const Elem u = f.parse("u");
  EXPECT_EQ(f.mul(u, u), f.parse("u+1"));
  EXPECT_EQ(f.format(f.mul(u, u)), "u+1");
}

TEST(Gf, DefaultModuliAreLexLeast) {
  EXPECT_EQ(Field::of_order(9).spec().modulus, (std::vector<unsigned>{1, 0, 1}));
  EXPECT_EQ(Field::of_order(8).spec().modulus, (std::vector<unsigned>{1, 1, 0, 1}));
  EXPECT_THROW(Field::of_order(6), UsageError);
  EXPECT_THROW(Field(FieldSpec{3, 2, {2, 0, 1}}), UsageError);  // u^2 - 1 = (u-1)(u+1)
  EXPECT_THROW(Field(FieldSpec{4, 1, {0, 1}}), UsageError);
}

TEST(Gf, ElementsStartAtZeroAndAreComplete) {
  for (unsigned q : {3u, 4u, 27u}) {
    if (q == 27) {
      const Tower k = Tower::of_order(3);
      unsigned n = 0;
      for (auto x : k.elements()) {
        if (n == 0) {
          EXPECT_TRUE(k.is_zero(x));
        }
        EXPECT_EQ(k.encode(x), n);
        ++n;
      }
      EXPECT_EQ(n, 27u);
      continue;
    }
    const Field f = Field::of_order(q);
    unsigned n = 0;
    for (Elem e : f.elements()) {
      if (n == 0) {
        EXPECT_EQ(e, f.zero());
      }
      ++n;
    }
    EXPECT_EQ(n, q);
  }
}

TEST(Gf, ParseAndFormat) {
  const Field f9 = Field::of_order(9);
  EXPECT_EQ(f9.parse("-1"), f9.from_int(2));
  EXPECT_EQ(f9.parse("2u+1"), f9.add(f9.mul(f9.from_int(2), f9.generator()), f9.one()));
  for (Elem e : f9.elements()) EXPECT_EQ(f9.parse(f9.format(e)), e);
  const Field f8 = Field::of_order(8);
  for (Elem e : f8.elements()) EXPECT_EQ(f8.parse(f8.format(e)), e);
  EXPECT_THROW(f9.parse("u+"), UsageError);
  EXPECT_THROW(f9.parse(""), UsageError);
  EXPECT_THROW(Field::of_order(5).parse("u"), UsageError);
}

// Exhaustive field axioms for every base field up to 27 elements.
TEST(Gf, FieldAxiomsExhaustive) {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u}) {
    const Field f = Field::of_order(q);
    for (Elem a : f.elements()) {
      EXPECT_EQ(f.add(a, f.neg(a)), f.zero());
      if (!f.is_zero(a)) {
        EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
      }
      for (Elem b : f.elements()) {
        EXPECT_EQ(f.add(a, b), f.add(b, a));
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
        for (Elem c : f.elements()) {
          ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
          ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
          ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST(Gf, CubicModulusScan) {
  const Field f2 = Field::of_order(2);
  const auto m2 = find_cubic_modulus(f2);
  EXPECT_EQ(m2, (std::array<Elem, 4>{Elem{1}, Elem{1}, Elem{0}, Elem{1}}));  // t^3+t+1
  const Field f3 = Field::of_order(3);
  const auto m3 = find_cubic_modulus(f3);
  EXPECT_EQ(m3, (std::array<Elem, 4>{Elem{1}, Elem{2}, Elem{0}, Elem{1}}));  // t^3+2t+1
  EXPECT_EQ(Tower(f3).format_modulus(), "t^3+2t+1");
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const Field f = Field::of_order(q);
    const auto m = find_cubic_modulus(f);
    for (Elem a : f.elements()) {
      const Elem v = f.add(f.mul(f.add(f.mul(f.add(a, m[2]), a), m[1]), a), m[0]);
      EXPECT_FALSE(f.is_zero(v)) << "q=" << q;
    }
  }
}

TEST(Gf, TowerRejectsReducibleCubic) {
  const Field f3 = Field::of_order(3);
  EXPECT_THROW(Tower(f3, {Elem{0}, Elem{0}, Elem{0}, Elem{1}}), UsageError);
  EXPECT_THROW(Tower(f3, {Elem{1}, Elem{2}, Elem{0}, Elem{2}}), UsageError);
}

TEST(Gf, FrobeniusOfTInExplicitTower) {
  // K = GF(3)[t]/(t^3 - t - 1): t^3 = t + 1.
  const Field f3 = Field::of_order(3);
  const Tower k(f3, {Elem{2}, Elem{2}, Elem{0}, Elem{1}});
  EXPECT_EQ(k.frobenius(k.root()), (KElem{Elem{1}, Elem{1}, Elem{0}}));
}

TEST(Gf, FrobeniusProperties) {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    const Tower k = Tower::of_order(q);
    unsigned fixed = 0;
    for (auto x : k.elements()) {
      EXPECT_EQ(k.frobenius(x, 3), x);
      if (k.frobenius(x) == x) {
        ++fixed;
        EXPECT_TRUE(k.as_base(x).has_value());
      }
    }
    EXPECT_EQ(fixed, q);
    for (Elem a : k.base().elements()) EXPECT_EQ(k.frobenius(k.embed(a)), k.embed(a));
    // additive and multiplicative on a grid of pairs
    for (unsigned i = 0; i < k.order(); i += 3)
      for (unsigned j = 0; j < k.order(); j += 5) {
        const auto x = k.decode(i), y = k.decode(j);
        EXPECT_EQ(k.frobenius(k.add(x, y)), k.add(k.frobenius(x), k.frobenius(y)));
        EXPECT_EQ(k.frobenius(k.mul(x, y)), k.mul(k.frobenius(x), k.frobenius(y)));
      }
  }
}

TEST(Gf, NormFibersAreUniform) {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    const Tower k = Tower::of_order(q);
    EXPECT_EQ(k.norm(k.zero()), k.base().zero());
    EXPECT_EQ(k.norm(k.one()), k.base().one());
    std::map<unsigned, unsigned> fiber;
    for (unsigned code = 1; code < k.order(); ++code) ++fiber[k.norm(k.decode(code)).code];
    EXPECT_EQ(fiber.size(), q - 1) << "norm not onto F^x at q=" << q;
    for (auto [value, count] : fiber) {
      EXPECT_NE(value, 0u);
      EXPECT_EQ(count, q * q + q + 1) << "q=" << q;
    }
  }
}

TEST(Gf, NormIsMultiplicative) {
  const Tower k = Tower::of_order(3);
  for (auto x : k.elements())
    for (auto y : k.elements()) ASSERT_EQ(k.norm(k.mul(x, y)), k.base().mul(k.norm(x), k.norm(y)));
}

TEST(Gf, TowerFieldAxiomsSampled) {
  const Tower k = Tower::of_order(4);
  for (unsigned i = 1; i < k.order(); ++i) {
    const auto x = k.decode(i);
    EXPECT_EQ(k.mul(x, k.inv(x)), k.one());
  }
  for (unsigned i = 0; i < k.order(); i += 7)
    for (unsigned j = 0; j < k.order(); j += 5)
      for (unsigned l = 0; l < k.order(); l += 11) {
        const auto a = k.decode(i), b = k.decode(j), c = k.decode(l);
        EXPECT_EQ(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        EXPECT_EQ(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
      }
  EXPECT_THROW(k.inv(k.zero()), DomainError);
}

TEST(Gf, TowerLiterals) {
  const Tower k = Tower::of_order(4);
  const auto x = k.parse("[u, 0, u+1]");
  EXPECT_EQ(k.format(x), "[u,0,u+1]");
  EXPECT_EQ(k.parse(k.format(x)), x);
  EXPECT_EQ(k.parse("u"), k.embed(k.base().parse("u")));
  EXPECT_THROW(k.parse("[1,0]"), UsageError);
  EXPECT_THROW(k.parse("[1,0,0,0]"), UsageError);
}
