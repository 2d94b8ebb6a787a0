#include <gtest/gtest.h>

#include <random>

#include "scatseq/criteria.hpp"
#include "support/oracle.hpp"

using namespace scatseq;
using gf::Elem;
using useq::SeqParams;

TEST(Criteria, AExponentValues) {
  EXPECT_EQ(criteria::a_exponent(4, 1, 3), 273);
  EXPECT_EQ(criteria::a_exponent(2, 1, 2), 7);
  EXPECT_EQ(criteria::a_exponent(3, 0, 2), 91);
  EXPECT_THROW(criteria::a_exponent(2, 2, 2), InvalidArgument);
}

TEST(Criteria, KInvariantMatchesPowerFormula) {
  const auto f = gf::make_field(2, 2, 3);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Elem a{std::uint32_t(1 + rng() % 63)}, b{std::uint32_t(1 + rng() % 63)}, c{std::uint32_t(1 + rng() % 63)};
    const auto params = SeqParams::make(f, 0, 1, a, b, c);
    const std::uint64_t qk = 4;
    const Elem expected = f->mul(f->mul(a, f->pow(c, qk)), f->pow(b, qk + 1));
    EXPECT_EQ(criteria::k_invariant(params), expected);
  }
}

TEST(Criteria, IrreducibilityCountAtF8MatchesClosedForm) {
  const auto f = gf::make_field(2, 1, 3);
  const auto powers = oracle::power_set(*f, 7);
  int passing = 0;
  for (std::uint32_t a = 1; a < 8; ++a)
    for (std::uint32_t b = 1; b < 8; ++b)
      for (std::uint32_t c = 1; c < 8; ++c) {
        const auto params = SeqParams::make(f, 1, 2, Elem{a}, Elem{b}, Elem{c});
        const bool holds = criteria::theorem1_holds(params);
        EXPECT_EQ(holds, powers.count(criteria::k_invariant(params).code) == 0);
        passing += holds;
      }
  EXPECT_EQ(passing, 294);
  EXPECT_EQ(criteria::scattered_triple_count(2, 3, 1, 2), 294);
}

TEST(Criteria, IrreducibilityCriterionNeedsCoprimeIndices) {
  const auto f = gf::make_field(2, 1, 4);
  const auto params = SeqParams::make(f, 0, 2, Elem{2}, Elem{3}, Elem{5});
  EXPECT_FALSE(criteria::theorem1_holds(params));
}

TEST(Criteria, CValue) {
  EXPECT_EQ(criteria::c_value(2, 3, 1), 1);
  EXPECT_EQ(criteria::c_value(2, 3, 2), 9);
  EXPECT_EQ(criteria::c_value(4, 12, 3), (ipow(4, 36) - 1) / (ipow(4, 12) - 1));
  EXPECT_THROW(criteria::c_value(2, 3, 0), InvalidArgument);
}

TEST(Criteria, GoodExtensionsMatchDirectGcd) {
  const BigInt a = criteria::a_exponent(2, 1, 2);
  const auto good = criteria::find_good_extensions(2, 3, a, 12);
  std::vector<int> expected;
  for (int m = 1; m <= 12; ++m) {
    const BigInt c = (ipow(2, 3 * m) - 1) / 7;
    if (gcd(c, a) == 1) expected.push_back(m);
  }
  EXPECT_EQ(good, expected);
  EXPECT_EQ(std::count(good.begin(), good.end(), 7), 0);
  EXPECT_THROW(criteria::find_good_extensions(2, 3, 6, 4), InvalidArgument);
}

TEST(Criteria, ExceptionalCertificateAgreesWithEmbedding) {
  const auto f = gf::make_field(2, 1, 3);
  const auto params = SeqParams::make(f, 1, 2, Elem{2}, Elem{3}, Elem{4});
  ASSERT_TRUE(criteria::theorem1_holds(params));
  const auto cert = criteria::exceptional_certificate(params, 12);
  ASSERT_EQ(cert.entries.size(), 12U);
  for (const auto& e : cert.entries) {
    if (e.direct_checked && e.passes) {
      EXPECT_TRUE(e.direct_not_power) << "m=" << e.m;
    }
  }
  EXPECT_TRUE(cert.entries[7].direct_checked);  // m = 8, F_{2^24}
  EXPECT_FALSE(cert.entries[8].direct_checked);
  const auto fails = SeqParams::make(f, 1, 2, Elem{1}, Elem{1}, Elem{1});
  EXPECT_THROW(criteria::exceptional_certificate(fails, 4), InvalidArgument);
}

TEST(Criteria, ClassLowerBoundForTheQ4N12Example) {
  const auto b = criteria::class_lower_bound(4, 12, 1, 3);
  EXPECT_EQ(b.g3, 4095);
  EXPECT_EQ(b.g_a, 273);
  EXPECT_EQ(b.three_nh, 72);
  EXPECT_EQ(b.raw, "4080/72");
  EXPECT_EQ(b.value, BigRational(170, 3));
  EXPECT_EQ(b.floor, 56);
  EXPECT_EQ(b.ceil, 57);
  ASSERT_EQ(b.notes.size(), 1U);
  EXPECT_NE(b.notes[0].find("62"), std::string::npos);
}

TEST(Criteria, ClassLowerBoundDegenerateCases) {
  const auto b = criteria::class_lower_bound(2, 5, 1, 2);
  EXPECT_EQ(b.g3, 1);
  EXPECT_EQ(b.value, 0);
  EXPECT_TRUE(b.notes.empty());
  EXPECT_EQ(criteria::class_lower_bound(2, 6, 1, 2).floor, 0);
  EXPECT_THROW(criteria::class_lower_bound(6, 6, 1, 2), InvalidArgument);
}

TEST(Criteria, PrimePower) {
  EXPECT_EQ(criteria::prime_power(8), (std::optional<std::pair<std::uint64_t, int>>{{2, 3}}));
  EXPECT_EQ(criteria::prime_power(7), (std::optional<std::pair<std::uint64_t, int>>{{7, 1}}));
  EXPECT_FALSE(criteria::prime_power(12).has_value());
  EXPECT_FALSE(criteria::prime_power(1).has_value());
}

TEST(Criteria, ReportNotes) {
  const auto f = gf::make_field(2, 1, 3);
  const auto r = criteria::make_report(SeqParams::make(f, 1, 2, Elem{1}, Elem{1}, Elem{1}));
  EXPECT_FALSE(r.theorem1);
  EXPECT_EQ(r.a_exponent, 7);
  EXPECT_FALSE(r.notes.empty());
}

// Fraction of triples passing the criterion at q = 4, n = 12 should be
// 1 - 1/gcd(A, q^n - 1) = 1 - 1/273.
TEST(Criteria, PassingProportionAtQ4N12) {
  const auto f = gf::make_field(2, 2, 12);
  std::mt19937_64 rng(2024);
  const int samples = 100000;
  int failing = 0;
  for (int t = 0; t < samples; ++t) {
    auto draw = [&] { return Elem{static_cast<std::uint32_t>(1 + rng() % f->order())}; };
    const Elem a = draw(), b = draw(), c = draw();
    failing += !criteria::theorem1_holds(SeqParams::make(f, 1, 3, a, b, c));
  }
  const double expected = 1.0 / 273.0;
  const double sd = std::sqrt(expected * (1 - expected) / samples);
  EXPECT_NEAR(static_cast<double>(failing) / samples, expected, 5 * sd);
}
