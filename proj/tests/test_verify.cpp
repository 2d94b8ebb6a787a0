#include <gtest/gtest.h>

#include <random>

#include "scatseq/criteria.hpp"
#include "scatseq/report.hpp"
#include "scatseq/verify.hpp"
#include "support/oracle.hpp"

using namespace scatseq;
using gf::Elem;
using useq::SeqParams;
using useq::UPoint;

namespace {

SeqParams f8(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  static const auto field = gf::make_field(2, 1, 3);
  return SeqParams::make(field, 1, 2, Elem{a}, Elem{b}, Elem{c});
}

std::vector<SeqParams> all_f8_triples() {
  std::vector<SeqParams> out;
  for (std::uint32_t a = 1; a < 8; ++a)
    for (std::uint32_t b = 1; b < 8; ++b)
      for (std::uint32_t c = 1; c < 8; ++c) out.push_back(f8(a, b, c));
  return out;
}

}  // namespace

TEST(Verify, ScatteredAgreesWithRankOneEvasive) {
  for (const auto& params : all_f8_triples()) {
    const auto s = verify::scattered_oracle(params);
    const auto e = verify::evasive_oracle(params, 1, 1);
    EXPECT_EQ(s.verdict, e.verdict);
    if (criteria::theorem1_holds(params)) EXPECT_TRUE(s.verdict);
  }
}

TEST(Verify, ScatteredWitnessRechecks) {
  bool found = false;
  for (const auto& params : all_f8_triples()) {
    auto r = verify::scattered_oracle(params);
    if (r.verdict) continue;
    found = true;
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(verify::recheck_witness(params, r));
    EXPECT_GE(r.max_dim_found, 2);
    r.witness->lambda = Elem{1};  // an F_q multiple proves nothing
    EXPECT_FALSE(verify::recheck_witness(params, r));
    break;
  }
  EXPECT_TRUE(found) << "expected at least one non-scattered triple over F_8";
}

TEST(Verify, SpanDimMatchesEnumeration) {
  std::mt19937_64 rng(17);
  for (const auto& params : {f8(2, 3, 4), f8(1, 1, 1), f8(5, 6, 7)}) {
    const verify::IntersectionCounter counter(params);
    int checked = 0;
    while (checked < 150) {
      const int r = 1 + checked % 3;
      std::vector<UPoint> gens;
      for (int i = 0; i < r; ++i) gens.push_back(useq::point_at(params, 1 + rng() % 511));
      if (!counter.independent(gens)) continue;
      EXPECT_EQ(counter.span_dim(gens), oracle::span_dim_by_enumeration(params, gens));
      EXPECT_GE(counter.span_dim(gens), r);
      ++checked;
    }
  }
}

TEST(Verify, SpanDimRejectsBadGenerators) {
  const auto params = f8(2, 3, 4);
  const UPoint u = useq::evaluate(params, Elem{1}, Elem{0}, Elem{0});
  EXPECT_EQ(verify::span_dim(params, std::vector<UPoint>{u}), 1);
  EXPECT_THROW(verify::span_dim(params, std::vector<UPoint>{u, u}), InvalidArgument);
  EXPECT_THROW(verify::span_dim(params, std::vector<UPoint>{}), InvalidArgument);
}

TEST(Verify, EvasiveWitnessRechecks) {
  const auto params = f8(2, 3, 4);
  const auto r = verify::evasive_oracle(params, 2, 2);
  ASSERT_FALSE(r.verdict);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_GT(r.witness->dim, 2);
  EXPECT_TRUE(verify::recheck_witness(params, r));
  auto broken = r;
  broken.witness->intersection.pop_back();
  EXPECT_FALSE(verify::recheck_witness(params, broken));
}

TEST(Verify, EvasivePairsHoldForPassingTriple) {
  const auto params = f8(2, 3, 4);
  const auto r = verify::evasive_oracle(params, 2, 4);
  EXPECT_TRUE(r.verdict);
  EXPECT_TRUE(r.certified);
  EXPECT_EQ(r.points_visited, 511U * 510U / 2U);
  EXPECT_EQ(r.assumptions.size(), 1U);
}

TEST(Verify, SampledRunsAreDeterministicAndUncertified) {
  const auto params = f8(2, 3, 4);
  const verify::SampleSpec sampling{3000, 42};
  const auto a = verify::evasive_oracle(params, 3, 7, sampling, {verify::kDefaultBudget, 1});
  const auto b = verify::evasive_oracle(params, 3, 7, sampling, {verify::kDefaultBudget, 4});
  EXPECT_FALSE(a.certified);
  EXPECT_EQ(report::dump(report::to_json(a)), report::dump(report::to_json(b)));
  ASSERT_EQ(a.assumptions.size(), 2U);
}

TEST(Verify, ThreadCountDoesNotChangeReports) {
  const auto params = f8(1, 1, 1);
  const auto a = verify::scattered_oracle(params, {verify::kDefaultBudget, 1});
  const auto b = verify::scattered_oracle(params, {verify::kDefaultBudget, 3});
  EXPECT_EQ(report::dump(report::to_json(a)), report::dump(report::to_json(b)));
  const auto c = verify::evasive_oracle(params, 2, 2, {}, {verify::kDefaultBudget, 1});
  const auto d = verify::evasive_oracle(params, 2, 2, {}, {verify::kDefaultBudget, 5});
  EXPECT_EQ(report::dump(report::to_json(c)), report::dump(report::to_json(d)));
}

TEST(Verify, BudgetIsAHardError) {
  const auto params = SeqParams::make(gf::make_field(2, 1, 6), 1, 2, Elem{1}, Elem{1}, Elem{2});
  EXPECT_THROW(verify::scattered_oracle(params, {1000, 1}), BudgetExceeded);
  EXPECT_THROW(verify::evasive_oracle(params, 2, 4, {}, {1000, 1}), BudgetExceeded);
  EXPECT_THROW(verify::evasive_oracle(params, 4, 4), InvalidArgument);
}

TEST(Verify, TightnessOverAllMoorePairs) {
  const auto params = f8(2, 3, 4);
  const auto& f = params.field();
  int nonsingular = 0;
  for (std::uint32_t l1 = 0; l1 < 8; ++l1) {
    for (std::uint32_t l2 = 0; l2 < 8; ++l2) {
      if (verify::moore_determinant(params, Elem{l1}, Elem{l2}) == gf::Field::zero()) {
        EXPECT_THROW(verify::tightness_witness(params, Elem{l1}, Elem{l2}), InvalidArgument);
        continue;
      }
      ++nonsingular;
      const auto t = verify::tightness_witness(params, Elem{l1}, Elem{l2});
      EXPECT_GE(t.dim, 3);
      EXPECT_TRUE(t.ok);
      std::vector<std::vector<Elem>> gens;
      for (const auto& g : t.generators) gens.push_back(useq::to_vector(g));
      for (std::uint32_t mu = 0; mu < 8; ++mu) {
        const auto target = useq::to_vector(useq::evaluate(params, Elem{mu}, gf::Field::zero(), gf::Field::zero()));
        EXPECT_TRUE(linalg::solve_ext(f, gens, target).has_value());
      }
    }
  }
  EXPECT_GT(nonsingular, 0);
  EXPECT_THROW(verify::tightness_witness(params, Elem{3}, Elem{3}), InvalidArgument);
}
