#include <benchmark/benchmark.h>

#include "scatseq/equiv.hpp"
#include "scatseq/verify.hpp"

using namespace scatseq;
using gf::Elem;
using useq::SeqParams;

namespace {

void BM_ScatteredOracle(benchmark::State& state) {
  const auto f = gf::make_field(2, 1, static_cast<int>(state.range(0)));
  const auto params = SeqParams::make(f, 1, 2, Elem{2}, Elem{1}, Elem{1});
  for (auto _ : state) benchmark::DoNotOptimize(verify::scattered_oracle(params).verdict);
}
BENCHMARK(BM_ScatteredOracle)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_SpanDim(benchmark::State& state) {
  const auto f = gf::make_field(2, 1, 6);
  const auto params = SeqParams::make(f, 1, 2, Elem{2}, Elem{1}, Elem{1});
  const verify::IntersectionCounter counter(params);
  const std::vector<useq::UPoint> gens{useq::point_at(params, 5), useq::point_at(params, 77),
                                       useq::point_at(params, 1234)};
  for (auto _ : state) benchmark::DoNotOptimize(counter.span_dim(gens));
}
BENCHMARK(BM_SpanDim);

void BM_Equivalent(benchmark::State& state) {
  const auto f = gf::make_field(2, 1, 7);
  const auto a = SeqParams::make(f, 1, 2, Elem{3}, Elem{5}, Elem{7});
  const auto b = SeqParams::make(f, 1, 2, Elem{9}, Elem{11}, Elem{13});
  for (auto _ : state) benchmark::DoNotOptimize(equiv::equivalent(a, b).status);
}
BENCHMARK(BM_Equivalent);

}  // namespace
