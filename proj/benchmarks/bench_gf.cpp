#include <benchmark/benchmark.h>

#include <random>

#include "scatseq/gf.hpp"

using namespace scatseq;
using gf::Elem;

namespace {

std::vector<Elem> random_elems(const gf::Field& f, std::size_t count) {
  std::mt19937_64 rng(1);
  std::vector<Elem> out(count);
  for (auto& e : out) e = Elem{static_cast<std::uint32_t>(1 + rng() % f.order())};
  return out;
}

void BM_Mul(benchmark::State& state) {
  const auto f = gf::make_field(2, 1, static_cast<int>(state.range(0)));
  const auto xs = random_elems(*f, 1024);
  std::size_t i = 0;
  Elem acc = gf::Field::one();
  for (auto _ : state) {
    acc = f->mul(acc, xs[i++ & 1023]);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_Mul)->Arg(6)->Arg(12)->Arg(20)->Arg(24);

void BM_Dlog(benchmark::State& state) {
  const auto f = gf::make_field(2, 1, static_cast<int>(state.range(0)));
  const auto xs = random_elems(*f, 1024);
  f->dlog(xs[0]);  // build tables outside the timed loop
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(f->dlog(xs[i++ & 1023]));
}
BENCHMARK(BM_Dlog)->Arg(12)->Arg(20)->Arg(24);

void BM_Frob(benchmark::State& state) {
  const auto f = gf::make_field(2, 2, static_cast<int>(state.range(0)));
  const auto xs = random_elems(*f, 1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(f->frob(xs[i++ & 1023], 3));
}
BENCHMARK(BM_Frob)->Arg(6)->Arg(12);

}  // namespace
