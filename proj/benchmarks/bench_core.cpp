#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include <zerofn/lift.hpp>
#include <zerofn/null_ideal.hpp>
#include <zerofn/oracle.hpp>
#include <zerofn/poly.hpp>
#include <zerofn/ring.hpp>

using namespace zerofn;

static void BM_RingMul(benchmark::State& state) {
  Ring ring = Ring::mod_prime_power(5, 3);
  std::mt19937_64 gen(1);
  std::vector<Elem> xs(4096), ys(4096);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = Elem(gen() % ring.order());
    ys[i] = Elem(gen() % ring.order());
  }
  for (auto _ : state) {
    Elem acc = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      acc = ring.add(acc, ring.mul(xs[i], ys[i]));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * xs.size());
}
BENCHMARK(BM_RingMul);

static void BM_EvaluateEverywhere(benchmark::State& state) {
  Ring ring = Ring::mod_prime_power(5, 3);
  Polynomial f = parse_polynomial(ring, "x^6 + 24x^5 + 85x^2 + 3x + 7");
  for (auto _ : state) {
    Elem acc = 0;
    for (Elem x = 0; x < ring.order(); ++x)
      acc = ring.add(acc, f.evaluate(x));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * ring.order());
}
BENCHMARK(BM_EvaluateEverywhere);

static void BM_MembershipRule(benchmark::State& state) {
  Ring ring = Ring::mod_prime_power(3, 2);
  StructuredIdeal zr = null_ring_generators(ring);
  Polynomial f = parse_polynomial(ring, "x^6 + 3x^5 + 4x^4 + 6x^3 + 4x^2");
  for (auto _ : state) {
    MembershipReport rep = ideal_membership(f, zr);
    benchmark::DoNotOptimize(rep.member);
  }
}
BENCHMARK(BM_MembershipRule);

static void BM_ExhaustiveSlice(benchmark::State& state) {
  Ring ring = Ring::mod_prime_power(3, 2);
  std::uint32_t D = std::uint32_t(state.range(0));
  for (auto _ : state) {
    Slice s = exhaustive_null_slice(ring, Target::maximal_ideal(),
                                    std::nullopt, D);
    benchmark::DoNotOptimize(s.members.size());
  }
}
BENCHMARK(BM_ExhaustiveSlice)->Arg(4)->Arg(5)->Arg(6);

static void BM_RuleSlice(benchmark::State& state) {
  Ring ring = Ring::mod_prime_power(2, 3);
  StructuredIdeal zm = null_maximal_generators(ring);
  for (auto _ : state) {
    Slice s = ideal_slice(zm, 5);
    benchmark::DoNotOptimize(s.members.size());
  }
}
BENCHMARK(BM_RuleSlice);

static void BM_FactorPi(benchmark::State& state) {
  Ring ring = Ring::mod_prime_power(5, 3);
  Polynomial f = parse_polynomial(ring, "x^5+5x^4+40x^3+85x^2+24x+50");
  for (auto _ : state) {
    FactorResult fr = factor_pi_polynomial(f);
    benchmark::DoNotOptimize(fr.roots.data());
  }
}
BENCHMARK(BM_FactorPi);

static void BM_IntersectionCheck(benchmark::State& state) {
  Ring ring = Ring::mod_prime_power(3, 2);
  Polynomial pi = pi_polynomial(ring);
  Polynomial f = pi * pi;
  IntersectionMode mode;
  for (auto _ : state) {
    IntersectionReport rep = pi_intersection_check(f, mode);
    benchmark::DoNotOptimize(rep.divisible_by_all);
  }
}
BENCHMARK(BM_IntersectionCheck);

BENCHMARK_MAIN();
