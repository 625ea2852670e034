#include <benchmark/benchmark.h>

#include <random>

#include "holo/annihilator.hpp"
#include "holo/arith_parser.hpp"
#include "holo/linalg.hpp"
#include "holo/oracle.hpp"

using namespace holo;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

PMatrix random_matrix(std::size_t rows, std::size_t cols) {
  auto ctx = make_context({"n"});
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-9, 9), d(0, 2);
  PMatrix m(rows, std::vector<Polynomial>(cols, Polynomial(ctx)));
  for (auto& row : m)
    for (auto& e : row) {
      std::vector<Polynomial::Term> ts;
      for (int t = 0; t < 3; ++t) {
        Exponents ex;
        ex[0] = static_cast<std::uint16_t>(d(rng));
        ts.push_back({ex, c(rng)});
      }
      e = Polynomial::from_terms(ctx, ts);
    }
  return m;
}

void BM_FractionFree(benchmark::State& state) {
  auto m = random_matrix(6, 8);
  for (auto _ : state) benchmark::DoNotOptimize(fraction_free_reduce(m, 8, mode(state)));
}
BENCHMARK(BM_FractionFree)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

void BM_Buchberger(benchmark::State& state) {
  auto alg = OreAlgebra::create(parse_generators("S[n], Der[x], Der[y]"));
  auto g = annihilator("chebyshevT(n, 1-x^2*y)/sqrt(1-x^2)", alg);
  // Generators mixed up so that Buchberger has pairs to reduce.
  std::vector<OrePolynomial> gens;
  for (std::size_t i = 0; i < g.size(); ++i) gens.push_back(g.elements()[i] + g.elements()[(i + 1) % g.size()]);
  GroebnerOptions opt;
  opt.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(buchberger(gens, default_order(*alg), opt));
}
BENCHMARK(BM_Buchberger)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

void BM_OracleGrid(benchmark::State& state) {
  auto alg = OreAlgebra::create(parse_generators("S[n], S[a], Der[x]"));
  auto e = parse_expression("laguerreL(n, a, x)");
  auto g = annihilator(e, alg);
  std::vector<mpq_class> ns, as;
  for (int i = 0; i < 12; ++i) ns.push_back(i);
  for (int i = 1; i <= 4; ++i) as.push_back(i);
  auto grid = SampleGrid::product({{"n", ns}, {"a", as}, {"x", {mpq_class(1, 2), 2, mpq_class(7, 3)}}});
  for (auto _ : state) benchmark::DoNotOptimize(check_annihilator(g.elements(), e, grid, mode(state)));
}
BENCHMARK(BM_OracleGrid)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
