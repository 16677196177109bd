#include <benchmark/benchmark.h>

#include <random>

#include "robust_synth/abstraction/builder.hpp"
#include "robust_synth/models/gaussian.hpp"
#include "robust_synth/scltl/dfa.hpp"
#include "robust_synth/synthesis/value_iteration.hpp"

using namespace robust_synth;
using Eigen::MatrixXd;
using Eigen::Vector2d;

namespace {

models::LinearModel case_model() {
  return models::LinearModel(0.9 * MatrixXd::Identity(2, 2), 0.7 * MatrixXd::Identity(2, 2),
                             MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2), Vector2d::Zero());
}

void BM_StdNormalCdf(benchmark::State& state) {
  double x = -6.0, acc = 0.0;
  for (auto _ : state) {
    acc += models::std_normal_cdf(x);
    x = x > 6.0 ? -6.0 : x + 1e-3;
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_StdNormalCdf);

void BM_CompileReachAvoid(benchmark::State& state) {
  const std::vector<std::string> ap{"p1", "p2", "p3"};
  const auto phi = scltl::parse_formula("((!p2) U p1) & F (p3 & X p1)", ap);
  for (auto _ : state) benchmark::DoNotOptimize(scltl::compile_to_dfa(phi, ap));
}
BENCHMARK(BM_CompileReachAvoid)->Unit(benchmark::kMicrosecond);

void BM_AbstractLinear(benchmark::State& state) {
  const auto model = case_model();
  const auto n = static_cast<std::size_t>(state.range(0));
  const abstraction::Grid grid(Box({-10, -10}, {10, 10}), {n, n});
  for (auto _ : state) benchmark::DoNotOptimize(abstraction::abstract_linear(model, grid, {Vector2d::Zero()}));
}
BENCHMARK(BM_AbstractLinear)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

void BM_BellmanSweep(benchmark::State& state) {
  const auto model = case_model();
  const abstraction::Grid grid(Box({-10, -10}, {10, 10}), {41, 41});
  const auto abs = abstraction::abstract_linear(model, grid, abstraction::input_sampling(Box({-1, -1}, {1, 1}), {3, 3}));
  const std::vector<std::string> ap{"p1", "p2"};
  const auto dfa = scltl::compile_to_dfa(scltl::parse_formula("(!p2) U p1", ap), ap);
  const models::LabelingMap labels(ap, {{"p1", Box({4, -4}, {10, 0})}, {"p2", Box({4, 0}, {10, 4})}});
  const synthesis::RobustProduct product(abs.mdp, dfa, labels, 0.5);
  synthesis::ValueTable V(abs.mdp.num_states(), dfa.num_locations());
  for (auto _ : state) V = synthesis::robust_bellman_backup(V, product, 0.05);
  state.counters["nnz"] = static_cast<double>(abs.mdp.nnz());
}
BENCHMARK(BM_BellmanSweep)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
