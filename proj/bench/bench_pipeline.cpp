// Serial reference path against the OpenMP grid evaluation. Each iteration
// builds a fresh Pipeline so the β memo starts empty.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "nj/oracle.hpp"
#include "nj/pipeline.hpp"

using namespace nj;

namespace {

PipelineInput instance(int which) {
  std::mt19937_64 rng(100 + which);
  return oracle::random_instance(rng, 3 + which % 2, 2, 6);
}

void BM_EvaluateSerial(benchmark::State& st) {
  auto in = instance(static_cast<int>(st.range(0)));
  auto orders = candidate_orders(enumerate_theta_packages(in));
  for (auto _ : st) {
    Pipeline P(in);
    P.evaluate_serial(orders);
    benchmark::DoNotOptimize(P.motivic_beta(orders.empty() ? Int(2) : orders[0]));
  }
  st.counters["orders"] = static_cast<double>(orders.size());
}

void BM_EvaluateParallel(benchmark::State& st) {
  auto in = instance(static_cast<int>(st.range(0)));
  auto orders = candidate_orders(enumerate_theta_packages(in));
  PipelineOptions opts;
  opts.jobs = static_cast<int>(st.range(1));
  for (auto _ : st) {
    Pipeline P(in, opts);
    P.evaluate(orders);
    benchmark::DoNotOptimize(P.motivic_beta(orders.empty() ? Int(2) : orders[0]));
  }
  st.counters["threads"] = opts.jobs;
}

void BM_ChiSuite(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(oracle::check_chi_routes(1, 20, static_cast<int>(st.range(0))));
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Args({0, 1})->Args({0, 2})->Args({0, 4})->Args({1, 1})->Args({1, 4})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChiSuite)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
