#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "ltlab/core/rng.hpp"
#include "ltlab/gaussian/sampler.hpp"
#include "ltlab/kernels/batch.hpp"
#include "ltlab/kernels/parallel.hpp"
#include "ltlab/localtime/histogram.hpp"

namespace {

using ltlab::kernels::Execution;

Eigen::MatrixXd spd(Eigen::Index n) {
  ltlab::RngStream rng(11, {1, 0});
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.normal();
  return g * g.transpose() / static_cast<double>(n);
}

void BM_QuadraticFormsReference(benchmark::State& st) {
  const Eigen::MatrixXd a = spd(st.range(0));
  const ltlab::RngStream rng(5, {2, 0});
  for (auto _ : st) benchmark::DoNotOptimize(ltlab::kernels::quadratic_forms_reference(a, rng, 2048));
  st.SetItemsProcessed(st.iterations() * 2048);
}

void BM_QuadraticFormsSerial(benchmark::State& st) {
  const Eigen::MatrixXd a = spd(st.range(0));
  const ltlab::RngStream rng(5, {2, 0});
  for (auto _ : st) benchmark::DoNotOptimize(ltlab::kernels::quadratic_forms(a, rng, 2048, Execution::serial));
  st.SetItemsProcessed(st.iterations() * 2048);
}

void BM_QuadraticFormsParallel(benchmark::State& st) {
  const Eigen::MatrixXd a = spd(st.range(0));
  const ltlab::RngStream rng(5, {2, 0});
  for (auto _ : st) benchmark::DoNotOptimize(ltlab::kernels::quadratic_forms(a, rng, 2048, Execution::parallel));
  st.SetItemsProcessed(st.iterations() * 2048);
}

Eigen::MatrixXd replica_matrix(Eigen::Index rows, Eigen::Index cols) {
  ltlab::RngStream rng(3, {3, 0});
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
  return m;
}

void BM_SampleCovarianceReference(benchmark::State& st) {
  const Eigen::MatrixXd m = replica_matrix(20000, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(ltlab::kernels::sample_covariance_reference(m));
}

void BM_SampleCovarianceParallel(benchmark::State& st) {
  const Eigen::MatrixXd m = replica_matrix(20000, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(ltlab::kernels::sample_covariance(m, Execution::parallel));
}

// Replica loop of the Monte Carlo scans: draw an fBm path and evaluate L̂(0, [0, 1]).
void replica_loop(benchmark::State& st, Execution exec) {
  const ltlab::TimeGrid grid(0.0, 1.0, static_cast<std::size_t>(st.range(0)));
  const ltlab::gaussian::GaussianSampler sampler(ltlab::gaussian::CovarianceSpec::fbm(0.3), grid);
  const ltlab::ProcessSpec spec = ltlab::ProcessSpec::defaults(ltlab::ProcessClass::fbm, 1, 0.3);
  const ltlab::RngStream rng(9, {4, 0});
  const std::size_t replicas = 64;
  std::vector<double> out(replicas);
  const double x0 = 0.0;
  for (auto _ : st) {
    ltlab::kernels::for_each_replica(replicas, exec, [&](std::size_t r) {
      ltlab::RngStream s = rng.replica(static_cast<std::uint32_t>(r));
      const ltlab::SamplePath p = sampler.sample(1, s, spec);
      out[r] = ltlab::localtime::occupation_at(p, {0.0, 1.0}, std::span<const double>(&x0, 1), 0.05);
    });
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(replicas));
}

void BM_ReplicaLoopSerial(benchmark::State& st) { replica_loop(st, Execution::serial); }
void BM_ReplicaLoopParallel(benchmark::State& st) { replica_loop(st, Execution::parallel); }

}  // namespace

BENCHMARK(BM_QuadraticFormsReference)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadraticFormsSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadraticFormsParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleCovarianceReference)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleCovarianceParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReplicaLoopSerial)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReplicaLoopParallel)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
