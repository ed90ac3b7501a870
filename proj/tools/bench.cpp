// Microbenchmarks: per-encoder search cost and the Monte Carlo engine in
// serial and OpenMP form (identical results, see tests).
#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "bdvp/channel.hpp"
#include "bdvp/perturbation.hpp"
#include "bdvp/precoder.hpp"
#include "bdvp/rng.hpp"
#include "bdvp/simulator.hpp"

namespace {

// One fixed per-user search problem of the (8,2,4) layout: 8 real
// dimensions, QPSK data, T = 7 candidates.
struct SearchProblem {
  Eigen::MatrixXd lower;
  Eigen::VectorXd s;
  double tau = 4.0;
  bdvp::CandidateSet set{3};
};

SearchProblem make_problem() {
  bdvp::Philox rng(42);
  Eigen::MatrixXcd h(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) h(r, c) = rng.next_cgaussian(1.0);
  }
  SearchProblem problem;
  problem.lower = bdvp::search_factor(bdvp::complex_to_real(h),
                                      bdvp::Criterion::kZf, 0.0, 4.0)
                      .lower;
  problem.s.resize(8);
  for (int i = 0; i < 8; ++i) problem.s(i) = rng.next_bit() ? 1.0 : -1.0;
  return problem;
}

bdvp::SimConfig engine_config() {
  bdvp::SimConfig cfg;
  cfg.dims = {4, 2, 2};
  cfg.modulation = bdvp::Modulation::kQpsk;
  cfg.criterion = bdvp::Criterion::kMmse;
  cfg.encoder = bdvp::Encoder::kQrdm;
  cfg.a = 1;
  cfg.snr_list = {10.0};
  cfg.min_channel_uses = 500;
  cfg.seed = 7;
  return cfg;
}

void BM_EncodeThp(benchmark::State& state) {
  const SearchProblem pr = make_problem();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bdvp::thp_encode(pr.lower, pr.s, pr.tau, pr.set));
  }
}
BENCHMARK(BM_EncodeThp);

void BM_EncodeFse(benchmark::State& state) {
  const SearchProblem pr = make_problem();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bdvp::fse_encode(pr.lower, pr.s, pr.tau, pr.set, 1));
  }
}
BENCHMARK(BM_EncodeFse);

void BM_EncodeQrdm(benchmark::State& state) {
  const SearchProblem pr = make_problem();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bdvp::qrdm_encode(pr.lower, pr.s, pr.tau, pr.set, pr.set.size()));
  }
}
BENCHMARK(BM_EncodeQrdm);

void BM_EncodeExhaustive(benchmark::State& state) {
  const SearchProblem pr = make_problem();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bdvp::exhaustive_encode(pr.lower, pr.s, pr.tau, pr.set));
  }
}
BENCHMARK(BM_EncodeExhaustive);

void BM_RunBerSerial(benchmark::State& state) {
  const bdvp::SimConfig cfg = engine_config();
  for (auto _ : state) {
    benchmark::DoNotOptimize(bdvp::run_ber_serial(cfg));
  }
}
BENCHMARK(BM_RunBerSerial)->Unit(benchmark::kMillisecond);

void BM_RunBerParallel(benchmark::State& state) {
  const bdvp::SimConfig cfg = engine_config();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bdvp::run_ber(cfg, threads));
  }
}
BENCHMARK(BM_RunBerParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(0)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
