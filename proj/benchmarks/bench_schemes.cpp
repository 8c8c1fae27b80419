#include <benchmark/benchmark.h>

#include <cfr/channel.hpp>
#include <cfr/lattice.hpp>
#include <cfr/schemes.hpp>

using namespace cfr;

namespace {

NetworkConfig bench_cfg(double snr_db) {
  NetworkConfig cfg;
  cfg.num_users = 2;
  cfg.num_relays = 3;
  cfg.snr_t = std::pow(10.0, snr_db / 10.0);
  cfg.snr_r = cfg.snr_t;
  return cfg;
}

void bench_scheme(benchmark::State& state, SchemeId id) {
  NetworkConfig cfg = bench_cfg(static_cast<double>(state.range(0)));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    RandomStream rng = RandomStream::substream(1, 0, trial++);
    ChannelRealization real = sample_realization(cfg, rng);
    benchmark::DoNotOptimize(evaluate(id, real, cfg).end_to_end_rate);
  }
}

void bench_min_form_vector(benchmark::State& state) {
  NetworkConfig cfg = bench_cfg(static_cast<double>(state.range(0)));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    RandomStream rng = RandomStream::substream(2, 0, trial++);
    ChannelRealization real = sample_realization(cfg, rng);
    QuadraticForm V = cmf_form(real.h.col(0), cfg.snr_t);
    double radius = std::min(1.0 + cfg.snr_t * real.h.col(0).squaredNorm(), kRelayEcvSearchCap);
    benchmark::DoNotOptimize(
        min_form_vector(V, SearchBudget{radius, SearchBudget{}.hard_cap},
                        GaussianIntMatrix::empty(2))
            .value);
  }
}

}  // namespace

BENCHMARK_CAPTURE(bench_scheme, cmf, SchemeId::cmf)->Arg(10)->Arg(20);
BENCHMARK_CAPTURE(bench_scheme, icmf, SchemeId::icmf)->Arg(10)->Arg(20);
BENCHMARK_CAPTURE(bench_scheme, afc, SchemeId::afc)->Arg(10)->Arg(20);
BENCHMARK_CAPTURE(bench_scheme, hcaf, SchemeId::hcaf)->Arg(10)->Arg(20);
BENCHMARK(bench_min_form_vector)->Arg(10)->Arg(20);

BENCHMARK_MAIN();
