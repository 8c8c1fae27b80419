#include "cfr/simrunner.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

namespace cfr {

void SweepSpec::validate() const {
  if (snr_db_points.empty()) throw ContractViolation("empty SNR grid");
  for (std::size_t i = 1; i < snr_db_points.size(); ++i) {
    if (!(snr_db_points[i] > snr_db_points[i - 1])) {
      throw ContractViolation("SNR grid must be strictly increasing");
    }
  }
  if (trials < 1) throw ContractViolation("trials must be >= 1");
  if (schemes.empty()) throw ContractViolation("no schemes selected");
  if (threads < 0) throw ContractViolation("threads must be >= 0");
}

std::pair<double, double> wilson_interval(std::size_t x, std::size_t n) {
  constexpr double z = 1.959963984540054;
  if (n == 0) return {0.0, 1.0};
  double p = static_cast<double>(x) / static_cast<double>(n);
  double z2 = z * z;
  double denom = 1.0 + z2 / static_cast<double>(n);
  double center = p + z2 / (2.0 * static_cast<double>(n));
  double half = z * std::sqrt(p * (1.0 - p) / static_cast<double>(n) +
                              z2 / (4.0 * static_cast<double>(n) * static_cast<double>(n)));
  double lo = x == 0 ? 0.0 : (center - half) / denom;
  double hi = x == n ? 1.0 : (center + half) / denom;
  return {std::max(0.0, lo), std::min(1.0, hi)};
}

namespace {

NetworkConfig at_snr(const NetworkConfig& base, double snr_db) {
  NetworkConfig cfg = base;
  cfg.snr_t = std::pow(10.0, snr_db / 10.0);
  cfg.snr_r = std::pow(10.0, (snr_db + base.snr_r_db_offset) / 10.0);
  return cfg;
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Runs fn(trial) for trial in [0, trials) across workers.  Order-insensitive:
// each call only increments atomic counters.
void parallel_trials(std::size_t trials, int threads, const std::function<void(std::size_t)>& fn) {
  int nw = worker_count(threads);
  if (nw <= 1 || trials < 2) {
    for (std::size_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::atomic<bool> failed{false};
  std::exception_ptr err;
  std::mutex err_mu;
  pool.reserve(static_cast<std::size_t>(nw));
  for (int w = 0; w < nw; ++w) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        std::size_t t = next.fetch_add(1, std::memory_order_relaxed);
        if (t >= trials) break;
        try {
          fn(t);
        } catch (...) {
          std::lock_guard lk(err_mu);
          if (!err) err = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

std::vector<OutagePoint> estimate_outage(const NetworkConfig& base, const SweepSpec& spec) {
  base.validate();
  spec.validate();

  const std::size_t np = spec.snr_db_points.size();
  const std::size_t ns = spec.schemes.size();
  // outage counters, scheme-major
  std::vector<std::atomic<std::size_t>> counts(np * ns);
  for (auto& c : counts) c.store(0);

  for (std::size_t pi = 0; pi < np; ++pi) {
    NetworkConfig cfg = at_snr(base, spec.snr_db_points[pi]);
    parallel_trials(spec.trials, spec.threads, [&](std::size_t trial) {
      if (spec.paired) {
        RandomStream rng = RandomStream::substream(spec.master_seed, pi, trial);
        ChannelRealization real = sample_realization(cfg, rng);
        for (std::size_t si = 0; si < ns; ++si) {
          if (evaluate(spec.schemes[si], real, cfg).outage) {
            counts[si * np + pi].fetch_add(1, std::memory_order_relaxed);
          }
        }
      } else {
        for (std::size_t si = 0; si < ns; ++si) {
          RandomStream rng = RandomStream::substream(spec.master_seed, pi, trial, si + 1);
          ChannelRealization real = sample_realization(cfg, rng);
          if (evaluate(spec.schemes[si], real, cfg).outage) {
            counts[si * np + pi].fetch_add(1, std::memory_order_relaxed);
          }
        }
      }
    });
  }

  std::vector<OutagePoint> out;
  out.reserve(np * ns);
  for (std::size_t si = 0; si < ns; ++si) {
    for (std::size_t pi = 0; pi < np; ++pi) {
      OutagePoint p;
      p.scheme = spec.schemes[si];
      p.snr_db = spec.snr_db_points[pi];
      p.trials = spec.trials;
      p.outages = counts[si * np + pi].load();
      p.outage_prob = static_cast<double>(p.outages) / static_cast<double>(p.trials);
      std::tie(p.ci95_low, p.ci95_high) = wilson_interval(p.outages, p.trials);
      out.push_back(p);
    }
  }
  return out;
}

std::vector<std::size_t> dominance_check(const NetworkConfig& base, const SweepSpec& spec,
                                         SchemeId scheme_a, SchemeId scheme_b) {
  base.validate();
  spec.validate();
  const std::size_t np = spec.snr_db_points.size();
  std::vector<std::atomic<std::size_t>> violations(np);
  for (auto& v : violations) v.store(0);

  for (std::size_t pi = 0; pi < np; ++pi) {
    NetworkConfig cfg = at_snr(base, spec.snr_db_points[pi]);
    parallel_trials(spec.trials, spec.threads, [&](std::size_t trial) {
      RandomStream rng = RandomStream::substream(spec.master_seed, pi, trial);
      ChannelRealization real = sample_realization(cfg, rng);
      bool oa = evaluate(scheme_a, real, cfg).outage;
      if (oa && !evaluate(scheme_b, real, cfg).outage) {
        violations[pi].fetch_add(1, std::memory_order_relaxed);
      }
    });
  }

  std::vector<std::size_t> out(np);
  for (std::size_t pi = 0; pi < np; ++pi) out[pi] = violations[pi].load();
  return out;
}

}  // namespace cfr
