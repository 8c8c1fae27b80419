#pragma once

#include "cfr/schemes.hpp"

namespace cfr {

struct SweepSpec {
  std::vector<double> snr_db_points;  // strictly increasing, applied to SNR_T and SNR_R
  std::size_t trials = 1;
  std::uint64_t master_seed = 1;
  std::vector<SchemeId> schemes;
  bool paired = true;   // same realizations across schemes
  int threads = 0;      // 0 = hardware concurrency

  void validate() const;
};

struct OutagePoint {
  SchemeId scheme;
  double snr_db = 0.0;
  std::size_t trials = 0;
  std::size_t outages = 0;
  double outage_prob = 0.0;
  double ci95_low = 0.0;   // Wilson interval
  double ci95_high = 0.0;
};

/// 95% Wilson score interval for x successes in n trials.
std::pair<double, double> wilson_interval(std::size_t x, std::size_t n);

/// Monte Carlo outage estimate.  Per-trial substreams are derived from
/// (master_seed, point index, trial index), so output is bit-identical for a
/// given seed regardless of worker count or evaluation order.
/// Points are ordered scheme-major in the order requested, snr ascending.
std::vector<OutagePoint> estimate_outage(const NetworkConfig& cfg, const SweepSpec& spec);

/// Per SNR point, number of paired trials where scheme_a is in outage but
/// scheme_b is not.
std::vector<std::size_t> dominance_check(const NetworkConfig& cfg, const SweepSpec& spec,
                                         SchemeId scheme_a, SchemeId scheme_b);

}  // namespace cfr
