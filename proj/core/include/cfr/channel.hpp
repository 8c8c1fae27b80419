#pragma once

#include <cstdint>
#include <random>

#include "cfr/numerics.hpp"

namespace cfr {

/// Static scenario parameters.  SNRs are linear power ratios.
struct NetworkConfig {
  int num_users = 2;        // L
  int num_relays = 3;       // M
  double snr_t = 10.0;      // P_T / N_0
  double snr_r = 10.0;      // P_R / N_0
  double var_h = 1.0;       // user -> relay
  double var_f = 10.0;      // relay -> destination
  double var_g = 1.0;       // relay -> relay
  double target_rate = 1.0; // bits per complex channel use
  double snr_r_db_offset = 0.0;  // sweep override: SNR_R tracks SNR_T plus this offset

  void validate() const;  // throws ContractViolation
};

/// Deterministic random stream.  Gaussian draws use an explicit Box-Muller
/// mapping so results do not depend on the standard library's
/// normal_distribution implementation.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  /// Independent substream keyed by (master, a, b, c); counter-based so trials
  /// can be evaluated in any order on any number of workers.
  static RandomStream substream(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                                std::uint64_t c = 0);

  double uniform();  // [0, 1)

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  Complex complex_normal(double variance);

 private:
  std::mt19937_64 gen_;
};

/// One block-fading draw, immutable once sampled.
struct ChannelRealization {
  CMatrix h;   // L x M, (i, m) = user i -> relay m
  CVector f;   // length M, relay m -> destination
  CMatrix g;   // M x M, (a, b) = relay a -> relay b; diagonal zero, never read
};

ChannelRealization sample_realization(const NetworkConfig& cfg, RandomStream& rng);

}  // namespace cfr
