#include "cfr/channel.hpp"

#include <cmath>
#include <numbers>

namespace cfr {

void NetworkConfig::validate() const {
  if (num_users < 1) throw ContractViolation("num_users must be >= 1");
  if (num_relays < num_users) {
    throw ContractViolation("num_relays must be >= num_users");
  }
  if (!(snr_t > 0.0) || !(snr_r > 0.0)) throw ContractViolation("SNRs must be positive");
  if (!(var_h > 0.0) || !(var_f > 0.0) || !(var_g > 0.0)) {
    throw ContractViolation("channel variances must be positive");
  }
  if (!(target_rate > 0.0)) throw ContractViolation("target_rate must be positive");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomStream RandomStream::substream(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                                     std::uint64_t c) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ splitmix64(a + 0x100000001ULL));
  s = splitmix64(s ^ splitmix64(b + 0x200000003ULL));
  s = splitmix64(s ^ splitmix64(c + 0x300000005ULL));
  return RandomStream(s);
}

double RandomStream::uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

Complex RandomStream::complex_normal(double variance) {
  // Polar Box-Muller on the complex amplitude: |z| Rayleigh, phase uniform.
  double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
  double u2 = uniform();
  double r = std::sqrt(-variance * std::log(u1));
  double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

ChannelRealization sample_realization(const NetworkConfig& cfg, RandomStream& rng) {
  const int L = cfg.num_users;
  const int M = cfg.num_relays;
  ChannelRealization real;
  real.h.resize(L, M);
  for (int i = 0; i < L; ++i) {
    for (int m = 0; m < M; ++m) real.h(i, m) = rng.complex_normal(cfg.var_h);
  }
  real.f.resize(M);
  for (int m = 0; m < M; ++m) real.f(m) = rng.complex_normal(cfg.var_f);
  real.g = CMatrix::Zero(M, M);
  for (int a = 0; a < M; ++a) {
    for (int b = 0; b < M; ++b) {
      if (a != b) real.g(a, b) = rng.complex_normal(cfg.var_g);
    }
  }
  return real;
}

}  // namespace cfr
