#pragma once

#include <optional>
#include <string>

#include "cfr/channel.hpp"
#include "cfr/lattice.hpp"

namespace cfr {

enum class SchemeId { cmf, icmf, micmf, afc, hcaf, df, ocmf };

/// Relays pick equation coefficients by exhaustive search over a fixed small
/// ball, as a distributed implementation would; destination-side
/// integer-forcing searches run unrestricted.  Unit vectors stay reachable.
inline constexpr double kRelayEcvSearchCap = 5.0;

const char* to_string(SchemeId s);
std::optional<SchemeId> scheme_from_string(std::string_view s);
inline constexpr SchemeId kAllSchemes[] = {SchemeId::cmf,  SchemeId::icmf, SchemeId::micmf,
                                           SchemeId::afc,  SchemeId::hcaf, SchemeId::df,
                                           SchemeId::ocmf};

/// One recovered equation.
struct EquationRecord {
  Ecv ecv;
  double comp_rate = 0.0;       // rate at the origin relay
  int origin_relay = -1;
  int stage = 0;
  double delivered_rate = 0.0;  // after min with the relay->destination link
};

struct SchemeOutcome {
  SchemeId scheme;
  double end_to_end_rate = 0.0;  // time-sharing prefactor included
  std::vector<double> per_stage_rates;
  bool outage = true;            // end_to_end_rate <= target, inclusive
  std::string detail;
  std::vector<EquationRecord> log;
};

/// Equation-log state during staged recovery.
struct StageState {
  GaussianIntMatrix eq_log;           // (k-1) x L, rows independent
  std::vector<int> origins;           // n_1 .. n_{k-1}
  std::vector<double> origin_rates;   // r_{n_j}^j at the origin relays
};

struct CombinerCoeffs {
  Complex beta{};
  CVector c;  // length k-1
};

/// I - snr_t/(1 + snr_t ||h||^2) h h*; PSD by construction.
QuadraticForm cmf_form(const CVector& h_m, double snr_t);

/// log2+ of the inverse form value, with a 1e-12 clamp before inversion.
double comp_rate(const Ecv& a, const QuadraticForm& V);

/// log2(1 + snr |coef|^2).
double p2p_rate(Complex coef, double snr);

/// Effective channel after removing the logged equations, and the stage form:
/// g_eff* = h_m*(I - P),  V = I - g g*/(1/snr_t + ||g||^2) - P.
std::pair<CVector, QuadraticForm> stage_effective(const ChannelRealization& real,
                                                  const NetworkConfig& cfg, int relay,
                                                  const StageState& state);

/// Closed-form optimum combiner for recovering a given the logged equations.
CombinerCoeffs theorem1_coeffs(const CVector& g_eff, const GaussianIntMatrix& E, const Ecv& a,
                               double snr_t);

/// Per-relay amplification: F = diag(f) diag(gamma), gamma_m chosen to meet
/// the relay power constraint.
CMatrix afc_gains(const ChannelRealization& real, const NetworkConfig& cfg);

struct HcafCombiner {
  CMatrix B;       // (L-k+1) x (L-k+1); filled once the coefficient rows are chosen
  CMatrix C;       // (L-k+1) x (k-1); likewise
  CMatrix G;       // (L-k+1) x L
  CMatrix F_af;    // diagonal, amplifying relays
  CMatrix Kinv;    // inverse of (1/snr_t)(I + F F*) + G G*
  CMatrix P_D;     // projector onto the computing equations' span
  QuadraticForm U;
};

HcafCombiner hcaf_combiner(const ChannelRealization& real, const NetworkConfig& cfg,
                           const GaussianIntMatrix& D, std::span<const int> amps);

/// Optimum projection matrices for a chosen coefficient matrix (rows of A_af).
void hcaf_fill_projections(HcafCombiner& comb, const GaussianIntMatrix& A_af,
                           const GaussianIntMatrix& D);

SchemeOutcome run_cmf(const ChannelRealization& real, const NetworkConfig& cfg);
SchemeOutcome run_icmf(const ChannelRealization& real, const NetworkConfig& cfg);
SchemeOutcome run_modified_icmf(const ChannelRealization& real, const NetworkConfig& cfg);
SchemeOutcome run_centralized(const ChannelRealization& real, const NetworkConfig& cfg);
SchemeOutcome run_afc(const ChannelRealization& real, const NetworkConfig& cfg);
SchemeOutcome run_hcaf(const ChannelRealization& real, const NetworkConfig& cfg);
SchemeOutcome run_df(const ChannelRealization& real, const NetworkConfig& cfg);

SchemeOutcome evaluate(SchemeId scheme, const ChannelRealization& real, const NetworkConfig& cfg);

}  // namespace cfr
