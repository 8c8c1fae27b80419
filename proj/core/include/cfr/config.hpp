#pragma once

#include <string>

#include "cfr/simrunner.hpp"

namespace cfr {

inline constexpr const char* kToolVersion = "0.1.0";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParsedRun {
  NetworkConfig cfg;
  SweepSpec sweep;
};

/// Flat key=value config, one key per line, '#' comments.  Unknown keys are
/// rejected with the offending line number.  Missing keys take the defaults
/// baked into NetworkConfig / SweepSpec.
ParsedRun parse_config(std::string_view text);

/// "start:step:stop" in dB -> ascending grid (stop inclusive up to rounding).
std::vector<double> parse_snr_grid(std::string_view s);

std::vector<SchemeId> parse_scheme_list(std::string_view s);  // comma list or "all"

/// Fixed column order, UTF-8, LF line endings, 6 significant digits.
std::string to_csv(std::span<const OutagePoint> points);

std::string to_manifest(const ParsedRun& run, std::string_view config_path,
                        std::string_view timestamp_utc);

}  // namespace cfr
