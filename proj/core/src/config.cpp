#include "cfr/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cfr {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view v, int line) {
  double out;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw ConfigError("line " + std::to_string(line) + ": invalid number '" + std::string(v) + "'");
  }
  return out;
}

long long parse_int(std::string_view v, int line) {
  long long out;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw ConfigError("line " + std::to_string(line) + ": invalid integer '" + std::string(v) +
                      "'");
  }
  return out;
}

bool parse_bool(std::string_view v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("line " + std::to_string(line) + ": invalid boolean '" + std::string(v) + "'");
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::vector<double> parse_snr_grid(std::string_view s) {
  auto c1 = s.find(':');
  auto c2 = s.find(':', c1 == std::string_view::npos ? c1 : c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
    throw ConfigError("SNR grid must be start:step:stop, got '" + std::string(s) + "'");
  }
  auto num = [&](std::string_view v) {
    v = trim(v);
    double out;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) {
      throw ConfigError("SNR grid: invalid number '" + std::string(v) + "'");
    }
    return out;
  };
  double start = num(s.substr(0, c1));
  double step = num(s.substr(c1 + 1, c2 - c1 - 1));
  double stop = num(s.substr(c2 + 1));
  if (!(step > 0.0)) throw ConfigError("SNR grid: step must be positive");
  if (stop < start) throw ConfigError("SNR grid: stop must be >= start");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    double v = start + step * i;
    if (v > stop + 1e-9 * std::max(1.0, std::abs(stop))) break;
    out.push_back(v);
  }
  return out;
}

std::vector<SchemeId> parse_scheme_list(std::string_view s) {
  std::vector<SchemeId> out;
  if (trim(s) == "all") {
    out.assign(std::begin(kAllSchemes), std::end(kAllSchemes));
    return out;
  }
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    std::string_view tok = trim(s.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    if (!tok.empty()) {
      auto id = scheme_from_string(tok);
      if (!id) throw ConfigError("unknown scheme '" + std::string(tok) + "'");
      out.push_back(*id);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("empty scheme list");
  return out;
}

ParsedRun parse_config(std::string_view text) {
  ParsedRun run;
  run.sweep.snr_db_points = {10.0};
  run.sweep.schemes.assign(std::begin(kAllSchemes), std::end(kAllSchemes));

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    std::string_view key = trim(line.substr(0, eq));
    std::string_view val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    }

    if (key == "users") {
      run.cfg.num_users = static_cast<int>(parse_int(val, line_no));
    } else if (key == "relays") {
      run.cfg.num_relays = static_cast<int>(parse_int(val, line_no));
    } else if (key == "sigma_h2") {
      run.cfg.var_h = parse_double(val, line_no);
    } else if (key == "sigma_f2") {
      run.cfg.var_f = parse_double(val, line_no);
    } else if (key == "sigma_g2") {
      run.cfg.var_g = parse_double(val, line_no);
    } else if (key == "target_rate") {
      run.cfg.target_rate = parse_double(val, line_no);
    } else if (key == "snr_r_db_offset") {
      run.cfg.snr_r_db_offset = parse_double(val, line_no);
    } else if (key == "trials") {
      long long t = parse_int(val, line_no);
      if (t < 1) throw ConfigError("line " + std::to_string(line_no) + ": trials must be >= 1");
      run.sweep.trials = static_cast<std::size_t>(t);
    } else if (key == "seed") {
      run.sweep.master_seed = static_cast<std::uint64_t>(parse_int(val, line_no));
    } else if (key == "snr") {
      run.sweep.snr_db_points = parse_snr_grid(val);
    } else if (key == "schemes") {
      run.sweep.schemes = parse_scheme_list(val);
    } else if (key == "paired") {
      run.sweep.paired = parse_bool(val, line_no);
    } else if (key == "threads") {
      run.sweep.threads = static_cast<int>(parse_int(val, line_no));
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) +
                        "'");
    }
  }

  try {
    run.cfg.validate();
    run.sweep.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  return run;
}

std::string to_csv(std::span<const OutagePoint> points) {
  std::string out = "scheme,snr_db,trials,outages,outage_prob,ci95_low,ci95_high\n";
  for (const OutagePoint& p : points) {
    out += to_string(p.scheme);
    out += ',';
    out += fmt6(p.snr_db);
    out += ',';
    out += std::to_string(p.trials);
    out += ',';
    out += std::to_string(p.outages);
    out += ',';
    out += fmt6(p.outage_prob);
    out += ',';
    out += fmt6(p.ci95_low);
    out += ',';
    out += fmt6(p.ci95_high);
    out += '\n';
  }
  return out;
}

std::string to_manifest(const ParsedRun& run, std::string_view config_path,
                        std::string_view timestamp_utc) {
  std::ostringstream os;
  os << "tool_version=" << kToolVersion << '\n';
  os << "timestamp_utc=" << timestamp_utc << '\n';
  os << "config_path=" << config_path << '\n';
  os << "master_seed=" << run.sweep.master_seed << '\n';
  os << "trials=" << run.sweep.trials << '\n';
  os << "paired=" << (run.sweep.paired ? "true" : "false") << '\n';
  os << "threads=" << run.sweep.threads << '\n';
  os << "users=" << run.cfg.num_users << '\n';
  os << "relays=" << run.cfg.num_relays << '\n';
  os << "sigma_h2=" << fmt6(run.cfg.var_h) << '\n';
  os << "sigma_f2=" << fmt6(run.cfg.var_f) << '\n';
  os << "sigma_g2=" << fmt6(run.cfg.var_g) << '\n';
  os << "target_rate=" << fmt6(run.cfg.target_rate) << '\n';
  os << "snr_r_db_offset=" << fmt6(run.cfg.snr_r_db_offset) << '\n';
  os << "snr_db=";
  for (std::size_t i = 0; i < run.sweep.snr_db_points.size(); ++i) {
    if (i) os << ',';
    os << fmt6(run.sweep.snr_db_points[i]);
  }
  os << '\n';
  os << "schemes=";
  for (std::size_t i = 0; i < run.sweep.schemes.size(); ++i) {
    if (i) os << ',';
    os << to_string(run.sweep.schemes[i]);
  }
  os << '\n';
  return os.str();
}

}  // namespace cfr
