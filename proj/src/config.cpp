#include "dce/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "dce/error.hpp"

namespace dce {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const auto piece = trim(s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos));
    if (!piece.empty()) out.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double to_double(const std::string& key, std::string_view s) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x))
    throw Error(ErrorCode::RangeError, key + ": not a finite number: '" + std::string(s) + "'");
  return x;
}

std::size_t to_count(const std::string& key, std::string_view s) {
  unsigned long long x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::RangeError, key + ": not a non-negative integer: '" + std::string(s) + "'");
  return static_cast<std::size_t>(x);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "topology",     "n",           "a0_joule",      "da0_joule",  "target_occupancy",
      "phi_rad",      "theta_rad",   "theta_start",   "theta_end",  "theta_steps",
      "omega_d_rad_s", "z0_ohm",     "v_m_s",         "temperature_mk", "observables",
      "out"};
  return keys;
}

ArrayTopology RunConfig::array() const {
  return topology == TopologyKind::Ring ? ArrayTopology::ring(n) : ArrayTopology::open_chain(n);
}

DriveParams RunConfig::drive(double theta) const {
  DriveParams d;
  d.A0 = a0;
  d.dA0 = da0.value_or(1e-3 * a0);
  d.phi = phi;
  d.theta = theta;
  d.omega_d = omega_d;
  return d;
}

std::vector<double> RunConfig::theta_grid() const {
  std::vector<double> g(theta_steps);
  for (std::size_t k = 0; k < theta_steps; ++k)
    g[k] = theta_steps == 1 ? theta_start
                            : theta_start + (theta_end - theta_start) * static_cast<double>(k) /
                                                static_cast<double>(theta_steps - 1);
  return g;
}

std::vector<double> RunConfig::temperatures_k() const {
  std::vector<double> t;
  for (double mk : temperature_mk) t.push_back(mk * 1e-3);
  return t;
}

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
  std::map<std::string, std::string> values;
  const auto& keys = config_keys();
  auto put = [&](std::string key, std::string value) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw Error(ErrorCode::UnknownKey, "unknown configuration key '" + key + "'");
    values[std::move(key)] = std::move(value);
  };

  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::RangeError, "line " + std::to_string(line_no) + ": expected key=value");
    put(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  for (const auto& [k, v] : overrides) put(k, v);

  RunConfig c;
  auto has = [&](const char* k) { return values.count(k) != 0; };
  auto num = [&](const char* k) { return to_double(k, values.at(k)); };

  for (const char* k : {"topology", "n", "a0_joule"})
    if (!has(k)) throw Error(ErrorCode::MissingRequired, std::string("missing required key '") + k + "'");

  const auto& topo = values.at("topology");
  if (topo == "open_chain" || topo == "chain")
    c.topology = TopologyKind::OpenChain;
  else if (topo == "ring")
    c.topology = TopologyKind::Ring;
  else
    throw Error(ErrorCode::RangeError, "topology must be open_chain or ring, got '" + topo + "'");

  c.n = to_count("n", values.at("n"));
  if (c.n < 1) throw Error(ErrorCode::RangeError, "n must be >= 1");
  if (c.topology == TopologyKind::Ring && c.n < 3) throw Error(ErrorCode::RangeError, "a ring needs n >= 3");

  c.a0 = num("a0_joule");
  if (!(c.a0 > 0.0)) throw Error(ErrorCode::RangeError, "a0_joule must be > 0");

  if (has("da0_joule") == has("target_occupancy"))
    throw Error(has("da0_joule") ? ErrorCode::RangeError : ErrorCode::MissingRequired,
                "exactly one of da0_joule and target_occupancy must be given");
  if (has("da0_joule")) {
    c.da0 = num("da0_joule");
    if (*c.da0 < 0.0) throw Error(ErrorCode::RangeError, "da0_joule must be >= 0");
  } else {
    c.target_occupancy = num("target_occupancy");
    if (!(*c.target_occupancy > 0.0 && *c.target_occupancy < 1.0))
      throw Error(ErrorCode::RangeError, "target_occupancy must lie in (0, 1)");
  }

  if (has("phi_rad")) c.phi = num("phi_rad");

  const bool range = has("theta_start") || has("theta_end") || has("theta_steps");
  if (has("theta_rad") && range)
    throw Error(ErrorCode::RangeError, "theta_rad conflicts with theta_start/theta_end/theta_steps");
  if (range) {
    for (const char* k : {"theta_start", "theta_end", "theta_steps"})
      if (!has(k)) throw Error(ErrorCode::MissingRequired, std::string("missing required key '") + k + "'");
    c.theta_start = num("theta_start");
    c.theta_end = num("theta_end");
    c.theta_steps = to_count("theta_steps", values.at("theta_steps"));
    if (c.theta_steps < 1) throw Error(ErrorCode::RangeError, "theta_steps must be >= 1");
  } else if (has("theta_rad")) {
    c.theta_start = c.theta_end = num("theta_rad");
  }

  if (has("omega_d_rad_s")) c.omega_d = num("omega_d_rad_s");
  if (has("z0_ohm")) c.z0 = num("z0_ohm");
  if (has("v_m_s")) c.v = num("v_m_s");
  if (!(c.omega_d > 0.0)) throw Error(ErrorCode::RangeError, "omega_d_rad_s must be > 0");
  if (!(c.z0 > 0.0)) throw Error(ErrorCode::RangeError, "z0_ohm must be > 0");
  if (!(c.v > 0.0)) throw Error(ErrorCode::RangeError, "v_m_s must be > 0");

  if (has("temperature_mk")) {
    c.temperature_mk.clear();
    for (const auto& t : split_list(values.at("temperature_mk"))) {
      const double mk = to_double("temperature_mk", t);
      if (mk < 0.0) throw Error(ErrorCode::RangeError, "temperature_mk must be >= 0");
      c.temperature_mk.push_back(mk);
    }
    if (c.temperature_mk.empty()) throw Error(ErrorCode::RangeError, "temperature_mk is empty");
  }
  if (has("observables")) {
    c.observables = split_list(values.at("observables"));
    if (c.observables.empty()) throw Error(ErrorCode::RangeError, "observables is empty");
  }
  if (has("out")) c.out = values.at("out");
  return c;
}

}  // namespace dce
