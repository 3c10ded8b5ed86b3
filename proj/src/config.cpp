#include "qgp/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace qgp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_plain(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return v;
}

long parse_integer(std::string_view text) {
  long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  return v;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

struct Range {
  double lo = -HUGE_VAL;
  double hi = HUGE_VAL;
  bool lo_open = false;
  const char* text = "a finite number";
};

Setter real(double RunConfig::*, Range) = delete;

template <typename Get>
Setter real_setter(Get get, Range range) {
  return [get, range](RunConfig& c, std::string_view v) {
    const double x = parse_real(v);
    const bool ok = std::isfinite(x) && (range.lo_open ? x > range.lo : x >= range.lo) && x <= range.hi;
    if (!ok) throw std::invalid_argument(std::string("must be ") + range.text);
    get(c) = x;
  };
}

template <typename Get>
Setter integer_setter(Get get, long lo, const char* text) {
  return [get, lo, text](RunConfig& c, std::string_view v) {
    const long x = parse_integer(v);
    if (x < lo) throw std::invalid_argument(std::string("must be ") + text);
    get(c) = x;
  };
}

const Range kAny{};
const Range kPositive{0.0, HUGE_VAL, true, "> 0"};
const Range kNonNegative{0.0, HUGE_VAL, false, ">= 0"};
const Range kAngle{0.0, std::numbers::pi, false, "in [0, pi]"};
const Range kFraction{0.0, 1.0, true, "in (0, 1]"};

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    t["omega0"] = real_setter([](RunConfig& c) -> double& { return c.vdp.omega0; }, kAny);
    t["gamma_g"] = real_setter([](RunConfig& c) -> double& { return c.vdp.gamma_g; }, kPositive);
    t["gamma_d"] = real_setter([](RunConfig& c) -> double& { return c.vdp.gamma_d; }, kPositive);
    t["alpha"] = real_setter([](RunConfig& c) -> double& { return c.vdp.axis.alpha; }, kAngle);
    t["omega"] = real_setter([](RunConfig& c) -> double& { return c.vdp.axis.omega; }, kAny);
    t["T"] = real_setter([](RunConfig& c) -> double& { return c.vdp.T; }, kNonNegative);
    t["omega_sig"] = real_setter([](RunConfig& c) -> double& { return c.vdp.omega_sig; }, kAny);
    t["phi_sig"] = real_setter([](RunConfig& c) -> double& { return c.vdp.phi_sig; }, kAny);
    t["tau"] = real_setter([](RunConfig& c) -> double& { return c.vdp.tau; }, kNonNegative);
    t["n_step"] = integer_setter([](RunConfig& c) -> long& { return c.vdp.n_step; }, 4, ">= 4");
    t["delta"] = [](RunConfig& c, std::string_view v) {
      const double x = parse_real(v);
      if (!std::isfinite(x)) throw std::invalid_argument("must be a finite number");
      c.delta = x;
    };

    t["delta_min"] = real_setter([](RunConfig& c) -> double& { return c.sweep.delta_min; }, kAny);
    t["delta_max"] = real_setter([](RunConfig& c) -> double& { return c.sweep.delta_max; }, kAny);
    t["t_min"] = real_setter([](RunConfig& c) -> double& { return c.sweep.t_min; }, kNonNegative);
    t["t_max"] = real_setter([](RunConfig& c) -> double& { return c.sweep.t_max; }, kNonNegative);
    t["n_delta"] = integer_setter([](RunConfig& c) -> long& { return c.sweep.n_delta; }, 2, ">= 2");
    t["n_t"] = integer_setter([](RunConfig& c) -> long& { return c.sweep.n_t; }, 2, ">= 2");
    t["mode"] = [](RunConfig& c, std::string_view v) { c.sweep.mode = parse_sweep_mode(v); };
    t["threads"] = [](RunConfig& c, std::string_view v) {
      const long x = parse_integer(v);
      if (x < 0 || x > 4096) throw std::invalid_argument("must be in [0, 4096] (0 = auto)");
      c.sweep.threads = static_cast<int>(x);
    };

    t["burn_in"] = real_setter([](RunConfig& c) -> double& { return c.sweep.lab.burn_in; }, kAny);
    t["burn_in_efolds"] = real_setter([](RunConfig& c) -> double& { return c.sweep.lab.burn_in_efolds; }, kPositive);
    t["degeneracy_tol"] = real_setter([](RunConfig& c) -> double& { return c.sweep.lab.gp.degeneracy_tol; }, kPositive);
    t["repivot_fraction"] =
        real_setter([](RunConfig& c) -> double& { return c.sweep.lab.gp.repivot_fraction; }, kFraction);

    t["eta"] = real_setter([](RunConfig& c) -> double& { return c.qubit.eta; }, kAny);
    t["Lambda"] = real_setter([](RunConfig& c) -> double& { return c.qubit.Lambda; }, kPositive);
    t["theta0"] = real_setter([](RunConfig& c) -> double& { return c.qubit.theta0; }, kAngle);
    t["qubit_tau"] = real_setter([](RunConfig& c) -> double& { return c.qubit.tau; }, kNonNegative);

    t["tau_max"] = real_setter([](RunConfig& c) -> double& { return c.mzi_tau_max; }, kNonNegative);
    t["n_tau"] = integer_setter([](RunConfig& c) -> long& { return c.mzi_n_tau; }, 1, ">= 1");
    t["n_sub"] = integer_setter([](RunConfig& c) -> long& { return c.mzi_n_sub; }, 0, ">= 0 (0 = auto)");
    t["colormap"] = [](RunConfig& c, std::string_view v) { c.colormap = parse_colormap(v); };
    return t;
  }();
  return table;
}

}  // namespace

double parse_real(std::string_view text) {
  text = trim(text);
  const auto pi_pos = text.find("pi");
  if (pi_pos == std::string_view::npos) return parse_plain(text);
  // [coef[*]]pi[/denominator]
  std::string_view coef = trim(text.substr(0, pi_pos));
  std::string_view rest = trim(text.substr(pi_pos + 2));
  if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
  double value = std::numbers::pi;
  if (coef == "-") value = -value;
  else if (!coef.empty()) value *= parse_plain(coef);
  if (!rest.empty()) {
    if (rest.front() != '/') throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    value /= parse_plain(trim(rest.substr(1)));
  }
  return value;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  std::string k(trim(key));
  for (char& ch : k)
    if (ch == '-') ch = '_';
  if (k == "lambda") k = "Lambda";
  const auto& table = setters();
  const auto it = table.find(k);
  if (it == table.end()) throw ConfigError(k, "unknown key");
  try {
    it->second(cfg, trim(value));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(k, e.what());
  }
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

void apply_config_text(RunConfig& cfg, std::string_view text, const std::string& origin) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(line), origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    try {
      apply_setting(cfg, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(e.key(), origin + ":" + std::to_string(line_no) + ": " +
                                     std::string(e.what()).substr(e.key().size() + 2));
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str(), path.string());
}

RunConfig RunConfig::resolved() const {
  RunConfig r = *this;
  if (r.delta) r.vdp.omega_sig = r.vdp.omega0 + *r.delta;
  r.sweep.base = r.vdp;
  return r;
}

}  // namespace qgp
