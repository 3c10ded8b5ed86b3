// Flat key = value configuration shared by config files and command-line
// overrides. Keys use the field names of VdpParams and SweepConfig.
#pragma once

#include <filesystem>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qgp/oracles.hpp"
#include "qgp/sweep.hpp"

namespace qgp {

/// Unknown key or unacceptable value. key() names the offending setting.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  VdpParams vdp = default_tongue_params();
  /// When set, overrides omega_sig with omega0 + delta after all settings
  /// are applied, so the order of keys does not matter.
  std::optional<double> delta;
  SweepConfig sweep;
  /// qubit_tau (stored in qubit.tau) of 0 means one period 2 pi / eta.
  oracles::QubitDephasingParams qubit{1.0, 0.2, std::numbers::pi / 4.0, 0.0};
  double mzi_tau_max = 0.0;  // 0: one axis period
  long mzi_n_tau = 20;
  long mzi_n_sub = 0;
  Colormap colormap = Colormap::kViridis;

  /// Resolves delta and copies vdp and the lab-frame options into sweep.
  RunConfig resolved() const;
};

/// Accepts dashes in place of underscores. Numbers may be plain literals
/// or multiples of pi such as `pi/4`, `3pi/8`, `0.5*pi`.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Every accepted key, for help output.
std::vector<std::string> config_keys();

/// `key = value` lines; `#` starts a comment; blank lines are ignored.
void apply_config_text(RunConfig& cfg, std::string_view text, const std::string& origin = "config");
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Parses a real number in the syntax accepted by apply_setting. Throws
/// std::invalid_argument.
double parse_real(std::string_view text);

}  // namespace qgp
