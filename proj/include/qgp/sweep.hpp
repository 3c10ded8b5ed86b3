// Parameter sweeps over (detuning, signal strength) grids: synchronization
// measure and geometric phase, CSV emission and SVG heatmaps.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qgp/vdp.hpp"

namespace qgp {

enum class SweepMode { kSyncAnalytic, kSyncNumeric, kGpNumeric, kGpAnalytic };

std::string_view to_string(SweepMode mode);
/// Accepts sync-analytic, sync-numeric, gp-numeric, gp-analytic.
SweepMode parse_sweep_mode(std::string_view text);

/// Base parameters of the default sweep: omega0 = gamma_d = 1,
/// gamma_g = 0.5, alpha = pi/4, omega = 0.05, tau omega0 = 200.
VdpParams default_tongue_params();

struct SweepConfig {
  double delta_min = -0.5;
  double delta_max = 0.5;
  double t_min = 0.0;
  double t_max = 0.5;
  long n_delta = 11;
  long n_t = 11;
  SweepMode mode = SweepMode::kSyncAnalytic;
  VdpParams base = default_tongue_params();
  LabFrameOptions lab;
  int threads = 0;  // 0 selects the OpenMP default

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  double delta_at(long i) const;
  double t_at(long j) const;
};

enum class PointFlag { kOk, kDegenerate, kIllConditioned, kUnstable, kFailed };

std::string_view to_string(PointFlag flag);
PointFlag parse_point_flag(std::string_view text);

struct SweepRow {
  double delta = 0.0;
  double T = 0.0;
  double value = 0.0;            // sync measure or GP in radians; NaN when flagged
  double value_unwrapped = 0.0;  // GP unwrapped along T at fixed delta
  double visibility = 0.0;       // |z| for GP modes
  PointFlag flag = PointFlag::kOk;
  std::string message;           // failure detail for flagged rows
};

/// Rows are ordered with delta as the outer index: rows[i * n_t + j].
struct SweepTable {
  long n_delta = 0;
  long n_t = 0;
  std::vector<SweepRow> rows;

  const SweepRow& at(long i, long j) const { return rows.at(static_cast<std::size_t>(i * n_t + j)); }
};

/// One grid point. Numerical failures become flagged rows.
SweepRow evaluate_point(const SweepConfig& cfg, double delta, double T);

/// Grid points evaluated in parallel with OpenMP.
SweepTable run_sweep(const SweepConfig& cfg);

/// Single-threaded reference with identical output.
SweepTable run_sweep_serial(const SweepConfig& cfg);

/// Fills value_unwrapped: per delta, removes 2 pi jumps between
/// consecutive unflagged points along T. Sync modes copy value.
void unwrap_along_t(SweepTable& table, SweepMode mode);

/// Header `delta,T,value,value_unwrapped,flag`, %.17g numbers, LF endings,
/// empty numeric fields on flagged rows.
std::string to_csv(const SweepTable& table);
void emit_csv(const SweepTable& table, const std::filesystem::path& path);

/// Inverse of to_csv. The grid shape is inferred from the delta column.
SweepTable parse_csv(std::string_view text);
SweepTable read_csv(const std::filesystem::path& path);

enum class Colormap { kViridis, kGray };

Colormap parse_colormap(std::string_view text);

/// Standalone SVG: one rect per cell (delta along x, T along y), a linear
/// color bar with min and max annotated, axis labels Delta/gamma_d and
/// T/gamma_d. Flagged cells are drawn in a neutral gray.
std::string heatmap_svg(const SweepTable& table, Colormap colormap = Colormap::kViridis, bool unwrapped = false);
void render_heatmap(const SweepTable& table, const std::filesystem::path& path,
                    Colormap colormap = Colormap::kViridis, bool unwrapped = false);

}  // namespace qgp
