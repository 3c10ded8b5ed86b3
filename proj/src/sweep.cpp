#include "qgp/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qgp/errors.hpp"
#include "qgp/oracles.hpp"

namespace qgp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ModeName {
  SweepMode mode;
  std::string_view name;
};

constexpr std::array<ModeName, 4> kModes{{
    {SweepMode::kSyncAnalytic, "sync-analytic"},
    {SweepMode::kSyncNumeric, "sync-numeric"},
    {SweepMode::kGpNumeric, "gp-numeric"},
    {SweepMode::kGpAnalytic, "gp-analytic"},
}};

struct FlagName {
  PointFlag flag;
  std::string_view name;
};

constexpr std::array<FlagName, 5> kFlags{{
    {PointFlag::kOk, "ok"},
    {PointFlag::kDegenerate, "degenerate"},
    {PointFlag::kIllConditioned, "ill_conditioned"},
    {PointFlag::kUnstable, "unstable"},
    {PointFlag::kFailed, "failed"},
}};

bool is_gp(SweepMode mode) { return mode == SweepMode::kGpNumeric || mode == SweepMode::kGpAnalytic; }

// The synchronization measure refers to the oscillator in the frame of the
// signal without axis rotation.
VdpParams sync_params(const VdpParams& base, double delta, double T) {
  VdpParams p = base;
  p.axis.omega = 0.0;
  p.omega_sig = p.omega0 + delta;
  p.T = T;
  return p;
}

SweepRow flagged(SweepRow row, PointFlag flag, const std::exception& e) {
  row.flag = flag;
  row.value = kNaN;
  row.value_unwrapped = kNaN;
  row.message = e.what();
  return row;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(std::string_view field, std::size_t line) {
  const std::string s(field);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw std::invalid_argument("CSV line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view to_string(SweepMode mode) {
  for (const auto& m : kModes)
    if (m.mode == mode) return m.name;
  return "unknown";
}

SweepMode parse_sweep_mode(std::string_view text) {
  for (const auto& m : kModes)
    if (m.name == text) return m.mode;
  throw std::invalid_argument("unknown sweep mode '" + std::string(text) +
                              "' (expected sync-analytic, sync-numeric, gp-numeric or gp-analytic)");
}

std::string_view to_string(PointFlag flag) {
  for (const auto& f : kFlags)
    if (f.flag == flag) return f.name;
  return "failed";
}

PointFlag parse_point_flag(std::string_view text) {
  for (const auto& f : kFlags)
    if (f.name == text) return f.flag;
  throw std::invalid_argument("unknown point flag '" + std::string(text) + "'");
}

VdpParams default_tongue_params() {
  VdpParams p;
  p.omega0 = 1.0;
  p.gamma_g = 0.5;
  p.gamma_d = 1.0;
  p.axis = {std::numbers::pi / 4.0, 0.05};
  p.omega_sig = 1.0;
  p.phi_sig = 0.0;
  p.tau = 200.0;
  p.n_step = 200000;
  return p;
}

void SweepConfig::validate() const {
  if (!(delta_max >= delta_min)) throw std::invalid_argument("delta_max must be >= delta_min");
  if (!(t_max >= t_min)) throw std::invalid_argument("t_max must be >= t_min");
  if (t_min < 0.0) throw std::invalid_argument("t_min must be >= 0");
  if (n_delta < 2) throw std::invalid_argument("n_delta must be >= 2");
  if (n_t < 2) throw std::invalid_argument("n_t must be >= 2");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  if (!(base.gamma_g > 0.0)) throw std::invalid_argument("gamma_g must be > 0");
  if (!(base.gamma_d > 0.0)) throw std::invalid_argument("gamma_d must be > 0");
  if (mode == SweepMode::kGpNumeric && base.n_step < 4) throw std::invalid_argument("n_step must be >= 4");
  if (is_gp(mode) && base.axis.omega == 0.0) throw std::invalid_argument("omega must be nonzero in GP modes");
}

double SweepConfig::delta_at(long i) const {
  return delta_min + (delta_max - delta_min) * static_cast<double>(i) / static_cast<double>(n_delta - 1);
}

double SweepConfig::t_at(long j) const {
  return t_min + (t_max - t_min) * static_cast<double>(j) / static_cast<double>(n_t - 1);
}

SweepRow evaluate_point(const SweepConfig& cfg, double delta, double T) {
  SweepRow row;
  row.delta = delta;
  row.T = T;
  try {
    switch (cfg.mode) {
      case SweepMode::kSyncAnalytic: {
        const VdpParams p = sync_params(cfg.base, delta, T);
        const auto c = oracles::vdp_coherences(p.gamma_g, p.gamma_d, p.detuning(), p.phi_sig);
        row.value = oracles::sync_measure_closed_form(T, c);
        break;
      }
      case SweepMode::kSyncNumeric: {
        const VdpParams p = sync_params(cfg.base, delta, T);
        row.value = sync_measure_numeric(steady_state(build_rwa_model(p))).value;
        break;
      }
      case SweepMode::kGpAnalytic: {
        VdpParams p = cfg.base;
        p.omega_sig = p.omega0 + delta;
        p.T = T;
        row.value = oracles::gp_cyclic_with_signal(p);
        row.visibility = 1.0;
        break;
      }
      case SweepMode::kGpNumeric: {
        VdpParams p = cfg.base;
        p.omega_sig = p.omega0 + delta;
        p.T = T;
        const GpResult r = lab_frame_geometric_phase(p, cfg.lab);
        row.value = r.gamma;
        row.visibility = r.visibility;
        break;
      }
    }
  } catch (const DegeneratePopulations& e) {
    return flagged(row, PointFlag::kDegenerate, e);
  } catch (const IllConditionedPhase& e) {
    return flagged(row, PointFlag::kIllConditioned, e);
  } catch (const StepInstability& e) {
    return flagged(row, PointFlag::kUnstable, e);
  } catch (const NumericalError& e) {
    return flagged(row, PointFlag::kFailed, e);
  }
  if (!std::isfinite(row.value)) {
    return flagged(row, PointFlag::kFailed, std::runtime_error("non-finite value"));
  }
  row.value_unwrapped = row.value;
  return row;
}

namespace {

SweepTable empty_table(const SweepConfig& cfg) {
  cfg.validate();
  SweepTable table;
  table.n_delta = cfg.n_delta;
  table.n_t = cfg.n_t;
  table.rows.resize(static_cast<std::size_t>(cfg.n_delta * cfg.n_t));
  return table;
}

}  // namespace

SweepTable run_sweep(const SweepConfig& cfg) {
  SweepTable table = empty_table(cfg);
  const long total = cfg.n_delta * cfg.n_t;
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long idx = 0; idx < total; ++idx) {
    try {
      table.rows[static_cast<std::size_t>(idx)] =
          evaluate_point(cfg, cfg.delta_at(idx / cfg.n_t), cfg.t_at(idx % cfg.n_t));
    } catch (...) {
#pragma omp critical(qgp_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  unwrap_along_t(table, cfg.mode);
  return table;
}

SweepTable run_sweep_serial(const SweepConfig& cfg) {
  SweepTable table = empty_table(cfg);
  for (long i = 0; i < cfg.n_delta; ++i)
    for (long j = 0; j < cfg.n_t; ++j)
      table.rows[static_cast<std::size_t>(i * cfg.n_t + j)] = evaluate_point(cfg, cfg.delta_at(i), cfg.t_at(j));
  unwrap_along_t(table, cfg.mode);
  return table;
}

void unwrap_along_t(SweepTable& table, SweepMode mode) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (long i = 0; i < table.n_delta; ++i) {
    bool have_previous = false;
    double previous = 0.0;
    for (long j = 0; j < table.n_t; ++j) {
      SweepRow& row = table.rows[static_cast<std::size_t>(i * table.n_t + j)];
      if (row.flag != PointFlag::kOk) {
        row.value_unwrapped = kNaN;
        continue;
      }
      double v = row.value;
      if (is_gp(mode) && have_previous) v -= two_pi * std::round((v - previous) / two_pi);
      row.value_unwrapped = v;
      previous = v;
      have_previous = true;
    }
  }
}

std::string to_csv(const SweepTable& table) {
  std::string out = "delta,T,value,value_unwrapped,flag\n";
  for (const SweepRow& row : table.rows) {
    out += format_double(row.delta);
    out += ',';
    out += format_double(row.T);
    out += ',';
    if (row.flag == PointFlag::kOk) {
      out += format_double(row.value);
      out += ',';
      out += format_double(row.value_unwrapped);
    } else {
      out += ',';
    }
    out += ',';
    out += to_string(row.flag);
    out += '\n';
  }
  return out;
}

void emit_csv(const SweepTable& table, const std::filesystem::path& path) { write_file(path, to_csv(table)); }

SweepTable parse_csv(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != "delta,T,value,value_unwrapped,flag") {
    throw std::invalid_argument("CSV: missing header 'delta,T,value,value_unwrapped,flag'");
  }
  SweepTable table;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto fields = split(lines[n], ',');
    if (fields.size() != 5) throw std::invalid_argument("CSV line " + std::to_string(n + 1) + ": expected 5 fields");
    SweepRow row;
    row.delta = parse_double(fields[0], n + 1);
    row.T = parse_double(fields[1], n + 1);
    row.flag = parse_point_flag(fields[4]);
    row.value = fields[2].empty() ? kNaN : parse_double(fields[2], n + 1);
    row.value_unwrapped = fields[3].empty() ? kNaN : parse_double(fields[3], n + 1);
    table.rows.push_back(row);
  }
  if (table.rows.empty()) throw std::invalid_argument("CSV: no data rows");
  long n_t = 0;
  while (n_t < static_cast<long>(table.rows.size()) && table.rows[n_t].delta == table.rows.front().delta) ++n_t;
  table.n_t = n_t;
  table.n_delta = static_cast<long>(table.rows.size()) / n_t;
  return table;
}

SweepTable read_csv(const std::filesystem::path& path) { return parse_csv(read_file(path)); }

Colormap parse_colormap(std::string_view text) {
  if (text == "viridis") return Colormap::kViridis;
  if (text == "gray" || text == "grey") return Colormap::kGray;
  throw std::invalid_argument("unknown colormap '" + std::string(text) + "' (expected viridis or gray)");
}

namespace {

struct Rgb {
  double r, g, b;
};

Rgb colormap_at(Colormap cmap, double x) {
  x = std::clamp(x, 0.0, 1.0);
  if (cmap == Colormap::kGray) return {x, x, x};
  static constexpr std::array<Rgb, 9> kViridis{{
      {0.267, 0.005, 0.329},
      {0.278, 0.175, 0.483},
      {0.230, 0.322, 0.546},
      {0.172, 0.449, 0.558},
      {0.128, 0.567, 0.551},
      {0.153, 0.680, 0.506},
      {0.360, 0.785, 0.388},
      {0.668, 0.862, 0.196},
      {0.993, 0.906, 0.144},
  }};
  const double s = x * static_cast<double>(kViridis.size() - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(s), kViridis.size() - 2);
  const double f = s - static_cast<double>(i);
  const Rgb& a = kViridis[i];
  const Rgb& b = kViridis[i + 1];
  return {a.r + f * (b.r - a.r), a.g + f * (b.g - a.g), a.b + f * (b.b - a.b)};
}

std::string hex(const Rgb& c) {
  const auto byte = [](double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", byte(c.r), byte(c.g), byte(c.b));
  return buf;
}

std::string num(double v, const char* fmt = "%.3f") {
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void require_rectangular(const SweepTable& table) {
  if (table.n_delta < 1 || table.n_t < 1 ||
      static_cast<long>(table.rows.size()) != table.n_delta * table.n_t) {
    throw std::invalid_argument("heatmap: table is not a rectangular grid");
  }
  for (long i = 0; i < table.n_delta; ++i) {
    for (long j = 0; j < table.n_t; ++j) {
      const SweepRow& r = table.at(i, j);
      if (r.delta != table.at(i, 0).delta || r.T != table.at(0, j).T) {
        throw std::invalid_argument("heatmap: table is not a rectangular grid");
      }
    }
  }
}

}  // namespace

std::string heatmap_svg(const SweepTable& table, Colormap colormap, bool unwrapped) {
  require_rectangular(table);
  const auto value_of = [&](const SweepRow& r) { return unwrapped ? r.value_unwrapped : r.value; };

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const SweepRow& r : table.rows) {
    if (r.flag != PointFlag::kOk) continue;
    lo = std::min(lo, value_of(r));
    hi = std::max(hi, value_of(r));
  }
  const bool any = lo <= hi;
  const bool constant = any && hi == lo;

  constexpr double left = 80.0, top = 30.0, width = 480.0, height = 360.0;
  constexpr double bar_x = left + width + 30.0, bar_w = 20.0;
  const double cw = width / static_cast<double>(table.n_delta);
  const double ch = height / static_cast<double>(table.n_t);

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"460\" viewBox=\"0 0 720 460\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"720\" height=\"460\" fill=\"#ffffff\"/>\n";
  svg += "<g shape-rendering=\"crispEdges\">\n";
  for (long i = 0; i < table.n_delta; ++i) {
    for (long j = 0; j < table.n_t; ++j) {
      const SweepRow& r = table.at(i, j);
      std::string fill = "#bdbdbd";
      if (r.flag == PointFlag::kOk) {
        const double x = constant ? 0.5 : (value_of(r) - lo) / (hi - lo);
        fill = hex(colormap_at(colormap, x));
      }
      const double x = left + cw * static_cast<double>(i);
      const double y = top + height - ch * static_cast<double>(j + 1);
      svg += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(cw) + "\" height=\"" + num(ch) +
             "\" fill=\"" + fill + "\"/>\n";
    }
  }
  constexpr int kBarSteps = 64;
  for (int s = 0; s < kBarSteps; ++s) {
    const double x = (static_cast<double>(s) + 0.5) / kBarSteps;
    const double y = top + height - height * static_cast<double>(s + 1) / kBarSteps;
    svg += "<rect x=\"" + num(bar_x) + "\" y=\"" + num(y) + "\" width=\"" + num(bar_w) + "\" height=\"" +
           num(height / kBarSteps) + "\" fill=\"" + hex(colormap_at(colormap, constant ? 0.5 : x)) + "\"/>\n";
  }
  svg += "</g>\n";
  svg += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" fill=\"none\" stroke=\"#000000\"/>\n";

  const std::string font = "font-family=\"sans-serif\" font-size=\"12\"";
  const SweepRow& first = table.at(0, 0);
  const SweepRow& last = table.at(table.n_delta - 1, table.n_t - 1);
  svg += "<text x=\"" + num(left) + "\" y=\"" + num(top + height + 16) + "\" " + font + ">" +
         num(first.delta, "%.4g") + "</text>\n";
  svg += "<text x=\"" + num(left + width) + "\" y=\"" + num(top + height + 16) + "\" " + font +
         " text-anchor=\"end\">" + num(last.delta, "%.4g") + "</text>\n";
  svg += "<text x=\"" + num(left - 6) + "\" y=\"" + num(top + height) + "\" " + font + " text-anchor=\"end\">" +
         num(first.T, "%.4g") + "</text>\n";
  svg += "<text x=\"" + num(left - 6) + "\" y=\"" + num(top + 12) + "\" " + font + " text-anchor=\"end\">" +
         num(last.T, "%.4g") + "</text>\n";
  svg += "<text x=\"" + num(left + width / 2) + "\" y=\"" + num(top + height + 40) + "\" " + font +
         " text-anchor=\"middle\">\xce\x94/\xce\xb3" "d</text>\n";
  svg += "<text x=\"" + num(left - 50) + "\" y=\"" + num(top + height / 2) + "\" " + font +
         " text-anchor=\"middle\" transform=\"rotate(-90 " + num(left - 50) + " " + num(top + height / 2) +
         ")\">T/\xce\xb3" "d</text>\n";

  std::string max_label, min_label;
  if (!any) {
    max_label = min_label = "no valid cells";
  } else if (constant) {
    max_label = "max " + num(hi, "%.6g") + " (constant)";
    min_label = "min " + num(lo, "%.6g") + " (constant)";
  } else {
    max_label = "max " + num(hi, "%.6g");
    min_label = "min " + num(lo, "%.6g");
  }
  svg += "<text x=\"" + num(bar_x) + "\" y=\"" + num(top - 8) + "\" " + font + ">" + max_label + "</text>\n";
  svg += "<text x=\"" + num(bar_x) + "\" y=\"" + num(top + height + 16) + "\" " + font + ">" + min_label +
         "</text>\n";
  svg += "</svg>\n";
  return svg;
}

void render_heatmap(const SweepTable& table, const std::filesystem::path& path, Colormap colormap, bool unwrapped) {
  write_file(path, heatmap_svg(table, colormap, unwrapped));
}

}  // namespace qgp
