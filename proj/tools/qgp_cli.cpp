// Command-line front end: single geometric-phase runs, Arnold-tongue sweeps,
// the dephasing-qubit convergence benchmark, interferometer tables and
// closed-form oracle values.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qgp/config.hpp"
#include "qgp/errors.hpp"
#include "qgp/gp_kinematic.hpp"
#include "qgp/mzi.hpp"
#include "qgp/oracles.hpp"
#include "qgp/sweep.hpp"
#include "qgp/vdp.hpp"

namespace {

using namespace qgp;

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

// Leftover `--key value` / `--key=value` tokens become config overrides.
void apply_overrides(RunConfig& cfg, const std::vector<std::string>& extras) {
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& tok = extras[i];
    if (tok.rfind("--", 0) != 0 || tok.size() == 2) throw ConfigError(tok, "unexpected argument");
    const std::string body = tok.substr(2);
    const auto eq = body.find('=');
    if (eq != std::string::npos) {
      apply_setting(cfg, body.substr(0, eq), body.substr(eq + 1));
      continue;
    }
    if (i + 1 >= extras.size()) throw ConfigError(body, "missing value");
    apply_setting(cfg, body, extras[++i]);
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void close() {
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw std::runtime_error("failed writing output file");
    }
  }

 private:
  std::ofstream file_;
};

void print_gp(std::ostream& os, const char* label, const GpResult& r) {
  os << label << " = " << fmt(r.gamma) << "\n";
  os << label << "_visibility = " << fmt(r.visibility) << "\n";
  os << label << "_min_continuity = " << fmt(r.min_continuity) << "\n";
}

int run_gp(const RunConfig& cfg, bool reverse, std::ostream& os) {
  const VdpParams& p = cfg.vdp;
  const GpResult forward = lab_frame_geometric_phase(p, cfg.sweep.lab);
  os << "tau = " << fmt(p.effective_tau()) << "\n";
  os << "n_step = " << p.n_step << "\n";
  print_gp(os, "gamma", forward);
  if (reverse) {
    VdpParams q = p;
    q.axis.omega = -q.axis.omega;
    const GpResult backward = lab_frame_geometric_phase(q, cfg.sweep.lab);
    print_gp(os, "gamma_reversed", backward);
    os << "reversal_sum = " << fmt(wrap_angle(forward.gamma + backward.gamma)) << "\n";
  }
  const bool cyclic = p.tau <= 0.0;
  os << (cyclic ? "analytic_cyclic = " : "analytic_noncyclic = ");
  try {
    os << fmt(cyclic ? oracles::gp_cyclic_with_signal(p) : oracles::gp_noncyclic(p, p.effective_tau())) << "\n";
  } catch (const DegeneratePopulations& e) {
    os << "unavailable\n";
    std::cerr << e.what() << "\n";
  }
  os << "analytic_valid = " << (oracles::analytic_gp_valid(p) ? "true" : "false") << "\n";
  return 0;
}

int run_tongue(const RunConfig& cfg, const std::string& out, const std::string& svg, bool unwrapped) {
  const SweepTable table = run_sweep(cfg.sweep);
  if (out.empty()) std::cout << to_csv(table);
  else emit_csv(table, out);
  if (!svg.empty()) render_heatmap(table, svg, cfg.colormap, unwrapped);
  long flagged = 0;
  for (const SweepRow& r : table.rows) {
    if (r.flag == PointFlag::kOk) continue;
    ++flagged;
    std::cerr << "flagged point delta=" << short_fmt(r.delta) << " T=" << short_fmt(r.T) << " (" << to_string(r.flag)
              << "): " << r.message << "\n";
  }
  if (flagged > 0) std::cerr << flagged << " of " << table.rows.size() << " points flagged\n";
  return 0;
}

int run_benchmark_qubit(const RunConfig& cfg, const std::vector<long>& n_steps, std::ostream& os) {
  oracles::QubitDephasingParams q = cfg.qubit;
  if (q.tau <= 0.0) q.tau = 2.0 * std::numbers::pi / std::abs(q.eta);
  const oracles::QubitPhase exact = oracles::qubit_dephasing_gp(q);
  const LindbladModel model = oracles::qubit_dephasing_model(q.eta, q.Lambda);
  const Operator rho0 = oracles::qubit_bloch_state(q.theta0);

  os << "n_step,gamma,exact,error\n";
  std::vector<double> ns, errs;
  for (long n : n_steps) {
    if (n < 4) throw ConfigError("n_steps", "every entry must be >= 4");
    const GpResult r = geometric_phase_of_evolution(model, rho0, q.tau, n, cfg.sweep.lab.gp);
    const double err = std::abs(wrap_angle(r.gamma - exact.gamma));
    os << n << "," << fmt(r.gamma) << "," << fmt(exact.gamma) << "," << fmt(err) << "\n";
    ns.push_back(static_cast<double>(n));
    errs.push_back(err);
  }
  if (std::count_if(errs.begin(), errs.end(), [](double e) { return e > 0.0; }) >= 2)
    std::cerr << "log-log slope of error vs n_step: " << short_fmt(loglog_slope(ns, errs)) << "\n";
  return 0;
}

int run_mzi(const RunConfig& cfg, const std::string& initial, std::ostream& os) {
  const VdpParams& p = cfg.vdp;
  const LindbladModel model = build_lab_frame_model(p);
  Operator rho0;
  if (initial == "steady") rho0 = lab_frame_initial_state(p, cfg.sweep.lab);
  else if (initial == "mixed") rho0 = identity(3) / 3.0;
  else throw ConfigError("initial", "expected steady or mixed");

  double tau_max = cfg.mzi_tau_max;
  if (tau_max <= 0.0) tau_max = p.effective_tau();
  os << "tau,visibility,phase,flag\n";
  for (long i = 1; i <= cfg.mzi_n_tau; ++i) {
    const double tau = tau_max * static_cast<double>(i) / static_cast<double>(cfg.mzi_n_tau);
    const cd z = interferometric_trace(rho0, model, tau, cfg.mzi_n_sub);
    const double nu = std::abs(z);
    os << fmt(tau) << "," << fmt(nu) << ",";
    if (nu >= 1e-12) os << fmt(principal_arg(z)) << ",ok\n";
    else os << ",ill_conditioned\n";
  }
  return 0;
}

int run_oracle(const RunConfig& cfg, const std::string& name, std::ostream& os) {
  const VdpParams& p = cfg.vdp;
  if (name == "blockade-ratio") {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", oracles::blockade_ratio());
    os << buf << "\n";
  } else if (name == "populations") {
    const auto pop = oracles::vdp_populations(p.gamma_g, p.gamma_d);
    os << "p_plus1 = " << fmt(pop.p_plus1) << "\np_0 = " << fmt(pop.p_0) << "\np_minus1 = " << fmt(pop.p_minus1)
       << "\n";
  } else if (name == "coherences") {
    const auto c = oracles::vdp_coherences(p.gamma_g, p.gamma_d, p.detuning(), p.phi_sig);
    os << "c_plus1_0 = " << fmt(c.c_plus1_0.real()) << " " << fmt(c.c_plus1_0.imag()) << "i\n";
    os << "c_0_minus1 = " << fmt(c.c_0_minus1.real()) << " " << fmt(c.c_0_minus1.imag()) << "i\n";
  } else if (name == "sync-measure") {
    const auto c = oracles::vdp_coherences(p.gamma_g, p.gamma_d, p.detuning(), p.phi_sig);
    os << fmt(oracles::sync_measure_closed_form(p.T, c)) << "\n";
  } else if (name == "gp-no-signal") {
    os << fmt(oracles::gp_no_signal(p.axis.alpha, oracles::vdp_populations(p.gamma_g, p.gamma_d))) << "\n";
  } else if (name == "gp-cyclic") {
    os << fmt(oracles::gp_cyclic_with_signal(p)) << "\n";
  } else if (name == "gp-noncyclic") {
    os << fmt(oracles::gp_noncyclic(p, p.effective_tau())) << "\n";
  } else if (name == "qubit-gp") {
    oracles::QubitDephasingParams q = cfg.qubit;
    if (q.tau <= 0.0) q.tau = 2.0 * std::numbers::pi / std::abs(q.eta);
    const auto r = oracles::qubit_dephasing_gp(q);
    os << fmt(r.gamma) << "\n";
    if (r.degenerate) std::cerr << "theta0 at a pole: phase continued as -eta tau / 2\n";
  } else {
    throw ConfigError("oracle", "unknown oracle '" + name +
                                    "' (blockade-ratio, populations, coherences, sync-measure, gp-no-signal, "
                                    "gp-cyclic, gp-noncyclic, qubit-gp)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinematic geometric phase of open quantum systems"};
  app.require_subcommand(1);
  app.allow_extras();

  std::string config_path;
  std::string out_path;
  int threads = -1;
  app.add_option("--config", config_path, "flat key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--threads", threads, "worker threads for sweeps (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.footer("Any configuration key can be overridden with --key value. Keys:\n  " + [] {
    std::string s;
    for (const auto& k : config_keys()) s += k + " ";
    return s;
  }());

  auto* gp = app.add_subcommand("gp", "geometric phase of one lab-frame van der Pol run");
  bool reverse = false;
  gp->add_flag("--reverse", reverse, "also run with the rotation reversed");
  gp->allow_extras();

  auto* tongue = app.add_subcommand("tongue", "sweep over detuning and signal strength, CSV output");
  std::string svg_path;
  bool svg_unwrapped = false;
  tongue->add_option("--svg", svg_path, "also write an SVG heatmap");
  tongue->add_flag("--unwrapped", svg_unwrapped, "color the heatmap by the unwrapped phase");
  tongue->allow_extras();

  auto* bench = app.add_subcommand("benchmark-qubit", "convergence of the dephasing-qubit phase with n_step");
  std::vector<long> n_steps{200, 400, 800, 1600, 3200};
  bench->add_option("--n-steps", n_steps, "comma-separated step counts")->delimiter(',');
  bench->allow_extras();

  auto* mzi = app.add_subcommand("mzi", "interferometric visibility and phase versus tau");
  std::string initial = "steady";
  mzi->add_option("--initial", initial, "initial state: steady (lab-frame orbit) or mixed (identity / 3)");
  mzi->allow_extras();

  auto* oracle = app.add_subcommand("oracle", "print a closed-form value");
  std::string oracle_name;
  oracle->add_option("name", oracle_name, "oracle name")->required();
  oracle->allow_extras();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    std::vector<std::string> extras = app.remaining();
    for (auto* sub : app.get_subcommands()) {
      const auto more = sub->remaining();
      extras.insert(extras.end(), more.begin(), more.end());
    }
    apply_overrides(cfg, extras);
    if (threads >= 0) cfg.sweep.threads = threads;
    cfg = cfg.resolved();

    if (tongue->parsed()) return run_tongue(cfg, out_path, svg_path, svg_unwrapped);

    Output out(out_path);
    int rc = 0;
    if (gp->parsed()) rc = run_gp(cfg, reverse, out.stream());
    else if (bench->parsed()) rc = run_benchmark_qubit(cfg, n_steps, out.stream());
    else if (mzi->parsed()) rc = run_mzi(cfg, initial, out.stream());
    else if (oracle->parsed()) rc = run_oracle(cfg, oracle_name, out.stream());
    out.close();
    return rc;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
