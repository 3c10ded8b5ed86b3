#include "qgp/gp_kinematic.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qgp/errors.hpp"
#include "qgp/quadrature.hpp"

namespace qgp {

namespace {

// perm[k] = eigen-solver column assigned to label k.
std::vector<Index> match_by_overlap(const Operator& previous, const Operator& current, double min_overlap,
                                    long step) {
  const Index n = current.cols();
  Eigen::MatrixXd score(n, n);
  for (Index k = 0; k < n; ++k)
    for (Index l = 0; l < n; ++l) score(k, l) = std::abs(previous.col(k).dot(current.col(l)));

  std::vector<Index> perm(n, -1);
  std::vector<bool> used_k(n, false), used_l(n, false);
  for (Index round = 0; round < n; ++round) {
    double best = -1.0;
    Index bk = 0, bl = 0;
    for (Index k = 0; k < n; ++k) {
      if (used_k[k]) continue;
      for (Index l = 0; l < n; ++l) {
        if (!used_l[l] && score(k, l) > best) {
          best = score(k, l);
          bk = k;
          bl = l;
        }
      }
    }
    if (best < min_overlap) {
      std::ostringstream msg;
      msg << "eigenvector labeling lost continuity at step " << step << " (best overlap " << best << ")";
      throw LabelingFailure(msg.str());
    }
    perm[bk] = bl;
    used_k[bk] = used_l[bl] = true;
  }
  return perm;
}

Index largest_entry(const StateVector& v) {
  Index idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  return idx;
}

// Floor below which a pivot entry can no longer define a phase.
constexpr double kPivotFloor = 1e-6;

// Column k of frame i as seen from the gauge segment that starts at step a.
StateVector segment_column(const EigenFrame& f, long i, Index k, long a) {
  return (i != a && f.switched[k]) ? StateVector(f.carried.col(k)) : StateVector(f.vectors.col(k));
}

int stencil_position(long i, long a, long b) {
  if (i - a < 2) return static_cast<int>(i - a);
  if (b - i < 2) return static_cast<int>(4 - (b - i));
  return 2;
}

}  // namespace

EigenTracker::EigenTracker(const GpOptions& options, long n_step) : options_(options), n_step_(n_step) {}

EigenFrame EigenTracker::next(const Operator& rho) {
  const long step = step_++;
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(rho));
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  const RealVector& evals = es.eigenvalues();
  const Index n = evals.size();
  for (Index i = 0; i + 1 < n; ++i) {
    if (evals(i + 1) - evals(i) < options_.degeneracy_tol) {
      std::ostringstream msg;
      msg << "populations " << evals(i) << " and " << evals(i + 1) << " are degenerate at step " << step;
      throw DegeneratePopulations(msg.str(), step);
    }
  }

  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), Index{0});
  if (previous_ && options_.labeling == LabelMode::kMaxOverlap) {
    perm = match_by_overlap(previous_->vectors, es.eigenvectors(), options_.min_overlap, step);
  }

  EigenFrame frame;
  frame.populations.resize(n);
  frame.vectors.resize(n, n);
  frame.carried.resize(n, n);
  frame.pivots.resize(n);
  frame.switched.assign(n, 0);
  if (segment_start_.empty()) segment_start_.assign(n, 0);

  for (Index k = 0; k < n; ++k) {
    frame.populations(k) = evals(perm[k]);
    StateVector v = es.eigenvectors().col(perm[k]);
    const double largest = v.cwiseAbs().maxCoeff();

    int pivot = 0;
    if (!previous_) {
      pivot = std::abs(v(k)) >= options_.repivot_fraction * largest ? static_cast<int>(k)
                                                                     : static_cast<int>(largest_entry(v));
    } else {
      pivot = previous_->pivots[k];
      const double entry = std::abs(v(pivot));
      if (entry < options_.repivot_fraction * largest) {
        const bool room_behind = step - segment_start_[k] >= kMinSegment;
        const bool room_ahead = n_step_ < 0 || n_step_ - step >= kMinSegment;
        if (room_behind && room_ahead && entry >= kPivotFloor * largest) {
          frame.carried.col(k) = v * (std::conj(v(pivot)) / entry);
          frame.switched[k] = 1;
          pivot = static_cast<int>(largest_entry(v));
          segment_start_[k] = step;
        } else if (entry < kPivotFloor * largest) {
          std::ostringstream msg;
          msg << "gauge pivot of eigenvector " << k << " vanished at step " << step
              << " before it could be moved; refine the time grid";
          throw NumericalError(msg.str());
        }
      }
    }
    const cd c = v(pivot);
    if (std::abs(c) > 0.0) v *= std::conj(c) / std::abs(c);
    frame.vectors.col(k) = v;
    if (!frame.switched[k]) frame.carried.col(k) = v;
    frame.pivots[k] = pivot;

    if (previous_) {
      min_continuity_ = std::min(min_continuity_, std::abs(previous_->vectors.col(k).dot(v)));
    }
  }
  previous_ = frame;
  return frame;
}

EigenPath eigen_decompose_path(const Trajectory& traj, const GpOptions& options) {
  EigenTracker tracker(options, static_cast<long>(traj.states.size()) - 1);
  EigenPath path;
  path.dt = traj.dt;
  path.frames.reserve(traj.states.size());
  for (const Operator& rho : traj.states) path.frames.push_back(tracker.next(rho));
  path.min_continuity = tracker.min_continuity();
  return path;
}

namespace {

// Segment boundaries for column k: the start, every switch, and the end.
std::vector<long> segment_bounds(const EigenPath& path, Index k) {
  const long last = static_cast<long>(path.frames.size()) - 1;
  std::vector<long> bounds{0};
  for (long j = 1; j < last; ++j)
    if (path.frames[j].switched[k]) bounds.push_back(j);
  bounds.push_back(last);
  return bounds;
}

}  // namespace

EigenDerivatives differentiate_eigenvectors(const EigenPath& path, double dt) {
  const long count = static_cast<long>(path.frames.size());
  if (count < 5) throw std::invalid_argument("differentiate_eigenvectors: need n_step >= 4");
  const Index dim = path.frames.front().vectors.cols();
  EigenDerivatives out;
  out.values.assign(count, Operator::Zero(dim, dim));
  out.closing.assign(count, Operator::Zero(dim, dim));
  for (Index k = 0; k < dim; ++k) {
    const std::vector<long> bounds = segment_bounds(path, k);
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
      const long a = bounds[s];
      const long b = bounds[s + 1];
      if (b - a < kMinSegment) throw std::invalid_argument("differentiate_eigenvectors: gauge segment too short");
      for (long i = a; i <= b; ++i) {
        const int pos = stencil_position(i, a, b);
        std::array<StateVector, 5> cols;
        std::array<const StateVector*, 5> window{};
        for (int m = 0; m < 5; ++m) {
          const long idx = i - pos + m;
          cols[m] = segment_column(path.frames[idx], idx, k, a);
          window[m] = &cols[m];
        }
        const StateVector d = stencil_derivative(window, pos, dt);
        const bool closes = i == b && i != count - 1 && path.frames[i].switched[k];
        (closes ? out.closing[i] : out.values[i]).col(k) = d;
      }
    }
  }
  return out;
}

ConnectionIntegrals accumulate_connection(const EigenPath& path, const EigenDerivatives& derivatives, double dt) {
  if (derivatives.values.size() != path.frames.size() || derivatives.closing.size() != path.frames.size()) {
    throw std::invalid_argument("accumulate_connection: derivative count differs from frame count");
  }
  const long count = static_cast<long>(path.frames.size());
  const Index dim = path.frames.front().vectors.cols();
  ConnectionIntegrals out;
  out.integrals.assign(dim, cd{0.0, 0.0});
  out.transitions.assign(dim, cd{1.0, 0.0});
  for (Index k = 0; k < dim; ++k) {
    const std::vector<long> bounds = segment_bounds(path, k);
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
      const long a = bounds[s];
      const long b = bounds[s + 1];
      const auto n_int = static_cast<std::size_t>(b - a);
      for (long i = a; i <= b; ++i) {
        const EigenFrame& f = path.frames[i];
        const bool closes = i == b && i != count - 1 && f.switched[k];
        const StateVector d = (closes ? derivatives.closing[i] : derivatives.values[i]).col(k);
        const double w = simpson_weight(static_cast<std::size_t>(i - a), n_int) * dt;
        out.integrals[k] += w * segment_column(f, i, k, a).dot(d);
      }
      if (b != count - 1) out.transitions[k] *= path.frames[b].carried.col(k).dot(path.frames[b].vectors.col(k));
    }
  }
  return out;
}

GpResult assemble_phase(const EigenFrame& first, const EigenFrame& last, const ConnectionIntegrals& connections,
                        const GpOptions& options) {
  const Index dim = first.vectors.cols();
  if (static_cast<Index>(connections.integrals.size()) != dim ||
      static_cast<Index>(connections.transitions.size()) != dim) {
    throw DimensionMismatch("assemble_phase: connection count differs from dimension");
  }
  GpResult r;
  r.populations_start = first.populations;
  r.populations_end = last.populations;
  r.connections = connections.integrals;
  r.overlaps.resize(dim);
  r.z = cd{0.0, 0.0};
  for (Index k = 0; k < dim; ++k) {
    r.overlaps[k] = first.vectors.col(k).dot(last.vectors.col(k)) * std::conj(connections.transitions[k]);
    const double weight = std::sqrt(std::max(0.0, first.populations(k) * last.populations(k)));
    r.z += weight * r.overlaps[k] * std::exp(-connections.integrals[k]);
  }
  r.visibility = std::abs(r.z);
  if (!(r.visibility >= options.min_modulus)) {
    std::ostringstream msg;
    msg << "geometric phase ill-conditioned: |z| = " << r.visibility;
    throw IllConditionedPhase(msg.str());
  }
  r.gamma = principal_arg(r.z);
  return r;
}

GeometricPhaseAccumulator::GeometricPhaseAccumulator(long n_step, double dt, const GpOptions& options)
    : n_step_(n_step), dt_(dt), options_(options), tracker_(options, n_step) {
  if (n_step < 4) throw std::invalid_argument("geometric phase: n_step must be >= 4");
  if (!(dt > 0.0)) throw std::invalid_argument("geometric phase: dt must be positive");
}

void GeometricPhaseAccumulator::add_derivative(Index k, long index, int pos) {
  const long a = columns_[k].segment_start;
  const long start = index - pos;
  std::array<StateVector, 5> cols;
  std::array<const StateVector*, 5> window{};
  for (int m = 0; m < 5; ++m) {
    cols[m] = segment_column(frame(start + m), start + m, k, a);
    window[m] = &cols[m];
  }
  const StateVector d = stencil_derivative(window, pos, dt_);
  columns_[k].simpson.push(cols[pos].dot(d));
}

void GeometricPhaseAccumulator::close_segment(Index k, long end) {
  Column& c = columns_[k];
  add_derivative(k, end - 1, 3);
  add_derivative(k, end, 4);
  c.integral += c.simpson.finish(dt_);
  c.simpson.reset();
  const EigenFrame& f = frame(end);
  if (end != n_step_) {
    c.transition *= f.carried.col(k).dot(f.vectors.col(k));
    c.segment_start = end;
  }
}

void GeometricPhaseAccumulator::push(const Operator& rho) {
  if (received_ > n_step_) throw std::logic_error("GeometricPhaseAccumulator: more than n_step + 1 states");
  const long j = received_;
  ring_[j % 5] = tracker_.next(rho);
  ++received_;
  if (j == 0) {
    first_ = ring_[0];
    columns_.assign(ring_[0].vectors.cols(), Column{});
    return;
  }
  const EigenFrame& f = frame(j);
  for (Index k = 0; k < static_cast<Index>(columns_.size()); ++k) {
    const long a = columns_[k].segment_start;
    if (j - a == 4) {
      add_derivative(k, a, 0);
      add_derivative(k, a + 1, 1);
      add_derivative(k, a + 2, 2);
    } else if (j - a > 4) {
      add_derivative(k, j - 2, 2);
    }
    if (f.switched[k]) close_segment(k, j);
  }
}

GpResult GeometricPhaseAccumulator::finish() {
  if (received_ != n_step_ + 1) throw std::logic_error("GeometricPhaseAccumulator: trajectory incomplete");
  ConnectionIntegrals conn;
  for (Index k = 0; k < static_cast<Index>(columns_.size()); ++k) {
    close_segment(k, n_step_);
    conn.integrals.push_back(columns_[k].integral);
    conn.transitions.push_back(columns_[k].transition);
  }
  GpResult r = assemble_phase(*first_, frame(n_step_), conn, options_);
  r.min_continuity = tracker_.min_continuity();
  return r;
}

StateVisitor GeometricPhaseAccumulator::visitor() {
  return [this](long, double, const Operator& rho) { push(rho); };
}

GpResult geometric_phase(const Trajectory& traj, const GpOptions& options) {
  GeometricPhaseAccumulator acc(traj.n_step, traj.dt, options);
  for (const Operator& rho : traj.states) acc.push(rho);
  return acc.finish();
}

GpResult geometric_phase_of_evolution(const LindbladModel& model, const Operator& rho0, double tau, long n_step,
                                      const GpOptions& options, const EvolveOptions& evolve_options) {
  GeometricPhaseAccumulator acc(n_step, tau / static_cast<double>(n_step), options);
  evolve_stream(model, rho0, tau, n_step, acc.visitor(), evolve_options);
  return acc.finish();
}

}  // namespace qgp
