// Kinematic geometric phase of a nonunitary path of density matrices.
//
// For rho(t) = sum_k p_k(t) |phi_k(t)><phi_k(t)| on t in [0, tau]:
//
//   z     = sum_k sqrt(p_k(0) p_k(tau)) <phi_k(0)|phi_k(tau)>
//                 * exp(-int_0^tau <phi_k|d/dt phi_k> dt)
//   gamma = arg z
//
// The pipeline runs in four stages: per-step eigendecomposition with a
// fixed gauge, fourth-order differentiation of the eigenvectors, extended
// Simpson integration of <phi_k|d/dt phi_k>, and assembly of z.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qgp/evolver.hpp"
#include "qgp/linalg.hpp"
#include "qgp/quadrature.hpp"

namespace qgp {

enum class LabelMode {
  /// Ascending populations. Valid when populations stay distinct and never cross.
  kSortedPopulation,
  /// Greedy maximum |overlap| with the previous step's eigenvectors.
  kMaxOverlap,
};

struct GpOptions {
  double degeneracy_tol = 1e-8;
  LabelMode labeling = LabelMode::kSortedPopulation;
  /// Re-pivot eigenvector k when its pivot entry drops below this fraction
  /// of the eigenvector's largest entry.
  double repivot_fraction = 0.25;
  /// kMaxOverlap only: minimum acceptable overlap with the previous step.
  double min_overlap = 0.5;
  /// |z| below this raises IllConditionedPhase.
  double min_modulus = 1e-12;
};

/// Shortest gauge segment, in steps. One five-point stencil must fit.
inline constexpr long kMinSegment = 4;

/// Eigendata of one density matrix after labeling and gauge fixing.
///
/// Each eigenvector carries a gauge in which one pivot entry is real and
/// positive. When the pivot entry becomes small the pivot moves to the
/// largest entry, which starts a new gauge segment. At such a step
/// `switched[k]` is set and `carried.col(k)` holds the same eigenvector in
/// the gauge of the segment that just ended.
struct EigenFrame {
  RealVector populations;  // p_k
  Operator vectors;        // column k is |phi_k>
  Operator carried;
  std::vector<int> pivots;
  std::vector<char> switched;
};

struct EigenPath {
  double dt = 0.0;
  std::vector<EigenFrame> frames;
  /// min over k, j of |<phi_k(t_j)|phi_k(t_{j+1})>|. Values well below 1
  /// indicate nonadiabatic or under-resolved input.
  double min_continuity = 1.0;
};

/// Stage one, one step at a time: Hermitian eigendecomposition, labeling,
/// and the pivot gauge. Eigenvector k starts with pivot entry k (the
/// largest entry if entry k is small). The pivot moves only when its entry
/// falls below repivot_fraction of the largest entry, and only when both
/// the segment just closed and the remaining path hold at least
/// kMinSegment steps. Pass n_step = -1 when the path length is unknown.
class EigenTracker {
 public:
  explicit EigenTracker(const GpOptions& options = {}, long n_step = -1);

  /// Throws DegeneratePopulations / LabelingFailure.
  EigenFrame next(const Operator& rho);

  double min_continuity() const { return min_continuity_; }
  long steps() const { return step_; }

 private:
  GpOptions options_;
  long n_step_;
  long step_ = 0;
  std::optional<EigenFrame> previous_;
  std::vector<long> segment_start_;
  double min_continuity_ = 1.0;
};

EigenPath eigen_decompose_path(const Trajectory& traj, const GpOptions& options = {});

/// Fourth-order finite-difference derivative at position `pos` (0..4) of a
/// five-point window. Position 2 is the central stencil, the others are
/// one-sided.
template <typename T>
T stencil_derivative(const std::array<const T*, 5>& window, int pos, double dt) {
  static constexpr double kCoeff[5][5] = {
      {-25.0, 48.0, -36.0, 16.0, -3.0},
      {-3.0, -10.0, 18.0, -6.0, 1.0},
      {1.0, -8.0, 0.0, 8.0, -1.0},
      {-1.0, 6.0, -18.0, 10.0, 3.0},
      {3.0, -16.0, 36.0, -48.0, 25.0},
  };
  T out = T::Zero(window[0]->rows(), window[0]->cols());
  for (int i = 0; i < 5; ++i)
    if (kCoeff[pos][i] != 0.0) out += kCoeff[pos][i] * (*window[i]);
  return out / (12.0 * dt);
}

/// Eigenvector derivatives, differentiated within each gauge segment.
/// values[j].col(k) is d/dt of frames[j].vectors.col(k). At a step where
/// column k switched gauge, closing[j].col(k) is d/dt of
/// frames[j].carried.col(k) as the end point of the previous segment;
/// elsewhere closing is zero.
struct EigenDerivatives {
  std::vector<Operator> values;
  std::vector<Operator> closing;
};

/// Needs at least five frames.
EigenDerivatives differentiate_eigenvectors(const EigenPath& path, double dt);

/// Per eigenvector k: the connection integral int <phi_k|d/dt phi_k> dt,
/// summed over gauge segments (extended Simpson rule on each), and the
/// product of gauge transition factors <carried_k|phi_k> over all switches.
struct ConnectionIntegrals {
  std::vector<cd> integrals;
  std::vector<cd> transitions;
};

ConnectionIntegrals accumulate_connection(const EigenPath& path, const EigenDerivatives& derivatives, double dt);

struct GpResult {
  double gamma = 0.0;  // (-pi, pi]
  cd z;
  double visibility = 0.0;  // |z|
  /// <phi_k(0)|phi_k(tau)> with phi_k(tau) expressed in the gauge carried
  /// continuously from t = 0.
  std::vector<cd> overlaps;
  std::vector<cd> connections;  // int <phi_k|d/dt phi_k> dt
  RealVector populations_start;
  RealVector populations_end;
  double min_continuity = 1.0;
};

/// Assembles z from the endpoint frames and the connection integrals.
GpResult assemble_phase(const EigenFrame& first, const EigenFrame& last, const ConnectionIntegrals& connections,
                        const GpOptions& options = {});

/// Streaming evaluator: push the n_step + 1 states in order, then finish().
/// Keeps a five-frame window, so memory does not grow with n_step.
class GeometricPhaseAccumulator {
 public:
  GeometricPhaseAccumulator(long n_step, double dt, const GpOptions& options = {});

  void push(const Operator& rho);
  GpResult finish();

  /// Adapter for evolve_stream.
  StateVisitor visitor();

 private:
  struct Column {
    long segment_start = 0;
    StreamingSimpson simpson;
    cd integral{0.0, 0.0};
    cd transition{1.0, 0.0};
  };

  const EigenFrame& frame(long index) const { return ring_[index % 5]; }
  void add_derivative(Index k, long index, int pos);
  void close_segment(Index k, long end);

  long n_step_;
  double dt_;
  GpOptions options_;
  EigenTracker tracker_;
  std::array<EigenFrame, 5> ring_;
  long received_ = 0;
  std::optional<EigenFrame> first_;
  std::vector<Column> columns_;
};

GpResult geometric_phase(const Trajectory& traj, const GpOptions& options = {});

/// Evolves and evaluates the phase in one pass without storing states.
GpResult geometric_phase_of_evolution(const LindbladModel& model, const Operator& rho0, double tau, long n_step,
                                      const GpOptions& options = {}, const EvolveOptions& evolve_options = {});

}  // namespace qgp
