// Extended Simpson weights on an equidistant grid.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace qgp {

/// Weight of node j (0-based) in the composite Simpson rule over
/// `n_intervals` equal intervals, in units of the step. An even interval
/// count uses the 1/3 rule throughout; an odd count (>= 3) closes with the
/// 3/8 rule on the final three intervals. n_intervals == 1 degrades to the
/// trapezoid.
double simpson_weight(std::size_t j, std::size_t n_intervals);

std::vector<double> simpson_weights(std::size_t n_intervals);

/// Extended Simpson sum over samples that arrive one at a time, when the
/// final sample count is unknown until finish(). Keeps parity sums and the
/// last four samples.
class StreamingSimpson {
 public:
  using value_type = std::complex<double>;

  void push(value_type g);
  /// Integral with step h over everything pushed so far (>= 2 samples).
  value_type finish(double h) const;
  std::size_t count() const { return count_; }
  void reset() { *this = StreamingSimpson{}; }

 private:
  std::size_t count_ = 0;
  value_type first_{};
  value_type even_{};
  value_type odd_{};
  std::array<value_type, 4> tail_{};
};

}  // namespace qgp
