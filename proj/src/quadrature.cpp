#include "qgp/quadrature.hpp"

#include <stdexcept>

namespace qgp {

namespace {

double simpson13(std::size_t j, std::size_t n_even) {
  if (j == 0 || j == n_even) return 1.0 / 3.0;
  return (j % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
}

}  // namespace

double simpson_weight(std::size_t j, std::size_t n) {
  if (n == 0) throw std::invalid_argument("simpson_weight: need at least one interval");
  if (j > n) return 0.0;
  if (n == 1) return 0.5;
  if (n % 2 == 0) return simpson13(j, n);
  // Odd: 1/3 rule on [0, n-3], 3/8 rule on [n-3, n].
  const std::size_t m = n - 3;
  double w = 0.0;
  if (m > 0 && j <= m) w += simpson13(j, m);
  if (j >= m) {
    const std::size_t k = j - m;
    w += (k == 0 || k == 3) ? 3.0 / 8.0 : 9.0 / 8.0;
  }
  return w;
}

std::vector<double> simpson_weights(std::size_t n) {
  std::vector<double> w(n + 1);
  for (std::size_t j = 0; j <= n; ++j) w[j] = simpson_weight(j, n);
  return w;
}


void StreamingSimpson::push(value_type g) {
  if (count_ == 0) first_ = g;
  (count_ % 2 == 0 ? even_ : odd_) += g;
  tail_[count_ % 4] = g;
  ++count_;
}

StreamingSimpson::value_type StreamingSimpson::finish(double h) const {
  if (count_ < 2) throw std::invalid_argument("StreamingSimpson: need at least two samples");
  const std::size_t n = count_ - 1;
  // Even-count pattern 1/3, 4/3, 2/3, ..., then exact weights on the tail.
  value_type acc = (4.0 / 3.0) * odd_ + (2.0 / 3.0) * even_ - (1.0 / 3.0) * first_;
  const std::size_t from = n >= 3 ? n - 3 : 0;
  for (std::size_t i = from; i <= n; ++i) {
    const double base = i == 0 ? 1.0 / 3.0 : (i % 2 == 1 ? 4.0 / 3.0 : 2.0 / 3.0);
    acc += (simpson_weight(i, n) - base) * tail_[i % 4];
  }
  return acc * h;
}

}  // namespace qgp
