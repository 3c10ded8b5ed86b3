#include "qgp/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "qgp/errors.hpp"

namespace qgp {

double hermiticity_defect(const Operator& a) { return max_abs(a - a.adjoint()); }

bool is_hermitian(const Operator& a, double tol) {
  return a.rows() == a.cols() && hermiticity_defect(a) <= tol;
}

bool is_density_matrix(const Operator& rho, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) return false;
  if (hermiticity_defect(rho) > tol) return false;
  if (std::abs(rho.trace() - 1.0) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(rho), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

void require_density_matrix(const Operator& rho, const char* what, double tol) {
  if (!is_density_matrix(rho, tol)) {
    throw InvalidDensityMatrix(std::string(what) + ": not a density matrix (Hermitian, trace one, PSD)");
  }
}

Operator expm(const Operator& a) {
  const Index n = a.rows();
  const double scale = std::max(1.0, max_abs(a));
  if (hermiticity_defect(a) <= 1e-14 * scale) {
    Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(a));
    const auto& v = es.eigenvectors();
    StateVector d(n);
    for (Index i = 0; i < n; ++i) d(i) = std::exp(es.eigenvalues()(i));
    return v * d.asDiagonal() * v.adjoint();
  }
  const Operator ah = -kI * a;
  if (hermiticity_defect(ah) <= 1e-14 * scale) {
    // a = i * h with h Hermitian
    Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(ah));
    const auto& v = es.eigenvectors();
    StateVector d(n);
    for (Index i = 0; i < n; ++i) d(i) = std::exp(kI * es.eigenvalues()(i));
    return v * d.asDiagonal() * v.adjoint();
  }
  const Eigen::MatrixXcd dyn = a;
  const Eigen::MatrixXcd e = dyn.exp();
  return e;
}

double max_abs(const Operator& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double trace_norm(const Operator& a) {
  const Eigen::MatrixXcd dense = a;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense);
  return svd.singularValues().sum();
}

double principal_arg(cd z) {
  const double phi = std::atan2(z.imag(), z.real());
  return phi <= -std::numbers::pi ? phi + 2.0 * std::numbers::pi : phi;
}

double wrap_angle(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double y = std::fmod(x, two_pi);
  if (y > std::numbers::pi) y -= two_pi;
  if (y <= -std::numbers::pi) y += two_pi;
  return y;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("loglog_slope: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) throw std::invalid_argument("loglog_slope: need two positive points");
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / n;
    my += ly[i] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("loglog_slope: x values coincide");
  return sxy / sxx;
}

}  // namespace qgp
