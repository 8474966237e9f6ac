#include "pdk/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "pdk/errors.hpp"
#include "pdk/linalg.hpp"

namespace pdk {

double lanczos_gamma(double x) {
  static constexpr double g = 7.0;
  static constexpr std::array<double, 9> coeffs = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (!std::isfinite(x)) throw DomainError("gamma of a non-finite argument");
  if (x < 0.5) {
    if (x == std::floor(x)) throw DomainError("gamma pole at a nonpositive integer");
    const double s = std::sin(std::numbers::pi * x);
    return std::numbers::pi / (s * lanczos_gamma(1.0 - x));
  }
  x -= 1.0;
  double series = coeffs[0];
  for (std::size_t i = 1; i < coeffs.size(); ++i) series += coeffs[i] / (x + static_cast<double>(i));
  const double t = x + g + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * series;
}

namespace {

struct LaguerreValues {
  double p;      // L_n(z) / scale
  double p_prev;  // L_{n-1}(z) / scale
  int scale_exp;  // scale = 1e100^scale_exp
};

// Three-term recurrence, renormalised so that large n and z cannot overflow.
LaguerreValues laguerre_pair(int n, double z) {
  double p1 = 1.0, p2 = 0.0;
  int scale_exp = 0;
  for (int j = 1; j <= n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
    if (std::abs(p1) > 1e100) {
      p1 *= 1e-100;
      p2 *= 1e-100;
      ++scale_exp;
    }
  }
  return {p1, p2, scale_exp};
}

}  // namespace

GaussLaguerreRule<double> gauss_laguerre(int n) {
  if (n < 1 || n > 256) throw ArgumentError("Gauss-Laguerre order must lie in [1, 256]");
  // Starting values: eigenvalues of the symmetric tridiagonal Jacobi matrix
  // (diagonal 2k + 1, off-diagonal k), then Newton on L_n.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jacobi(k, k) = 2.0 * k + 1.0;
    if (k > 0) jacobi(k, k - 1) = jacobi(k - 1, k) = k;
  }
  const auto guesses = jacobi_eigenvalues(jacobi).eigenvalues;

  GaussLaguerreRule<double> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double dn = n;
  for (int i = 0; i < n; ++i) {
    double z = guesses[i];
    LaguerreValues v{};
    for (int iter = 0; iter < 8; ++iter) {
      v = laguerre_pair(n, z);
      // L_n'(z) = n (L_n - L_{n-1}) / z
      const double step = v.p * z / (dn * (v.p - v.p_prev));
      z -= step;
      if (std::abs(step) <= 1e-15 * z) break;
    }
    v = laguerre_pair(n, z);
    if (!std::isfinite(z) || !(z > 0.0)) throw NumericError("Gauss-Laguerre node is not finite");
    rule.nodes[i] = z;
    // w = -1 / (n L_n'(z) L_{n-1}(z)) = -z / (n^2 (L_n - L_{n-1}) L_{n-1})
    rule.weights[i] =
        -z / (dn * dn * (v.p - v.p_prev) * v.p_prev) * std::pow(1e-200, v.scale_exp);
  }
  return rule;
}

double gamma_kernel_integral(double lambda, double rate, int n_quad) {
  if (!(lambda > 0.0) || !(rate > 0.0)) throw DomainError("lambda and rate must be positive");
  if (n_quad < 1) throw ArgumentError("n_quad must be positive");

  const double rounded = std::round(lambda);
  double unit_integral = 0.0;
  if (std::abs(lambda - rounded) <= 1e-12 && rounded <= 2.0 * n_quad) {
    const int degree = static_cast<int>(rounded) - 1;
    const auto rule = gauss_laguerre(n_quad);
    unit_integral = rule.integrate([degree](double x) { return std::pow(x, degree); });
  } else {
    const double y_lo = std::log(1e-17 * lambda) / lambda;
    double y_hi = std::max(std::log(lambda), 0.0);
    while (lambda * y_hi - std::exp(y_hi) > std::log(1e-19)) y_hi += 0.25;
    const double span = y_hi - y_lo;
    const double h = std::min(0.1, span / n_quad);
    const auto steps = static_cast<long>(std::ceil(span / h));
    for (long k = 0; k <= steps; ++k) {
      const double y = y_lo + static_cast<double>(k) * h;
      unit_integral += std::exp(lambda * y - std::exp(y));
    }
    unit_integral *= h;
  }
  return std::pow(rate, -lambda) * unit_integral;
}

double stieltjes_kernel_identity_check(double lambda, double s, double t, int n_quad) {
  if (!(lambda > 0.0) || !(s > 0.0) || !(t > 0.0)) {
    throw DomainError("identity check needs lambda, s, t > 0");
  }
  if (n_quad < 64) throw ArgumentError("n_quad must be at least 64, got " + std::to_string(n_quad));
  const double exact = lanczos_gamma(lambda) / std::pow(s + t, lambda);
  const double quad = gamma_kernel_integral(lambda, s + t, n_quad);
  return std::abs(quad - exact) / exact;
}

}  // namespace pdk
