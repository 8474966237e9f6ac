#pragma once

#include <Eigen/Core>

namespace pdk {

/// Gamma function via the g = 7, 9-term Lanczos series (about 15 digits).
/// Uses the reflection formula below 1/2.
double lanczos_gamma(double x);

/// Nodes and weights of the n-point Gauss-Laguerre rule for the weight e^-x.
template <typename Scalar>
struct GaussLaguerreRule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;

  /// sum_i w_i g(x_i) ~ int_0^inf e^-x g(x) dx
  template <typename Fn>
  Scalar integrate(Fn&& g) const {
    Scalar sum(0);
    for (Eigen::Index i = 0; i < nodes.size(); ++i) sum += weights[i] * g(nodes[i]);
    return sum;
  }
};

/// Newton iteration on the Laguerre three-term recurrence.
GaussLaguerreRule<double> gauss_laguerre(int n);

/// int_0^inf e^{-rate w} w^{lambda - 1} dw computed by quadrature.
///
/// After x = rate * w the integral is rate^-lambda int e^-x x^{lambda-1} dx.
/// Integer lambda: the remaining factor is a polynomial of degree lambda - 1,
/// integrated exactly by the n_quad-point Gauss-Laguerre rule
/// (requires n_quad >= lambda). Otherwise the integrand is singular or not
/// smooth at 0 and Gauss-Laguerre converges only algebraically; then we fall
/// back to the trapezoid rule in y = log x on [y_lo, y_hi], where
///   y_lo = log(1e-17 * lambda) / lambda        (head mass e^{lambda y_lo}/lambda)
///   y_hi = first y >= log(lambda) with lambda y - e^y <= log(1e-19)
/// and step h = min(0.1, (y_hi - y_lo) / n_quad). The integrand is analytic
/// in |Im y| < pi/2, so the discretisation error is O(exp(-pi^2 / h)).
double gamma_kernel_integral(double lambda, double rate, int n_quad);

/// Relative error between the quadrature of
/// int_0^inf e^{-sw} e^{-tw} w^{lambda-1} dw and Gamma(lambda) / (s + t)^lambda.
double stieltjes_kernel_identity_check(double lambda, double s, double t, int n_quad = 64);

}  // namespace pdk
