#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pdk/spaces.hpp"
#include "pdk/special_functions.hpp"

namespace pdk {

struct TwoSpaceGneiting;

/// Properties claimed for a CND function. Combinators propagate them
/// conservatively: a flag is set only when a sufficient syntactic condition
/// holds, otherwise strictness has to be established by strictness_check.
struct CndFlags {
  bool nonnegative_valued = true;
  bool positive_valued = false;
  /// phi(d) > phi(0, ..., 0) for every nonzero tuple d of the domain.
  bool strict_at_zero = false;
};

namespace detail {
struct CndNode;
}

/// Conditionally negative definite function of one or more distances.
///
/// An immutable expression tree: leaves are single-distance atoms, internal
/// nodes the shift and the three product combinators. A function of arity k
/// consumes k consecutive distances; combinators concatenate the slots of
/// their children.
class CNDFunction {
 public:
  std::size_t arity() const;
  const CndFlags& flags() const;
  double operator()(std::span<const double> d) const;
  double operator()(double t) const { return (*this)(std::span<const double>(&t, 1)); }
  double at_origin() const;
  std::string describe() const;

  /// Checks that each atom is admissible on the distance it consumes
  /// (e.g. sin u needs an interval inside [0, pi/2]). Throws ConstructionError.
  void check_domain(std::span<const Space> spaces) const;

  explicit CNDFunction(std::shared_ptr<const detail::CndNode> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const detail::CndNode> node_;
};

// Atoms.
CNDFunction power(double exponent);         // t^s, s in (0, 2]
CNDFunction linear();                       // t
CNDFunction minus_cos(double offset = 3.0);  // offset - cos t, offset >= 1, on spheres
CNDFunction sine();                         // sin u on [0, pi/2]
CNDFunction constant(double c);             // c >= 0 regardless of the distance

// Combinators.
CNDFunction shift(double c, CNDFunction g);  // c + g, c >= 0

/// (t, u) -> f(g(t) + h(u)) for a Bernstein function f and nonnegative g, h.
CNDFunction bernstein_compose(BernsteinFunction f, CNDFunction g, CNDFunction h);

/// (t, u) -> h(0)^{-n/2} - h(u)^{-n/2} exp(-f(t^2 / h(u))) on R^n x Y.
/// The first slot takes the Euclidean distance of R^n.
CNDFunction euclidean_cross(BernsteinFunction f, CNDFunction h, int n);

/// (t, u) -> M - F_r(t, u). F_r is PD, so it peaks at the origin and the
/// precondition M >= sup F_r reduces to M >= F_r(0, 0).
CNDFunction bounded_complement(double bound, const TwoSpaceGneiting& model);

struct CndVerdict {
  double max_eig = 0.0;
  double tol = 0.0;
  double scale = 1.0;  // max(1, max |A_jk|)
  bool pass = false;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

/// Largest eigenvalue of P A P with A_jk = phi(distances of p_j, p_k) and
/// P the centering projector. Passes iff it is <= tol * scale.
CndVerdict check_cnd_empirical(const CNDFunction& phi, std::span<const Space> spaces,
                               std::span<const ProductPoint> points, double tol,
                               std::uint64_t seed = 0);

struct StrictnessVerdict {
  bool pass = false;
  double min_margin = 0.0;     // min of phi(d) - phi(0) over the grid
  std::vector<double> witness;  // tuple attaining min_margin
  std::size_t evaluated = 0;
};

/// Tests phi(d) > phi(0) over the Cartesian grid of the per-slot axes.
/// The all-zero tuple is skipped.
StrictnessVerdict strictness_check(const CNDFunction& phi,
                                   const std::vector<std::vector<double>>& axes);

/// Per-slot axes spanning each space's diameter set: {0, 1} for discrete
/// spaces, {0} for trivial ones, otherwise points_per_axis values in
/// [0, D], with D the diameter bound (euclidean: 2 extent sqrt(dim)).
std::vector<std::vector<double>> diameter_axes(std::span<const Space> spaces,
                                               int points_per_axis = 33);

}  // namespace pdk
