#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace pdk {

/// R^dim with the Euclidean distance. Samples are drawn from [-extent, extent]^dim.
struct Euclidean {
  int dim = 1;
  double extent = 1.0;
};

/// Unit sphere S^dim in R^{dim+1} with the geodesic distance.
struct SphereGeodesic {
  int dim = 2;
};

/// [0, length] with |x - y|.
struct Interval {
  double length = 1.0;
};

/// Unit circle, points are angles, distance is the shorter arc.
struct Circle {};

/// Finite label set with the 0/1 metric.
struct Discrete {
  std::vector<std::string> labels;
};

using Space = std::variant<Euclidean, SphereGeodesic, Interval, Circle, Discrete>;
using ProductSpace = std::vector<Space>;

struct Label {
  std::size_t index;
  friend bool operator==(const Label&, const Label&) = default;
};

/// Coordinate vector (Euclidean, sphere), scalar (interval, circle) or label.
using Point = std::variant<Eigen::VectorXd, double, Label>;
using ProductPoint = std::vector<Point>;

/// Throws ParameterError for a nonpositive dimension, negative length, etc.
void validate_space(const Space& space);

std::string space_name(const Space& space);
std::string product_name(std::span<const Space> spaces);
/// All built-in spaces are metric.
bool is_metric(const Space& space);
/// Has at least two points.
bool is_nontrivial(const Space& space);
/// Supremum of the diameter set; +inf for Euclidean spaces.
double diameter_bound(const Space& space);

void validate_point(const Space& space, const Point& x);
void validate_point(std::span<const Space> spaces, const ProductPoint& p);

/// Distance between two points of the same space.
///
/// Identical points give exactly 0 and the result is symmetric bit-for-bit.
/// Sphere: arccos(x . y) with the inner product clamped to [-1, 1].
double distance(const Space& space, const Point& x, const Point& y);

/// One distance per component, in product order.
std::vector<double> component_distances(std::span<const Space> spaces, const ProductPoint& p,
                                        const ProductPoint& q);

/// Canonical base point: 0, the first basis vector on spheres, or label 0.
Point origin(const Space& space);
/// A point at distance d from origin(space). d must be realizable.
Point point_at_distance(const Space& space, double d);

/// Deterministic generator for sampling.
///
/// std::mt19937_64 (its output sequence is fixed by the C++ standard);
/// doubles are taken from the top 53 bits and normals come from Box-Muller,
/// so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();                 // [0, 1)
  double uniform(double lo, double hi);
  double normal();
  std::size_t below(std::size_t n);  // [0, n)

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finaliser, used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t x);

Point sample_point(const Space& space, Rng& rng);

/// n points that are pairwise distinct: any two differ by more than min_sep
/// in at least one component. Rejection sampling with a budget of 10^4 n draws.
std::vector<ProductPoint> sample_distinct(std::span<const Space> spaces, std::size_t n,
                                          std::uint64_t seed, double min_sep = 1e-6);

/// CSV with one point per row; header names every flattened coordinate.
std::string points_csv(std::span<const Space> spaces, std::span<const ProductPoint> points);

}  // namespace pdk
