#include "pdk/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "pdk/errors.hpp"

namespace pdk {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const Eigen::VectorXd& as_vector(const Space& space, const Point& x, Eigen::Index size) {
  const auto* v = std::get_if<Eigen::VectorXd>(&x);
  if (v == nullptr) throw ArgumentError("expected a coordinate vector for " + space_name(space));
  if (v->size() != size) {
    throw ArgumentError("point of dimension " + std::to_string(v->size()) + " given for " +
                        space_name(space));
  }
  return *v;
}

double as_scalar(const Space& space, const Point& x) {
  const auto* v = std::get_if<double>(&x);
  if (v == nullptr) throw ArgumentError("expected a scalar point for " + space_name(space));
  return *v;
}

std::size_t as_label(const Space& space, const Point& x) {
  const auto* v = std::get_if<Label>(&x);
  if (v == nullptr) throw ArgumentError("expected a label for " + space_name(space));
  return v->index;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void validate_space(const Space& space) {
  std::visit(Overloaded{
                 [](const Euclidean& e) {
                   if (e.dim < 1) throw ParameterError("euclidean dimension must be >= 1");
                   if (!(e.extent > 0.0) || !std::isfinite(e.extent)) {
                     throw ParameterError("euclidean sampling extent must be positive");
                   }
                 },
                 [](const SphereGeodesic& s) {
                   if (s.dim < 1) throw ParameterError("sphere dimension must be >= 1");
                 },
                 [](const Interval& i) {
                   if (!(i.length >= 0.0) || !std::isfinite(i.length)) {
                     throw ParameterError("interval length must be finite and nonnegative");
                   }
                 },
                 [](const Circle&) {},
                 [](const Discrete& d) {
                   if (d.labels.empty()) throw ParameterError("discrete space needs a label");
                 },
             },
             space);
}

std::string space_name(const Space& space) {
  return std::visit(Overloaded{
                        [](const Euclidean& e) { return "R^" + std::to_string(e.dim); },
                        [](const SphereGeodesic& s) { return "S^" + std::to_string(s.dim); },
                        [](const Interval& i) { return "[0," + format_double(i.length) + "]"; },
                        [](const Circle&) { return std::string("S^1(arc)"); },
                        [](const Discrete& d) {
                          return "discrete(" + std::to_string(d.labels.size()) + ")";
                        },
                    },
                    space);
}

std::string product_name(std::span<const Space> spaces) {
  std::string name;
  for (const Space& s : spaces) {
    if (!name.empty()) name += " x ";
    name += space_name(s);
  }
  return name;
}

bool is_metric(const Space&) { return true; }

bool is_nontrivial(const Space& space) {
  return std::visit(Overloaded{
                        [](const Interval& i) { return i.length > 0.0; },
                        [](const Discrete& d) { return d.labels.size() >= 2; },
                        [](const auto&) { return true; },
                    },
                    space);
}

double diameter_bound(const Space& space) {
  return std::visit(Overloaded{
                        [](const Euclidean&) { return std::numeric_limits<double>::infinity(); },
                        [](const SphereGeodesic&) { return std::numbers::pi; },
                        [](const Interval& i) { return i.length; },
                        [](const Circle&) { return std::numbers::pi; },
                        [](const Discrete&) { return 1.0; },
                    },
                    space);
}

void validate_point(const Space& space, const Point& x) {
  std::visit(Overloaded{
                 [&](const Euclidean& e) {
                   const auto& v = as_vector(space, x, e.dim);
                   if (!v.allFinite()) throw ArgumentError("non-finite euclidean coordinate");
                 },
                 [&](const SphereGeodesic& s) {
                   const auto& v = as_vector(space, x, s.dim + 1);
                   if (!(std::abs(v.norm() - 1.0) <= 1e-12)) {
                     throw ArgumentError("sphere point is not a unit vector");
                   }
                 },
                 [&](const Interval& i) {
                   const double v = as_scalar(space, x);
                   if (!(v >= 0.0 && v <= i.length)) throw ArgumentError("point outside interval");
                 },
                 [&](const Circle&) {
                   if (!std::isfinite(as_scalar(space, x))) throw ArgumentError("non-finite angle");
                 },
                 [&](const Discrete& d) {
                   if (as_label(space, x) >= d.labels.size()) throw ArgumentError("unknown label");
                 },
             },
             space);
}

void validate_point(std::span<const Space> spaces, const ProductPoint& p) {
  if (p.size() != spaces.size()) {
    throw ArgumentError("product point has " + std::to_string(p.size()) + " components, expected " +
                        std::to_string(spaces.size()));
  }
  for (std::size_t i = 0; i < spaces.size(); ++i) validate_point(spaces[i], p[i]);
}

double distance(const Space& space, const Point& x, const Point& y) {
  return std::visit(
      Overloaded{
          [&](const Euclidean& e) {
            return (as_vector(space, x, e.dim) - as_vector(space, y, e.dim)).norm();
          },
          [&](const SphereGeodesic& s) {
            const auto& a = as_vector(space, x, s.dim + 1);
            const auto& b = as_vector(space, y, s.dim + 1);
            if (a == b) return 0.0;
            return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
          },
          [&](const Interval&) { return std::abs(as_scalar(space, x) - as_scalar(space, y)); },
          [&](const Circle&) {
            const double gap = std::fmod(std::abs(as_scalar(space, x) - as_scalar(space, y)), kTwoPi);
            return std::min(gap, kTwoPi - gap);
          },
          [&](const Discrete&) { return as_label(space, x) == as_label(space, y) ? 0.0 : 1.0; },
      },
      space);
}

std::vector<double> component_distances(std::span<const Space> spaces, const ProductPoint& p,
                                        const ProductPoint& q) {
  if (p.size() != spaces.size() || q.size() != spaces.size()) {
    throw ArgumentError("product point arity does not match the product space");
  }
  std::vector<double> d(spaces.size());
  for (std::size_t i = 0; i < spaces.size(); ++i) d[i] = distance(spaces[i], p[i], q[i]);
  return d;
}

Point origin(const Space& space) { return point_at_distance(space, 0.0); }

Point point_at_distance(const Space& space, double d) {
  if (!(d >= 0.0) || d > diameter_bound(space)) {
    throw ArgumentError("distance " + format_double(d) + " is not realizable in " + space_name(space));
  }
  return std::visit(Overloaded{
                        [d](const Euclidean& e) -> Point {
                          Eigen::VectorXd v = Eigen::VectorXd::Zero(e.dim);
                          v[0] = d;
                          return v;
                        },
                        [d](const SphereGeodesic& s) -> Point {
                          Eigen::VectorXd v = Eigen::VectorXd::Zero(s.dim + 1);
                          v[0] = d == 0.0 ? 1.0 : std::cos(d);
                          v[1] = d == 0.0 ? 0.0 : std::sin(d);
                          return v;
                        },
                        [d](const Interval&) -> Point { return d; },
                        [d](const Circle&) -> Point { return d; },
                        [d](const Discrete& disc) -> Point {
                          if (d != 0.0 && d != 1.0) {
                            throw ArgumentError("discrete distances are 0 or 1");
                          }
                          if (d == 1.0 && disc.labels.size() < 2) {
                            throw ArgumentError("discrete space has a single label");
                          }
                          return Label{d == 0.0 ? 0u : 1u};
                        },
                    },
                    space);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  // Box-Muller, discarding the second variate to keep the stream simple.
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

std::size_t Rng::below(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Point sample_point(const Space& space, Rng& rng) {
  return std::visit(Overloaded{
                        [&](const Euclidean& e) -> Point {
                          Eigen::VectorXd v(e.dim);
                          for (int i = 0; i < e.dim; ++i) v[i] = rng.uniform(-e.extent, e.extent);
                          return v;
                        },
                        [&](const SphereGeodesic& s) -> Point {
                          Eigen::VectorXd v(s.dim + 1);
                          do {
                            for (int i = 0; i <= s.dim; ++i) v[i] = rng.normal();
                          } while (v.norm() < 1e-8);
                          v /= v.norm();
                          return v;
                        },
                        [&](const Interval& i) -> Point { return rng.uniform(0.0, i.length); },
                        [&](const Circle&) -> Point { return rng.uniform(0.0, kTwoPi); },
                        [&](const Discrete& d) -> Point { return Label{rng.below(d.labels.size())}; },
                    },
                    space);
}

std::vector<ProductPoint> sample_distinct(std::span<const Space> spaces, std::size_t n,
                                          std::uint64_t seed, double min_sep) {
  if (n < 1) throw ArgumentError("sample size must be at least 1");
  if (spaces.empty()) throw ArgumentError("cannot sample from an empty product");
  if (!(min_sep >= 0.0)) throw ArgumentError("min_sep must be nonnegative");
  for (const Space& s : spaces) validate_space(s);

  Rng rng(seed);
  std::vector<ProductPoint> points;
  points.reserve(n);
  const std::size_t budget = 10000 * n;
  for (std::size_t draws = 0; points.size() < n; ++draws) {
    if (draws >= budget) {
      throw SamplingError("rejection budget exhausted after " + std::to_string(budget) +
                          " draws sampling " + std::to_string(n) + " distinct points from " +
                          product_name(spaces) + " with min_sep " + format_double(min_sep));
    }
    ProductPoint candidate;
    candidate.reserve(spaces.size());
    for (const Space& s : spaces) candidate.push_back(sample_point(s, rng));

    bool distinct = true;
    for (const ProductPoint& p : points) {
      bool separated = false;
      for (std::size_t i = 0; i < spaces.size() && !separated; ++i) {
        separated = distance(spaces[i], p[i], candidate[i]) > min_sep;
      }
      if (!separated) {
        distinct = false;
        break;
      }
    }
    if (distinct) points.push_back(std::move(candidate));
  }
  return points;
}

std::string points_csv(std::span<const Space> spaces, std::span<const ProductPoint> points) {
  std::ostringstream out;
  bool first = true;
  auto cell = [&](const std::string& text) {
    if (!first) out << ',';
    out << text;
    first = false;
  };
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const std::string base = "x" + std::to_string(i);
    std::visit(Overloaded{
                   [&](const Euclidean& e) {
                     for (int j = 0; j < e.dim; ++j) cell(base + "_" + std::to_string(j));
                   },
                   [&](const SphereGeodesic& s) {
                     for (int j = 0; j <= s.dim; ++j) cell(base + "_" + std::to_string(j));
                   },
                   [&](const auto&) { cell(base); },
               },
               spaces[i]);
  }
  out << '\n';
  for (const ProductPoint& p : points) {
    validate_point(spaces, p);
    first = true;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      std::visit(Overloaded{
                     [&](const Eigen::VectorXd& v) {
                       for (Eigen::Index j = 0; j < v.size(); ++j) cell(format_double(v[j]));
                     },
                     [&](double v) { cell(format_double(v)); },
                     [&](const Label& l) { cell(std::get<Discrete>(spaces[i]).labels[l.index]); },
                 },
                 p[i]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace pdk
