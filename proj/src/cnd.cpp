#include "pdk/cnd.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "pdk/errors.hpp"
#include "pdk/linalg.hpp"
#include "pdk/models.hpp"

namespace pdk {

namespace detail {

struct PowerAtom {
  double exponent;
};
struct LinearAtom {};
struct MinusCosAtom {
  double offset;
};
struct SineAtom {};
struct ConstantAtom {
  double value;
};
struct Shift {
  double c;
  CNDFunction arg;
};
struct Compose {
  BernsteinFunction f;
  CNDFunction g;
  CNDFunction h;
};
struct Cross {
  BernsteinFunction f;
  CNDFunction h;
  int n;
  double origin_term;  // h(0)^{-n/2}
};
struct Complement {
  double bound;
  TwoSpaceGneiting model;
};

struct CndNode {
  std::variant<PowerAtom, LinearAtom, MinusCosAtom, SineAtom, ConstantAtom, Shift, Compose, Cross,
               Complement>
      op;
  std::size_t arity;
  CndFlags flags;
};

}  // namespace detail

namespace {

using detail::CndNode;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

CNDFunction make(auto op, std::size_t arity, CndFlags flags) {
  return CNDFunction(std::make_shared<const CndNode>(CndNode{std::move(op), arity, flags}));
}

std::string bernstein_name(const BernsteinFunction& f) {
  std::string s = "bernstein(a=" + num(f.a()) + ",b=" + num(f.b());
  for (const Atom& a : f.measure().atoms()) s += ",[" + num(a.location) + "," + num(a.weight) + "]";
  return s + ")";
}

bool on_sphere_like(const Space& s) {
  return std::holds_alternative<SphereGeodesic>(s) || std::holds_alternative<Circle>(s);
}

}  // namespace

std::size_t CNDFunction::arity() const { return node_->arity; }

const CndFlags& CNDFunction::flags() const { return node_->flags; }

double CNDFunction::operator()(std::span<const double> d) const {
  if (d.size() != node_->arity) {
    throw ArgumentError("CND function of arity " + std::to_string(node_->arity) + " given " +
                        std::to_string(d.size()) + " distances");
  }
  return std::visit(
      Overloaded{
          [&](const detail::PowerAtom& a) { return std::pow(d[0], a.exponent); },
          [&](const detail::LinearAtom&) { return d[0]; },
          [&](const detail::MinusCosAtom& a) { return a.offset - std::cos(d[0]); },
          [&](const detail::SineAtom&) { return std::sin(d[0]); },
          [&](const detail::ConstantAtom& a) { return a.value; },
          [&](const detail::Shift& s) { return s.c + s.arg(d); },
          [&](const detail::Compose& c) {
            const std::size_t k = c.g.arity();
            return eval_bernstein(c.f, c.g(d.first(k)) + c.h(d.subspan(k)));
          },
          [&](const detail::Cross& c) {
            const double hu = c.h(d.subspan(1));
            if (!(hu > 0.0)) throw DomainError("euclidean_cross: h vanished");
            const double t = d[0];
            return c.origin_term -
                   std::pow(hu, -0.5 * c.n) * std::exp(-eval_bernstein(c.f, t * t / hu));
          },
          [&](const detail::Complement& c) { return c.bound - eval_Fr(c.model, d); },
      },
      node_->op);
}

double CNDFunction::at_origin() const {
  const std::vector<double> zeros(arity(), 0.0);
  return (*this)(zeros);
}

std::string CNDFunction::describe() const {
  return std::visit(
      Overloaded{
          [](const detail::PowerAtom& a) { return "t^" + num(a.exponent); },
          [](const detail::LinearAtom&) { return std::string("t"); },
          [](const detail::MinusCosAtom& a) { return num(a.offset) + "-cos(t)"; },
          [](const detail::SineAtom&) { return std::string("sin(t)"); },
          [](const detail::ConstantAtom& a) { return "const(" + num(a.value) + ")"; },
          [](const detail::Shift& s) { return num(s.c) + "+(" + s.arg.describe() + ")"; },
          [](const detail::Compose& c) {
            return bernstein_name(c.f) + "[" + c.g.describe() + " ; " + c.h.describe() + "]";
          },
          [](const detail::Cross& c) {
            return "cross_R" + std::to_string(c.n) + "(" + bernstein_name(c.f) + ", " +
                   c.h.describe() + ")";
          },
          [](const detail::Complement& c) {
            return num(c.bound) + "-F_r(r=" + num(c.model.r) + ", " + c.model.g.describe() + " ; " +
                   c.model.h.describe() + ")";
          },
      },
      node_->op);
}

void CNDFunction::check_domain(std::span<const Space> spaces) const {
  if (spaces.size() != arity()) {
    throw ConstructionError(describe() + " consumes " + std::to_string(arity()) +
                            " distances but is bound to " + std::to_string(spaces.size()) +
                            " spaces");
  }
  auto reject = [&](const std::string& why) {
    throw ConstructionError(describe() + " is not admissible on " + product_name(spaces) + ": " +
                            why);
  };
  std::visit(
      Overloaded{
          [&](const detail::PowerAtom& a) {
            if (on_sphere_like(spaces[0]) && a.exponent > 1.0) {
              reject("geodesic distance powers need exponent <= 1");
            }
          },
          [](const detail::LinearAtom&) {},
          [&](const detail::MinusCosAtom&) {
            if (!on_sphere_like(spaces[0])) reject("cosine atom needs a sphere or circle");
          },
          [&](const detail::SineAtom&) {
            const auto* iv = std::get_if<Interval>(&spaces[0]);
            if (iv == nullptr || iv->length > std::numbers::pi / 2 + 1e-12) {
              reject("sine atom needs an interval inside [0, pi/2]");
            }
          },
          [](const detail::ConstantAtom&) {},
          [&](const detail::Shift& s) { s.arg.check_domain(spaces); },
          [&](const detail::Compose& c) {
            c.g.check_domain(spaces.first(c.g.arity()));
            c.h.check_domain(spaces.subspan(c.g.arity()));
          },
          [&](const detail::Cross& c) {
            const auto* e = std::get_if<Euclidean>(&spaces[0]);
            if (e == nullptr || e->dim != c.n) {
              reject("first slot must be R^" + std::to_string(c.n));
            }
            c.h.check_domain(spaces.subspan(1));
          },
          [&](const detail::Complement& c) {
            c.model.g.check_domain(spaces.first(c.model.g.arity()));
            c.model.h.check_domain(spaces.subspan(c.model.g.arity()));
          },
      },
      node_->op);
}

CNDFunction power(double exponent) {
  if (!(exponent > 0.0 && exponent <= 2.0)) {
    throw ParameterError("power atom exponent must lie in (0, 2], got " + num(exponent));
  }
  return make(detail::PowerAtom{exponent}, 1, {true, false, true});
}

CNDFunction linear() { return make(detail::LinearAtom{}, 1, {true, false, true}); }

CNDFunction minus_cos(double offset) {
  if (!(offset >= 1.0) || !std::isfinite(offset)) {
    throw ParameterError("cosine atom offset must be >= 1, got " + num(offset));
  }
  return make(detail::MinusCosAtom{offset}, 1, {true, offset > 1.0, true});
}

CNDFunction sine() { return make(detail::SineAtom{}, 1, {true, false, true}); }

CNDFunction constant(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw ParameterError("constant atom must be >= 0");
  return make(detail::ConstantAtom{c}, 1, {true, c > 0.0, false});
}

CNDFunction shift(double c, CNDFunction g) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw ParameterError("shift must be >= 0");
  const CndFlags in = g.flags();
  const std::size_t arity = g.arity();
  return make(detail::Shift{c, std::move(g)}, arity,
              {in.nonnegative_valued, c > 0.0 || in.positive_valued, in.strict_at_zero});
}

CNDFunction bernstein_compose(BernsteinFunction f, CNDFunction g, CNDFunction h) {
  if (!g.flags().nonnegative_valued || !h.flags().nonnegative_valued) {
    throw ConstructionError("bernstein_compose needs nonnegative inner functions");
  }
  const bool increasing = f.is_strictly_increasing();
  CndFlags flags;
  flags.nonnegative_valued = true;
  flags.positive_valued =
      f.a() > 0.0 || (increasing && (g.flags().positive_valued || h.flags().positive_valued));
  flags.strict_at_zero = increasing && g.flags().strict_at_zero && h.flags().strict_at_zero;
  const std::size_t arity = g.arity() + h.arity();
  return make(detail::Compose{std::move(f), std::move(g), std::move(h)}, arity, flags);
}

CNDFunction euclidean_cross(BernsteinFunction f, CNDFunction h, int n) {
  if (n < 1) throw ParameterError("euclidean_cross dimension must be >= 1");
  if (!f.is_positive_valued()) {
    throw ConstructionError("euclidean_cross needs a positive-valued Bernstein function");
  }
  if (!h.flags().positive_valued) {
    throw ConstructionError("euclidean_cross needs a positive-valued h");
  }
  const double origin_term = std::pow(h.at_origin(), -0.5 * n);
  const bool positive = f.a() > 0.0;
  const std::size_t arity = 1 + h.arity();
  return make(detail::Cross{std::move(f), std::move(h), n, origin_term}, arity,
              {true, positive, false});
}

CNDFunction bounded_complement(double bound, const TwoSpaceGneiting& model) {
  validate_model(model);
  if (!model.f.is_bounded()) {
    throw ConstructionError("bounded_complement needs a bounded Stieltjes function (D_f = 0)");
  }
  if (!model.g.flags().nonnegative_valued) {
    throw ConstructionError("bounded_complement needs a nonnegative g");
  }
  const std::vector<double> zeros(model.g.arity() + model.h.arity(), 0.0);
  const double peak = eval_Fr(model, zeros);
  if (!(bound > 0.0) || bound < peak) {
    throw PreconditionError("bound M = " + num(bound) + " is below sup F_r = F_r(0,0) = " +
                            num(peak));
  }
  const std::size_t arity = zeros.size();
  return make(detail::Complement{bound, model}, arity, {true, false, false});
}

CndVerdict check_cnd_empirical(const CNDFunction& phi, std::span<const Space> spaces,
                               std::span<const ProductPoint> points, double tol,
                               std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n < 2) throw ArgumentError("CND check needs at least two points");
  if (phi.arity() != spaces.size()) throw ArgumentError("CND arity does not match the spaces");

  Eigen::MatrixXd a(n, n);
  const double diagonal = phi.at_origin();
  for (Eigen::Index j = 0; j < n; ++j) {
    a(j, j) = diagonal;
    for (Eigen::Index k = j + 1; k < n; ++k) {
      a(j, k) = a(k, j) = phi(component_distances(spaces, points[j], points[k]));
    }
  }

  CndVerdict verdict;
  verdict.n = points.size();
  verdict.seed = seed;
  verdict.tol = tol;
  verdict.scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const auto eig = jacobi_eigenvalues(double_centered(a));
  verdict.max_eig = eig.eigenvalues[n - 1];
  verdict.pass = verdict.max_eig <= tol * verdict.scale;
  return verdict;
}

StrictnessVerdict strictness_check(const CNDFunction& phi,
                                   const std::vector<std::vector<double>>& axes) {
  if (axes.size() != phi.arity()) throw ArgumentError("one grid axis per CND slot is required");
  for (const auto& axis : axes) {
    if (axis.empty()) throw ArgumentError("empty grid axis");
  }
  StrictnessVerdict verdict;
  verdict.min_margin = std::numeric_limits<double>::infinity();
  const double base = phi.at_origin();

  std::vector<std::size_t> index(axes.size(), 0);
  std::vector<double> tuple(axes.size());
  while (true) {
    bool all_zero = true;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      tuple[i] = axes[i][index[i]];
      all_zero = all_zero && tuple[i] == 0.0;
    }
    if (!all_zero) {
      const double margin = phi(tuple) - base;
      ++verdict.evaluated;
      if (margin < verdict.min_margin) {
        verdict.min_margin = margin;
        verdict.witness = tuple;
      }
    }
    std::size_t i = 0;
    while (i < axes.size() && ++index[i] == axes[i].size()) index[i++] = 0;
    if (i == axes.size()) break;
  }
  verdict.pass = verdict.min_margin > 0.0;
  return verdict;
}

std::vector<std::vector<double>> diameter_axes(std::span<const Space> spaces, int points_per_axis) {
  if (points_per_axis < 2) throw ArgumentError("need at least two points per axis");
  std::vector<std::vector<double>> axes;
  for (const Space& s : spaces) {
    if (!is_nontrivial(s)) {
      axes.push_back({0.0});
      continue;
    }
    if (std::holds_alternative<Discrete>(s)) {
      axes.push_back({0.0, 1.0});
      continue;
    }
    double top = diameter_bound(s);
    if (const auto* e = std::get_if<Euclidean>(&s)) top = 2.0 * e->extent * std::sqrt(e->dim);
    std::vector<double> axis(points_per_axis);
    for (int i = 0; i < points_per_axis; ++i) axis[i] = top * i / (points_per_axis - 1);
    axes.push_back(std::move(axis));
  }
  return axes;
}

}  // namespace pdk
