#include "pdk/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdk/errors.hpp"

namespace pdk {

namespace {

void require_nonnegative(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    throw ParameterError(std::string(name) + " must be a finite nonnegative number, got " +
                         std::to_string(value));
  }
}

void require_order(double order) {
  if (!std::isfinite(order) || order <= 0.0) {
    throw ParameterError("order lambda must be positive, got " + std::to_string(order));
  }
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms, Support support) {
  for (const Atom& a : atoms) {
    const bool location_ok = support == Support::Open ? a.location > 0.0 : a.location >= 0.0;
    if (!std::isfinite(a.location) || !location_ok) {
      throw ParameterError("measure atom location out of support: " + std::to_string(a.location));
    }
    if (!std::isfinite(a.weight) || a.weight <= 0.0) {
      throw ParameterError("measure atom weight must be positive: " + std::to_string(a.weight));
    }
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.location < y.location; });
  for (const Atom& a : atoms) {
    if (!atoms_.empty() && atoms_.back().location == a.location) {
      atoms_.back().weight += a.weight;
    } else {
      atoms_.push_back(a);
    }
  }
}

double DiscreteMeasure::total_mass() const {
  double mass = 0.0;
  for (const Atom& a : atoms_) mass += a.weight;
  return mass;
}

StieltjesFunction::StieltjesFunction(double order, double c, double d, DiscreteMeasure measure)
    : order_(order), c_(c), d_(d), measure_(std::move(measure)) {
  require_order(order);
  require_nonnegative(c, "C_f");
  require_nonnegative(d, "D_f");
}

std::optional<double> StieltjesFunction::limit_at_zero() const {
  if (!is_bounded()) return std::nullopt;
  double value = c_;
  for (const Atom& a : measure_.atoms()) value += a.weight * std::pow(a.location, -order_);
  return value;
}

CompleteBernsteinFunction::CompleteBernsteinFunction(double order, double a, double b,
                                                     DiscreteMeasure measure)
    : order_(order), a_(a), b_(b), measure_(std::move(measure)) {
  require_order(order);
  require_nonnegative(a, "A_f");
  require_nonnegative(b, "B_f");
}

BernsteinFunction::BernsteinFunction(double a, double b, DiscreteMeasure measure)
    : a_(a), b_(b), measure_(std::move(measure)) {
  require_nonnegative(a, "a");
  require_nonnegative(b, "b");
}

ExponentialMixture::ExponentialMixture(DiscreteMeasure measure) : measure_(std::move(measure)) {}

bool CompletelyMonotoneFunction::is_bounded() const {
  if (const auto* s = std::get_if<StieltjesFunction>(&rep_)) return s->is_bounded();
  return true;
}

bool CompletelyMonotoneFunction::is_constant() const {
  if (const auto* s = std::get_if<StieltjesFunction>(&rep_)) return s->is_constant();
  const auto& atoms = std::get<ExponentialMixture>(rep_).measure().atoms();
  return atoms.empty() || (atoms.size() == 1 && atoms.front().location == 0.0);
}

double eval_stieltjes(const StieltjesFunction& f, double w) {
  if (!(w > 0.0)) throw DomainError("Stieltjes function evaluated at w <= 0");
  const double lambda = f.order();
  double value = f.c();
  if (f.d() > 0.0) value += f.d() * std::pow(w, -lambda);
  for (const Atom& a : f.measure().atoms()) value += a.weight * std::pow(w + a.location, -lambda);
  return value;
}

double eval_stieltjes_extended(const StieltjesFunction& f, double w) {
  if (w == 0.0) {
    if (auto v = f.limit_at_zero()) return *v;
    throw DomainError("unbounded Stieltjes function has a pole at w = 0");
  }
  return eval_stieltjes(f, w);
}

double eval_complete_bernstein(const CompleteBernsteinFunction& f, double w) {
  if (!(w > 0.0)) throw DomainError("complete Bernstein function evaluated at w <= 0");
  const double lambda = f.order();
  double value = f.a();
  if (f.b() > 0.0) value += f.b() * std::pow(w, lambda);
  for (const Atom& a : f.measure().atoms()) value += a.weight * std::pow(w / (w + a.location), lambda);
  return value;
}

double eval_bernstein(const BernsteinFunction& f, double w) {
  if (!(w >= 0.0)) throw DomainError("Bernstein function evaluated at w < 0");
  double value = f.a() + f.b() * w;
  for (const Atom& a : f.measure().atoms()) value += a.weight * -std::expm1(-a.location * w);
  return value;
}

double eval_completely_monotone(const CompletelyMonotoneFunction& f, double w) {
  return std::visit(
      [w](const auto& rep) -> double {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, StieltjesFunction>) {
          return eval_stieltjes_extended(rep, w);
        } else {
          if (!(w >= 0.0)) throw DomainError("completely monotone mixture evaluated at w < 0");
          double value = 0.0;
          for (const Atom& a : rep.measure().atoms()) value += a.weight * std::exp(-a.location * w);
          return value;
        }
      },
      f.representation());
}

MonotonicityReport check_complete_monotonicity(const std::function<double(double)>& f,
                                               std::span<const double> grid, int max_order) {
  if (max_order < 0 || max_order > 8) throw ArgumentError("max_order must lie in [0, 8]");
  if (grid.size() < static_cast<std::size_t>(max_order) + 1) {
    throw ArgumentError("grid needs at least max_order + 1 points");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw ArgumentError("grid must be strictly increasing and positive");
    }
  }

  std::vector<double> table(grid.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    table[i] = f(grid[i]);
    scale = std::max(scale, std::abs(table[i]));
  }

  MonotonicityReport report;
  report.tolerance = 1e-7 * scale;
  for (int n = 0; n <= max_order; ++n) {
    if (n > 0) {
      // In-place update: table[i] becomes f[x_i, ..., x_{i+n}].
      for (std::size_t i = 0; i + n < grid.size(); ++i) {
        table[i] = (table[i + 1] - table[i]) / (grid[i + n] - grid[i]);
      }
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    double worst = sign * table[0];
    for (std::size_t i = 1; i + n < grid.size(); ++i) worst = std::min(worst, sign * table[i]);
    const bool pass = worst >= -report.tolerance;
    report.orders.push_back({n, worst, pass});
    if (!pass && !report.first_violation) report.first_violation = n;
  }
  return report;
}

}  // namespace pdk
