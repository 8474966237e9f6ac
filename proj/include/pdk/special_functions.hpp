#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace pdk {

struct Atom {
  double location;
  double weight;
};

/// Finite positive measure stored as a sorted list of point masses.
///
/// Atoms with equal locations are merged on construction, so locations are
/// strictly increasing. Open measures live on (0, inf); closed measures
/// (used by Bernstein-Widder mixtures) also admit an atom at 0.
class DiscreteMeasure {
 public:
  enum class Support { Open, Closed };

  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<Atom> atoms, Support support = Support::Open);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool is_zero() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }
  double total_mass() const;

 private:
  std::vector<Atom> atoms_;
};

/// f(w) = C + D w^-lambda + sum_i w_i (w + s_i)^-lambda.
class StieltjesFunction {
 public:
  StieltjesFunction(double order, double c, double d, DiscreteMeasure measure = {});

  double order() const { return order_; }
  double c() const { return c_; }
  double d() const { return d_; }
  const DiscreteMeasure& measure() const { return measure_; }

  bool is_bounded() const { return d_ == 0.0; }
  bool is_constant() const { return d_ == 0.0 && measure_.is_zero(); }
  /// Continuous extension at 0+, defined only for bounded functions.
  std::optional<double> limit_at_zero() const;
  double limit_at_infinity() const { return c_; }

 private:
  double order_;
  double c_;
  double d_;
  DiscreteMeasure measure_;
};

/// f(w) = A + B w^lambda + sum_i w_i (w / (w + s_i))^lambda.
class CompleteBernsteinFunction {
 public:
  CompleteBernsteinFunction(double order, double a, double b, DiscreteMeasure measure = {});

  double order() const { return order_; }
  double a() const { return a_; }
  double b() const { return b_; }
  const DiscreteMeasure& measure() const { return measure_; }

  bool is_constant() const { return b_ == 0.0 && measure_.is_zero(); }

 private:
  double order_;
  double a_;
  double b_;
  DiscreteMeasure measure_;
};

/// f(w) = a + b w + sum_i w_i (1 - exp(-s_i w)), extended continuously to 0.
class BernsteinFunction {
 public:
  BernsteinFunction(double a, double b, DiscreteMeasure measure = {});

  static BernsteinFunction identity() { return {0.0, 1.0}; }

  double a() const { return a_; }
  double b() const { return b_; }
  const DiscreteMeasure& measure() const { return measure_; }

  bool is_strictly_increasing() const { return b_ > 0.0 || !measure_.is_zero(); }
  /// f(w) > 0 for every w > 0.
  bool is_positive_valued() const { return a_ > 0.0 || is_strictly_increasing(); }

 private:
  double a_;
  double b_;
  DiscreteMeasure measure_;
};

/// Bernstein-Widder mixture sum_i w_i exp(-s_i w) with s_i >= 0.
class ExponentialMixture {
 public:
  explicit ExponentialMixture(DiscreteMeasure measure);
  const DiscreteMeasure& measure() const { return measure_; }

 private:
  DiscreteMeasure measure_;
};

class CompletelyMonotoneFunction {
 public:
  using Representation = std::variant<StieltjesFunction, ExponentialMixture>;

  CompletelyMonotoneFunction(StieltjesFunction f) : rep_(std::move(f)) {}
  CompletelyMonotoneFunction(ExponentialMixture f) : rep_(std::move(f)) {}

  const Representation& representation() const { return rep_; }
  bool is_bounded() const;
  bool is_constant() const;

 private:
  Representation rep_;
};

double eval_stieltjes(const StieltjesFunction& f, double w);
/// Same as eval_stieltjes but admits w == 0 for bounded functions.
double eval_stieltjes_extended(const StieltjesFunction& f, double w);
double eval_complete_bernstein(const CompleteBernsteinFunction& f, double w);
double eval_bernstein(const BernsteinFunction& f, double w);
/// Defined on (0, inf), and at 0 when the function is bounded.
double eval_completely_monotone(const CompletelyMonotoneFunction& f, double w);

struct MonotonicityOrder {
  int order;
  double worst_signed;  // min over the grid of (-1)^n times the divided difference
  bool pass;
};

struct MonotonicityReport {
  std::vector<MonotonicityOrder> orders;  // orders 0..max_order
  std::optional<int> first_violation;
  double tolerance;
  bool pass() const { return !first_violation.has_value(); }
};

/// Sign test of divided differences up to max_order (<= 8).
///
/// Divided differences of order n have the sign of f^(n) at an interior
/// point, so a completely monotone f satisfies (-1)^n f[x_0..x_n] >= 0.
/// The tolerance is 1e-7 * max |f| on the grid.
MonotonicityReport check_complete_monotonicity(const std::function<double(double)>& f,
                                               std::span<const double> grid, int max_order);

}  // namespace pdk
