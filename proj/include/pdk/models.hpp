#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "pdk/cnd.hpp"
#include "pdk/spaces.hpp"
#include "pdk/special_functions.hpp"

namespace pdk {

// In every model g consumes the first g.arity() distances (the X side) and
// h the remaining ones (the Y x Z side).

/// F(t, u, v) = f1(g(t)) f2(h(u, v))
struct ProductModel {
  CompletelyMonotoneFunction f1;
  CompletelyMonotoneFunction f2;
  CNDFunction g;
  CNDFunction h;
};

/// F_r(t, u) = h(u)^-r f(g(t) / h(u)) on two spaces.
struct TwoSpaceGneiting {
  StieltjesFunction f;
  CNDFunction g;
  CNDFunction h;
  double r;
};

/// G_r(t, u, v) = h(u, v)^-r f(g(t) / h(u, v))
struct StieltjesG {
  StieltjesFunction f;
  CNDFunction g;
  CNDFunction h;
  double r;
};

/// H_r(t, u, v) = g(t)^-r f(h(u, v) / g(t))
struct StieltjesH {
  StieltjesFunction f;
  CNDFunction g;
  CNDFunction h;
  double r;
};

/// I_r(t, u, v) = g(t)^-r f(g(t) / h(u, v)), f complete Bernstein.
struct CompleteBernsteinI {
  CompleteBernsteinFunction f;
  CNDFunction g;
  CNDFunction h;
  double r;
};

/// J_r(t, u, v) = h(u, v)^-r f(h(u, v) / g(t)), f complete Bernstein.
struct CompleteBernsteinJ {
  CompleteBernsteinFunction f;
  CNDFunction g;
  CNDFunction h;
  double r;
};

using ModelVariant = std::variant<ProductModel, TwoSpaceGneiting, StieltjesG, StieltjesH,
                                  CompleteBernsteinI, CompleteBernsteinJ>;

/// Parameter checks shared by every constructor: r >= lambda, positivity of
/// g and h where the formula divides by them or f has a pole at 0.
void validate_model(const ModelVariant& model);

double eval_product(const ProductModel& m, std::span<const double> d);
double eval_Fr(const TwoSpaceGneiting& m, std::span<const double> d);
double eval_Gr(const StieltjesG& m, std::span<const double> d);
double eval_Hr(const StieltjesH& m, std::span<const double> d);
double eval_Ir(const CompleteBernsteinI& m, std::span<const double> d);
double eval_Jr(const CompleteBernsteinJ& m, std::span<const double> d);
double evaluate(const ModelVariant& m, std::span<const double> d);

/// A validated model bound to its product space.
class KernelModel {
 public:
  KernelModel(ModelVariant model, ProductSpace spaces);

  const ModelVariant& variant() const { return model_; }
  const ProductSpace& spaces() const { return spaces_; }
  std::span<const Space> x_spaces() const;
  std::span<const Space> yz_spaces() const;
  const CNDFunction& g() const;
  const CNDFunction& h() const;

  /// "product", "F_r", "G_r", "H_r", "I_r" or "J_r".
  std::string name() const;
  std::string describe() const;

  double operator()(std::span<const double> d) const { return evaluate(model_, d); }
  double operator()(double t, double u) const;
  double operator()(double t, double u, double v) const;
  /// Value at the zero tuple; the constant Gram diagonal.
  double at_origin() const { return origin_value_; }

 private:
  ModelVariant model_;
  ProductSpace spaces_;
  double origin_value_;
};

enum class SpdVerdict { SpdGuaranteed, PdOnly, NecessaryConditionViolated, OpenCase };

/// How a necessary condition for strict positive definiteness fails. Each
/// clause has a witness pair of points differing only on one side.
enum class ViolatedClause { GNotStrict, HNotStrict, ConstantInX, ConstantInYZ };

std::string to_string(SpdVerdict v);
std::string to_string(ViolatedClause c);
std::optional<ViolatedClause> parse_clause(const std::string& name);

struct Hypothesis {
  std::string name;
  bool holds;
};

/// One row of the decision table. The row fires when all its hypotheses hold.
struct ConditionEntry {
  enum class Kind { Necessary, Sufficient, Open };
  std::string id;
  Kind kind;
  std::vector<Hypothesis> hypotheses;
  bool fired = false;
  SpdVerdict outcome;
  std::optional<ViolatedClause> clause;
};

struct StrictnessEvidence {
  bool strict = false;
  std::string source;  // "flag", "vacuous" or "grid"
  double min_margin = 0.0;
  std::vector<double> witness;
};

struct SpdConditionReport {
  std::string model;
  SpdVerdict verdict = SpdVerdict::PdOnly;
  std::optional<ViolatedClause> violated;
  std::string deciding_condition;
  bool x_nontrivial = false;
  bool yz_nontrivial = false;
  bool metric = true;
  StrictnessEvidence g_strictness;
  StrictnessEvidence h_strictness;
  std::vector<ConditionEntry> entries;
};

/// Decision table for strict positive definiteness.
///
/// Rows are evaluated in the order open case, necessary conditions,
/// sufficient conditions; the first firing row decides. PdOnly when none
/// fires. Strictness of g and h is read from flags, or probed on a grid over
/// the diameter sets (a failing grid point is a proof, a passing grid only
/// evidence).
SpdConditionReport spd_report(const KernelModel& model);

struct Counterexample {
  ViolatedClause clause;
  ProductPoint first;
  ProductPoint second;
  Eigen::Matrix2d gram;
  double det = 0.0;
  double scale = 0.0;  // max |entry|
};

/// Two distinct points, equal on all but one side, with a singular 2x2 Gram
/// matrix. Throws ArgumentError if the clause does not fire for the model.
Counterexample counterexample_2x2(const KernelModel& model, ViolatedClause clause);

}  // namespace pdk
