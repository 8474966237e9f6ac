#include "pdk/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pdk/errors.hpp"

namespace pdk {

namespace {

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

struct SplitValues {
  double g;
  double h;
};

SplitValues split_eval(const CNDFunction& g, const CNDFunction& h, std::span<const double> d) {
  if (d.size() != g.arity() + h.arity()) {
    throw ArgumentError("model expects " + std::to_string(g.arity() + h.arity()) +
                        " distances, got " + std::to_string(d.size()));
  }
  return {g(d.first(g.arity())), h(d.subspan(g.arity()))};
}

double positive_or_pole(double value, const char* which) {
  if (!(value > 0.0)) {
    throw DomainError(std::string("pole: ") + which + " = " + num(value) + " is not positive");
  }
  return value;
}

void require_order(double r, double lambda) {
  if (!std::isfinite(r) || r < lambda) {
    throw ParameterError("exponent r = " + num(r) + " must satisfy r >= lambda = " + num(lambda));
  }
}

void require_positive(const CNDFunction& fn, const char* which, const char* why) {
  if (!fn.flags().positive_valued) {
    throw ConstructionError(std::string(which) + " must be positive-valued: " + why);
  }
}

void require_nonnegative(const CNDFunction& fn, const char* which) {
  if (!fn.flags().nonnegative_valued) {
    throw ConstructionError(std::string(which) + " must be nonnegative-valued");
  }
}

const CNDFunction& g_of(const ModelVariant& m) {
  return std::visit([](const auto& v) -> const CNDFunction& { return v.g; }, m);
}
const CNDFunction& h_of(const ModelVariant& m) {
  return std::visit([](const auto& v) -> const CNDFunction& { return v.h; }, m);
}

}  // namespace

void validate_model(const ModelVariant& model) {
  std::visit(
      Overloaded{
          [](const ProductModel& m) {
            if (m.f1.is_bounded()) {
              require_nonnegative(m.g, "g");
            } else {
              require_positive(m.g, "g", "f1 is unbounded at 0");
            }
            if (m.f2.is_bounded()) {
              require_nonnegative(m.h, "h");
            } else {
              require_positive(m.h, "h", "f2 is unbounded at 0");
            }
          },
          [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            require_order(m.r, m.f.order());
            require_positive(m.h, "h", "the model divides by h");
            if constexpr (std::is_same_v<T, StieltjesG> || std::is_same_v<T, TwoSpaceGneiting>) {
              if (m.f.is_bounded()) {
                require_nonnegative(m.g, "g");
              } else {
                require_positive(m.g, "g", "f has a pole at 0 (D_f > 0)");
              }
            } else {
              require_positive(m.g, "g", "the model divides by g");
            }
          },
      },
      model);
}

double eval_product(const ProductModel& m, std::span<const double> d) {
  const auto [gv, hv] = split_eval(m.g, m.h, d);
  return eval_completely_monotone(m.f1, gv) * eval_completely_monotone(m.f2, hv);
}

double eval_Fr(const TwoSpaceGneiting& m, std::span<const double> d) {
  const auto [gv, hv] = split_eval(m.g, m.h, d);
  positive_or_pole(hv, "h");
  return std::pow(hv, -m.r) * eval_stieltjes_extended(m.f, gv / hv);
}

double eval_Gr(const StieltjesG& m, std::span<const double> d) {
  const auto [gv, hv] = split_eval(m.g, m.h, d);
  positive_or_pole(hv, "h");
  return std::pow(hv, -m.r) * eval_stieltjes_extended(m.f, gv / hv);
}

double eval_Hr(const StieltjesH& m, std::span<const double> d) {
  const auto [gv, hv] = split_eval(m.g, m.h, d);
  positive_or_pole(gv, "g");
  return std::pow(gv, -m.r) * eval_stieltjes_extended(m.f, hv / gv);
}

double eval_Ir(const CompleteBernsteinI& m, std::span<const double> d) {
  const auto [gv, hv] = split_eval(m.g, m.h, d);
  positive_or_pole(gv, "g");
  positive_or_pole(hv, "h");
  return std::pow(gv, -m.r) * eval_complete_bernstein(m.f, gv / hv);
}

double eval_Jr(const CompleteBernsteinJ& m, std::span<const double> d) {
  const auto [gv, hv] = split_eval(m.g, m.h, d);
  positive_or_pole(gv, "g");
  positive_or_pole(hv, "h");
  return std::pow(hv, -m.r) * eval_complete_bernstein(m.f, hv / gv);
}

double evaluate(const ModelVariant& m, std::span<const double> d) {
  return std::visit(Overloaded{
                        [d](const ProductModel& v) { return eval_product(v, d); },
                        [d](const TwoSpaceGneiting& v) { return eval_Fr(v, d); },
                        [d](const StieltjesG& v) { return eval_Gr(v, d); },
                        [d](const StieltjesH& v) { return eval_Hr(v, d); },
                        [d](const CompleteBernsteinI& v) { return eval_Ir(v, d); },
                        [d](const CompleteBernsteinJ& v) { return eval_Jr(v, d); },
                    },
                    m);
}

KernelModel::KernelModel(ModelVariant model, ProductSpace spaces)
    : model_(std::move(model)), spaces_(std::move(spaces)) {
  validate_model(model_);
  for (const Space& s : spaces_) validate_space(s);
  const std::size_t expected = std::holds_alternative<TwoSpaceGneiting>(model_) ? 2 : 3;
  if (spaces_.size() != expected) {
    throw ConstructionError(name() + " needs " + std::to_string(expected) + " spaces, got " +
                            std::to_string(spaces_.size()));
  }
  const CNDFunction& gfn = g();
  const CNDFunction& hfn = h();
  if (gfn.arity() + hfn.arity() != spaces_.size()) {
    throw ConstructionError("g and h consume " + std::to_string(gfn.arity() + hfn.arity()) +
                            " distances but the product has " + std::to_string(spaces_.size()) +
                            " spaces");
  }
  gfn.check_domain(x_spaces());
  hfn.check_domain(yz_spaces());
  const std::vector<double> zeros(spaces_.size(), 0.0);
  origin_value_ = evaluate(model_, zeros);
}

std::span<const Space> KernelModel::x_spaces() const {
  return std::span<const Space>(spaces_).first(g().arity());
}

std::span<const Space> KernelModel::yz_spaces() const {
  return std::span<const Space>(spaces_).subspan(g().arity());
}

const CNDFunction& KernelModel::g() const { return g_of(model_); }
const CNDFunction& KernelModel::h() const { return h_of(model_); }

std::string KernelModel::name() const {
  return std::visit(Overloaded{
                        [](const ProductModel&) { return "product"; },
                        [](const TwoSpaceGneiting&) { return "F_r"; },
                        [](const StieltjesG&) { return "G_r"; },
                        [](const StieltjesH&) { return "H_r"; },
                        [](const CompleteBernsteinI&) { return "I_r"; },
                        [](const CompleteBernsteinJ&) { return "J_r"; },
                    },
                    model_);
}

std::string KernelModel::describe() const {
  std::string out = name() + " on " + product_name(spaces_);
  std::visit(Overloaded{
                 [&](const ProductModel&) {},
                 [&](const auto& m) {
                   out += ", lambda=" + num(m.f.order()) + ", r=" + num(m.r);
                 },
             },
             model_);
  return out + ", g=" + g().describe() + ", h=" + h().describe();
}

double KernelModel::operator()(double t, double u) const {
  const double d[] = {t, u};
  return (*this)(d);
}

double KernelModel::operator()(double t, double u, double v) const {
  const double d[] = {t, u, v};
  return (*this)(d);
}

std::string to_string(SpdVerdict v) {
  switch (v) {
    case SpdVerdict::SpdGuaranteed: return "SPD_guaranteed";
    case SpdVerdict::PdOnly: return "PD_only";
    case SpdVerdict::NecessaryConditionViolated: return "necessary_condition_violated";
    case SpdVerdict::OpenCase: return "open_case";
  }
  return "unknown";
}

std::string to_string(ViolatedClause c) {
  switch (c) {
    case ViolatedClause::GNotStrict: return "g_not_strict";
    case ViolatedClause::HNotStrict: return "h_not_strict";
    case ViolatedClause::ConstantInX: return "constant_in_x";
    case ViolatedClause::ConstantInYZ: return "constant_in_yz";
  }
  return "unknown";
}

std::optional<ViolatedClause> parse_clause(const std::string& name) {
  for (auto c : {ViolatedClause::GNotStrict, ViolatedClause::HNotStrict,
                 ViolatedClause::ConstantInX, ViolatedClause::ConstantInYZ}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

namespace {

StrictnessEvidence strictness_of(const CNDFunction& fn, std::span<const Space> spaces) {
  StrictnessEvidence ev;
  if (std::none_of(spaces.begin(), spaces.end(), [](const Space& s) { return is_nontrivial(s); })) {
    ev.strict = true;
    ev.source = "vacuous";
    return ev;
  }
  const auto grid = strictness_check(fn, diameter_axes(spaces));
  ev.min_margin = grid.min_margin;
  ev.witness = grid.witness;
  if (fn.flags().strict_at_zero) {
    ev.strict = true;
    ev.source = "flag";
  } else {
    ev.strict = grid.pass;
    ev.source = "grid";
  }
  return ev;
}

// The Gneiting-type models are all of the form
//   outer^-r S(inner / outer)  with  S(w) = C + D w^-lambda + sum_i w_i (w + s_i)^-lambda
// once the complete Bernstein generator is rewritten as a Stieltjes function
// of the reciprocal argument: A + B w^lambda + sum (w/(w+s))^lambda evaluated
// at w = 1/x has C = A, D = B and a nonzero measure iff nu is nonzero.
struct GneitingShape {
  double constant;
  double singular;
  bool measure_nonzero;
  double order;
  double r;
  bool inner_is_x;  // inner argument is g (X side) or h (Y x Z side)
};

std::optional<GneitingShape> shape_of(const ModelVariant& m) {
  return std::visit(
      Overloaded{
          [](const ProductModel&) -> std::optional<GneitingShape> { return std::nullopt; },
          [](const TwoSpaceGneiting& v) -> std::optional<GneitingShape> {
            return GneitingShape{v.f.c(), v.f.d(), !v.f.measure().is_zero(), v.f.order(), v.r, true};
          },
          [](const StieltjesG& v) -> std::optional<GneitingShape> {
            return GneitingShape{v.f.c(), v.f.d(), !v.f.measure().is_zero(), v.f.order(), v.r, true};
          },
          [](const StieltjesH& v) -> std::optional<GneitingShape> {
            return GneitingShape{v.f.c(), v.f.d(), !v.f.measure().is_zero(), v.f.order(), v.r,
                                 false};
          },
          [](const CompleteBernsteinI& v) -> std::optional<GneitingShape> {
            return GneitingShape{v.f.a(), v.f.b(), !v.f.measure().is_zero(), v.f.order(), v.r,
                                 false};
          },
          [](const CompleteBernsteinJ& v) -> std::optional<GneitingShape> {
            return GneitingShape{v.f.a(), v.f.b(), !v.f.measure().is_zero(), v.f.order(), v.r, true};
          },
      },
      m);
}

ConditionEntry entry(std::string id, ConditionEntry::Kind kind, std::vector<Hypothesis> hyps,
                     SpdVerdict outcome, std::optional<ViolatedClause> clause = std::nullopt) {
  ConditionEntry e{std::move(id), kind, std::move(hyps), false, outcome, clause};
  e.fired = std::all_of(e.hypotheses.begin(), e.hypotheses.end(),
                        [](const Hypothesis& h) { return h.holds; });
  return e;
}

}  // namespace

SpdConditionReport spd_report(const KernelModel& model) {
  using Kind = ConditionEntry::Kind;
  SpdConditionReport report;
  report.model = model.describe();
  auto nontrivial = [](std::span<const Space> s) {
    return std::any_of(s.begin(), s.end(), [](const Space& x) { return is_nontrivial(x); });
  };
  report.x_nontrivial = nontrivial(model.x_spaces());
  report.yz_nontrivial = nontrivial(model.yz_spaces());
  report.metric = std::all_of(model.spaces().begin(), model.spaces().end(),
                              [](const Space& s) { return is_metric(s); });
  report.g_strictness = strictness_of(model.g(), model.x_spaces());
  report.h_strictness = strictness_of(model.h(), model.yz_spaces());

  const bool g_strict = report.g_strictness.strict;
  const bool h_strict = report.h_strictness.strict;
  auto& rows = report.entries;

  rows.push_back(entry("g_strictness_necessary", Kind::Necessary,
                       {{"x_nontrivial", report.x_nontrivial}, {"g_not_strict", !g_strict}},
                       SpdVerdict::NecessaryConditionViolated, ViolatedClause::GNotStrict));
  rows.push_back(entry("h_strictness_necessary", Kind::Necessary,
                       {{"yz_nontrivial", report.yz_nontrivial}, {"h_not_strict", !h_strict}},
                       SpdVerdict::NecessaryConditionViolated, ViolatedClause::HNotStrict));

  if (const auto shape = shape_of(model.variant())) {
    const bool inner_nontrivial = shape->inner_is_x ? report.x_nontrivial : report.yz_nontrivial;
    const bool outer_nontrivial = shape->inner_is_x ? report.yz_nontrivial : report.x_nontrivial;
    const auto constant_in_inner =
        shape->inner_is_x ? ViolatedClause::ConstantInX : ViolatedClause::ConstantInYZ;
    const auto constant_in_outer =
        shape->inner_is_x ? ViolatedClause::ConstantInYZ : ViolatedClause::ConstantInX;
    const bool critical = shape->r == shape->order;
    const bool singular = shape->singular > 0.0;
    const bool has_constant = shape->constant > 0.0;
    const bool measure = shape->measure_nonzero;

    rows.insert(rows.begin(),
                entry("critical_order_two_term_open", Kind::Open,
                      {{"constant_positive", has_constant},
                       {"singular_positive", singular},
                       {"r_equals_lambda", critical},
                       {"measure_zero", !measure}},
                      SpdVerdict::OpenCase));
    rows.push_back(entry("nonconstant_generator_necessary", Kind::Necessary,
                         {{"inner_nontrivial", inner_nontrivial},
                          {"singular_zero", !singular},
                          {"measure_zero", !measure}},
                         SpdVerdict::NecessaryConditionViolated, constant_in_inner));
    rows.push_back(entry("critical_order_pure_power_necessary", Kind::Necessary,
                         {{"outer_nontrivial", outer_nontrivial},
                          {"r_equals_lambda", critical},
                          {"singular_positive", singular},
                          {"constant_zero", !has_constant},
                          {"measure_zero", !measure}},
                         SpdVerdict::NecessaryConditionViolated, constant_in_outer));
    rows.push_back(entry("singular_part_sufficient", Kind::Sufficient,
                         {{"metric", report.metric},
                          {"singular_positive", singular},
                          {"r_greater_than_lambda", shape->r > shape->order},
                          {"g_strict", g_strict},
                          {"h_strict", h_strict}},
                         SpdVerdict::SpdGuaranteed));
    rows.push_back(entry("regular_generator_sufficient", Kind::Sufficient,
                         {{"metric", report.metric},
                          {"inner_nontrivial", inner_nontrivial},
                          {"singular_zero", !singular},
                          {"generator_nonconstant", measure},
                          {"g_strict", g_strict},
                          {"h_strict", h_strict}},
                         SpdVerdict::SpdGuaranteed));
    rows.push_back(entry("critical_order_with_measure_sufficient", Kind::Sufficient,
                         {{"metric", report.metric},
                          {"singular_positive", singular},
                          {"r_equals_lambda", critical},
                          {"measure_nonzero", measure},
                          {"g_strict", g_strict},
                          {"h_strict", h_strict}},
                         SpdVerdict::SpdGuaranteed));
  } else {
    const auto& m = std::get<ProductModel>(model.variant());
    rows.push_back(entry("product_sufficient", Kind::Sufficient,
                         {{"metric", report.metric},
                          {"f1_nonconstant", !m.f1.is_constant()},
                          {"f2_nonconstant", !m.f2.is_constant()},
                          {"g_positive", m.g.flags().positive_valued},
                          {"h_positive", m.h.flags().positive_valued},
                          {"g_strict", g_strict},
                          {"h_strict", h_strict}},
                         SpdVerdict::SpdGuaranteed));
  }

  for (Kind kind : {Kind::Open, Kind::Necessary, Kind::Sufficient}) {
    for (const ConditionEntry& e : rows) {
      if (e.kind == kind && e.fired) {
        report.verdict = e.outcome;
        report.violated = e.clause;
        report.deciding_condition = e.id;
        return report;
      }
    }
  }
  report.verdict = SpdVerdict::PdOnly;
  return report;
}

Counterexample counterexample_2x2(const KernelModel& model, ViolatedClause clause) {
  const SpdConditionReport report = spd_report(model);
  const bool fires = std::any_of(report.entries.begin(), report.entries.end(),
                                 [clause](const ConditionEntry& e) {
                                   return e.kind == ConditionEntry::Kind::Necessary && e.fired &&
                                          e.clause == clause;
                                 });
  if (!fires) {
    throw ArgumentError("clause " + to_string(clause) + " is not violated by " + report.model);
  }

  const auto& spaces = model.spaces();
  const std::size_t x_arity = model.g().arity();
  std::vector<double> offset(spaces.size(), 0.0);

  auto default_offset = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) {
      if (is_nontrivial(spaces[i])) {
        offset[i] = std::min(1.0, diameter_bound(spaces[i]));
        return;
      }
    }
  };
  switch (clause) {
    case ViolatedClause::GNotStrict:
      std::copy(report.g_strictness.witness.begin(), report.g_strictness.witness.end(),
                offset.begin());
      break;
    case ViolatedClause::HNotStrict:
      std::copy(report.h_strictness.witness.begin(), report.h_strictness.witness.end(),
                offset.begin() + static_cast<std::ptrdiff_t>(x_arity));
      break;
    case ViolatedClause::ConstantInX: default_offset(0, x_arity); break;
    case ViolatedClause::ConstantInYZ: default_offset(x_arity, spaces.size()); break;
  }

  Counterexample cx;
  cx.clause = clause;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    cx.first.push_back(origin(spaces[i]));
    cx.second.push_back(point_at_distance(spaces[i], offset[i]));
  }
  const double diag = model.at_origin();
  const double off = model(component_distances(spaces, cx.first, cx.second));
  cx.gram << diag, off, off, diag;
  cx.det = diag * diag - off * off;
  cx.scale = std::max(std::abs(diag), std::abs(off));
  return cx;
}

}  // namespace pdk
