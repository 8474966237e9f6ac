#include "pdk/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pdk/errors.hpp"

namespace pdk::io {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ConfigError(std::string("expected an object holding \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw ConfigError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

int integer(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string("field \"") + key + "\" must be an integer");
  }
  return v.get<int>();
}

int integer_or(const json& j, const char* key, int fallback) {
  return j.contains(key) ? integer(j, key) : fallback;
}

std::string text(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw ConfigError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

const json& constants_of(const json& j) {
  static const json empty = json::object();
  if (!j.contains("constants")) return empty;
  const json& c = j.at("constants");
  if (!c.is_object()) throw ConfigError("\"constants\" must be an object");
  return c;
}

DiscreteMeasure atoms_of(const json& j, DiscreteMeasure::Support support) {
  return j.contains("atoms") ? parse_measure(j.at("atoms"), support) : DiscreteMeasure{};
}

void expect_class(const json& j, const char* name) {
  const std::string cls = text(j, "class");
  if (cls != name) throw ConfigError("expected class \"" + std::string(name) + "\", got \"" + cls + "\"");
}

// Finite numbers as JSON numbers, anything else as null.
json real(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

Space parse_space(const json& j) {
  const std::string kind = text(j, "kind");
  Space space;
  if (kind == "euclidean") {
    space = Euclidean{integer_or(j, "param", 1), number_or(j, "extent", 1.0)};
  } else if (kind == "sphere") {
    space = SphereGeodesic{integer_or(j, "param", 2)};
  } else if (kind == "interval") {
    space = Interval{number(j, "param")};
  } else if (kind == "circle") {
    space = Circle{};
  } else if (kind == "discrete") {
    const json& labels = field(j, "param");
    if (!labels.is_array()) throw ConfigError("discrete \"param\" must be an array of labels");
    Discrete d;
    for (const json& l : labels) {
      if (!l.is_string()) throw ConfigError("discrete \"param\" must be an array of labels");
      d.labels.push_back(l.get<std::string>());
    }
    space = std::move(d);
  } else {
    throw ConfigError("unknown space kind \"" + kind + "\"");
  }
  validate_space(space);
  return space;
}

ProductSpace parse_spaces(const json& j) {
  if (!j.is_array()) throw ConfigError("\"spaces\" must be an array");
  ProductSpace out;
  for (const json& s : j) out.push_back(parse_space(s));
  return out;
}

DiscreteMeasure parse_measure(const json& j, DiscreteMeasure::Support support) {
  if (!j.is_array()) throw ConfigError("\"atoms\" must be an array");
  std::vector<Atom> atoms;
  for (const json& a : j) {
    if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
      atoms.push_back({a[0].get<double>(), a[1].get<double>()});
    } else if (a.is_object()) {
      atoms.push_back({number(a, "location"), number(a, "weight")});
    } else {
      throw ConfigError("an atom is [location, weight] or {\"location\", \"weight\"}");
    }
  }
  return DiscreteMeasure(std::move(atoms), support);
}

StieltjesFunction parse_stieltjes(const json& j) {
  expect_class(j, "stieltjes");
  const json& c = constants_of(j);
  return StieltjesFunction(number(j, "lambda"), number_or(c, "C", 0.0), number_or(c, "D", 0.0),
                           atoms_of(j, DiscreteMeasure::Support::Open));
}

CompleteBernsteinFunction parse_complete_bernstein(const json& j) {
  expect_class(j, "complete_bernstein");
  const json& c = constants_of(j);
  return CompleteBernsteinFunction(number(j, "lambda"), number_or(c, "A", 0.0),
                                   number_or(c, "B", 0.0),
                                   atoms_of(j, DiscreteMeasure::Support::Open));
}

BernsteinFunction parse_bernstein(const json& j) {
  expect_class(j, "bernstein");
  const json& c = constants_of(j);
  return BernsteinFunction(number_or(c, "a", 0.0), number_or(c, "b", 0.0),
                           atoms_of(j, DiscreteMeasure::Support::Open));
}

CompletelyMonotoneFunction parse_completely_monotone(const json& j) {
  const std::string cls = text(j, "class");
  if (cls == "stieltjes") return parse_stieltjes(j);
  if (cls == "cm_mixture") {
    return ExponentialMixture(atoms_of(j, DiscreteMeasure::Support::Closed));
  }
  throw ConfigError("a completely monotone function is \"stieltjes\" or \"cm_mixture\", got \"" +
                    cls + "\"");
}

namespace {

TwoSpaceGneiting parse_two_space(const json& j) {
  return TwoSpaceGneiting{parse_stieltjes(field(j, "f")), parse_cnd(field(j, "g")),
                          parse_cnd(field(j, "h")), number(j, "r")};
}

}  // namespace

CNDFunction parse_cnd(const json& j) {
  const std::string op = text(j, "op");
  if (op == "power") return power(number(j, "exponent"));
  if (op == "linear") return linear();
  if (op == "minus_cos") return minus_cos(number_or(j, "offset", 3.0));
  if (op == "sine") return sine();
  if (op == "constant") return constant(number(j, "value"));
  if (op == "shift") return shift(number(j, "c"), parse_cnd(field(j, "arg")));
  if (op == "bernstein_compose") {
    return bernstein_compose(parse_bernstein(field(j, "f")), parse_cnd(field(j, "g")),
                             parse_cnd(field(j, "h")));
  }
  if (op == "euclidean_cross") {
    return euclidean_cross(parse_bernstein(field(j, "f")), parse_cnd(field(j, "h")),
                           integer(j, "n"));
  }
  if (op == "bounded_complement") {
    return bounded_complement(number(j, "bound"), parse_two_space(field(j, "model")));
  }
  throw ConfigError("unknown CND op \"" + op + "\"");
}

KernelModel parse_model(const json& j) {
  const std::string variant = text(j, "variant");
  ProductSpace spaces = parse_spaces(field(j, "spaces"));
  auto g = [&] { return parse_cnd(field(j, "g")); };
  auto h = [&] { return parse_cnd(field(j, "h")); };
  auto r = [&] { return number(j, "r"); };
  if (variant == "product") {
    return KernelModel(ProductModel{parse_completely_monotone(field(j, "f1")),
                                    parse_completely_monotone(field(j, "f2")), g(), h()},
                       std::move(spaces));
  }
  if (variant == "F_r") return KernelModel(parse_two_space(j), std::move(spaces));
  if (variant == "G_r") {
    return KernelModel(StieltjesG{parse_stieltjes(field(j, "f")), g(), h(), r()},
                       std::move(spaces));
  }
  if (variant == "H_r") {
    return KernelModel(StieltjesH{parse_stieltjes(field(j, "f")), g(), h(), r()},
                       std::move(spaces));
  }
  if (variant == "I_r") {
    return KernelModel(CompleteBernsteinI{parse_complete_bernstein(field(j, "f")), g(), h(), r()},
                       std::move(spaces));
  }
  if (variant == "J_r") {
    return KernelModel(CompleteBernsteinJ{parse_complete_bernstein(field(j, "f")), g(), h(), r()},
                       std::move(spaces));
  }
  throw ConfigError("unknown model variant \"" + variant + "\"");
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json_text(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json to_json(const Point& p) {
  return std::visit(Overloaded{
                        [](const Eigen::VectorXd& v) {
                          json arr = json::array();
                          for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(real(v(i)));
                          return arr;
                        },
                        [](double x) { return real(x); },
                        [](const Label& l) { return json{{"label", l.index}}; },
                    },
                    p);
}

json to_json(const ProductPoint& p) {
  json arr = json::array();
  for (const Point& x : p) arr.push_back(to_json(x));
  return arr;
}

json to_json(const CndVerdict& v) {
  return json{{"max_eig", real(v.max_eig)}, {"tol", real(v.tol)}, {"scale", real(v.scale)},
              {"pass", v.pass},             {"n", v.n},           {"seed", v.seed}};
}

json to_json(const GramReport& r) {
  return json{{"trial", r.trial},
              {"seed", r.seed},
              {"n", r.n},
              {"min_eig", real(r.min_eig)},
              {"max_eig", real(r.max_eig)},
              {"symmetry_residual", real(r.symmetry_residual)},
              {"scale", real(r.scale)},
              {"verdict", to_string(r.verdict)},
              {"psd_pass", r.psd_pass},
              {"space", r.space},
              {"model", r.model}};
}

namespace {

json evidence_json(const StrictnessEvidence& e) {
  json w = json::array();
  for (double x : e.witness) w.push_back(real(x));
  return json{{"strict", e.strict}, {"source", e.source}, {"min_margin", real(e.min_margin)},
              {"witness", w}};
}

std::string kind_name(ConditionEntry::Kind k) {
  switch (k) {
    case ConditionEntry::Kind::Necessary: return "necessary";
    case ConditionEntry::Kind::Sufficient: return "sufficient";
    case ConditionEntry::Kind::Open: return "open";
  }
  return "unknown";
}

}  // namespace

json to_json(const SpdConditionReport& r) {
  json rows = json::array();
  for (const ConditionEntry& e : r.entries) {
    json hyps = json::object();
    for (const Hypothesis& h : e.hypotheses) hyps[h.name] = h.holds;
    json row{{"id", e.id},
             {"kind", kind_name(e.kind)},
             {"fired", e.fired},
             {"outcome", to_string(e.outcome)},
             {"hypotheses", hyps}};
    if (e.clause) row["clause"] = to_string(*e.clause);
    rows.push_back(std::move(row));
  }
  json out{{"model", r.model},
           {"verdict", to_string(r.verdict)},
           {"deciding_condition", r.deciding_condition.empty() ? json(nullptr)
                                                               : json(r.deciding_condition)},
           {"violated", r.violated ? json(to_string(*r.violated)) : json(nullptr)},
           {"x_nontrivial", r.x_nontrivial},
           {"yz_nontrivial", r.yz_nontrivial},
           {"metric", r.metric},
           {"g_strictness", evidence_json(r.g_strictness)},
           {"h_strictness", evidence_json(r.h_strictness)},
           {"conditions", rows}};
  if (r.verdict == SpdVerdict::OpenCase) out["note"] = "remains an open question";
  return out;
}

json to_json(const Counterexample& c) {
  return json{{"clause", to_string(c.clause)},
              {"first", to_json(c.first)},
              {"second", to_json(c.second)},
              {"gram",
               {{real(c.gram(0, 0)), real(c.gram(0, 1))}, {real(c.gram(1, 0)), real(c.gram(1, 1))}}},
              {"det", real(c.det)},
              {"abs_det", real(std::abs(c.det))},
              {"scale", real(c.scale)}};
}

}  // namespace pdk::io
