#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "pdk/cnd.hpp"
#include "pdk/models.hpp"
#include "pdk/spaces.hpp"
#include "pdk/special_functions.hpp"
#include "pdk/validation.hpp"

namespace pdk::io {

using nlohmann::json;

// Parsing. Every malformed or ill-typed document raises ConfigError; value
// range violations keep the library's own error types.

/// {"kind": "euclidean", "param": dim, "extent": 1} | {"kind": "sphere", "param": dim}
/// | {"kind": "interval", "param": length} | {"kind": "circle"}
/// | {"kind": "discrete", "param": ["a", "b"]}
Space parse_space(const json& j);
ProductSpace parse_spaces(const json& j);

/// {"location": s, "weight": w} objects or [s, w] pairs.
DiscreteMeasure parse_measure(const json& j, DiscreteMeasure::Support support);

/// {"class": "stieltjes", "lambda": 1, "constants": {"C": 0, "D": 1},
///  "atoms": [[s, w], ...]}
StieltjesFunction parse_stieltjes(const json& j);
/// {"class": "complete_bernstein", "lambda": 1, "constants": {"A": 0, "B": 1},
///  "atoms": [...]}
CompleteBernsteinFunction parse_complete_bernstein(const json& j);
/// {"class": "bernstein", "constants": {"a": 0, "b": 1}, "atoms": [...]}
BernsteinFunction parse_bernstein(const json& j);
/// A stieltjes document or {"class": "cm_mixture", "atoms": [...]}.
CompletelyMonotoneFunction parse_completely_monotone(const json& j);

/// Expression tree keyed by "op": power {"exponent"}, linear, minus_cos
/// {"offset"}, sine, constant {"value"}, shift {"c", "arg"},
/// bernstein_compose {"f", "g", "h"}, euclidean_cross {"f", "h", "n"},
/// bounded_complement {"bound", "model"} where model holds f, g, h, r.
CNDFunction parse_cnd(const json& j);

/// {"variant": "G_r", "f": {...}, "g": {...}, "h": {...}, "r": 1,
///  "spaces": [...]}; the product variant takes "f1" and "f2" instead of f, r.
KernelModel parse_model(const json& j);

json parse_json_text(const std::string& text);
json read_json_file(const std::string& path);

// Serialization.

json to_json(const Point& p);
json to_json(const ProductPoint& p);
json to_json(const CndVerdict& v);
json to_json(const GramReport& r);
json to_json(const SpdConditionReport& r);
json to_json(const Counterexample& c);

}  // namespace pdk::io
