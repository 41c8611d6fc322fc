#include <fmt/format.h>

#include "ricsol/manifest.hpp"

namespace ricsol {

namespace {

constexpr const char* kHyperbolic = R"json({
  "chart": {"coords": ["x", "y"], "bounds": {"y": [0, null]}},
  "metric": [["1/y^2", "0"],
             ["0", "1/y^2"]],
  "scalars": {"f1": "-2*ln(y)", "f2": "-ln(y)"},
  "constants": {"c1": 2, "c2": 1, "lambda": 3},
  "sampling": {"strategy": "uniform", "count": 10000, "seed": 42},
  "tolerance": 1e-8
})json";

constexpr const char* kCone = R"json({
  "chart": {"coords": ["x", "y", "z"], "bounds": {"x": [0, null]}},
  "metric": [["1", "0", "0"],
             ["0", "x^2", "0"],
             ["0", "0", "x^2"]],
  "scalars": {"f1": "x^2/2 - ln(x)", "f2": "ln(x)"},
  "constants": {"c1": -1, "c2": 1, "lambda": 1},
  "sampling": {"strategy": "uniform", "count": 10000, "seed": 42},
  "tolerance": 1e-8
})json";

// p = 4 e^y / (16 + e^2y), q = -e^2y / (16 + e^2y)
constexpr const char* kSasakian3 = R"json({
  "chart": {"coords": ["x", "y", "z"], "bounds": {"z": [0, 3.141592653589793]}},
  "metric": [["(4*exp(y)/(16+exp(2*y)))^2 + (exp(2*y)/(16+exp(2*y)))^2", "0", "exp(2*y)/(16+exp(2*y))"],
             ["0", "(4*exp(y)/(16+exp(2*y)))^2", "0"],
             ["exp(2*y)/(16+exp(2*y))", "0", "1"]],
  "structure": {
    "phi": [["0", "-1", "0"],
            ["1", "0", "0"],
            ["0", "exp(2*y)/(16+exp(2*y))", "0"]],
    "xi": ["0", "0", "1"],
    "eta": ["exp(2*y)/(16+exp(2*y))", "0", "1"]
  },
  "scalars": {
    "f1": "(ln(16+exp(2*y)) - 2*ln(sin(z)))/2",
    "f2": "-(2*ln(sin(z)) - ln(16+exp(2*y)))/2"
  },
  "constants": {"c1": -1, "c2": 0, "lambda": 1},
  "sampling": {"strategy": "uniform", "count": 10000, "seed": 42},
  "tolerance": 1e-8
})json";

}  // namespace

std::vector<std::string> bundled_names() { return {"hyperbolic", "cone", "sasakian3"}; }

nlohmann::json bundled_manifest(std::string_view name) {
  if (name == "hyperbolic") return nlohmann::json::parse(kHyperbolic);
  if (name == "cone") return nlohmann::json::parse(kCone);
  if (name == "sasakian3") return nlohmann::json::parse(kSasakian3);
  throw ManifestError(fmt::format("unknown bundled example '{}' (expected hyperbolic, cone or sasakian3)", name));
}

}  // namespace ricsol
