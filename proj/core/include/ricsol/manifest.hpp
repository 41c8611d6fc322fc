#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ricsol/contact.hpp"
#include "ricsol/residual.hpp"
#include "ricsol/soliton.hpp"

namespace ricsol {

/// Malformed manifest: bad JSON, missing keys, wrong shapes, unparsable
/// expressions.
class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using StringMatrix = std::vector<std::vector<std::string>>;

/// A manifest document, validated and with every expression parsed.
///
///   {
///     "chart":     {"coords": ["x", "y"], "bounds": {"y": [0, null]}},
///     "metric":    [["1/y^2", "0"], ["0", "1/y^2"]],
///     "structure": {"phi": [[...]], "xi": [...], "eta": [...]},   optional
///     "scalars":   {"f1": "...", "f2": "..."},                    optional
///     "vectors":   {"X1": [...], "X2": [...]},                    optional
///     "constants": {"c1": 2, "c2": 1, "lambda": "fit", "a": 0.5},
///     "sampling":  {"strategy": "uniform", "count": 1000, "seed": 42},
///     "tolerance": 1e-8
///   }
///
/// phi is given as phi^i_j: row i, column j, so column j is phi(d/dx^j).
/// Constants other than c1, c2 and lambda are bound by name in every
/// expression. "fit" is allowed only together with "scalars".
struct Manifest {
  nlohmann::json document;
  Chart chart{{"x"}};
  ExprMatrix metric;

  struct Structure {
    ExprMatrix phi;
    std::vector<Expr> xi;
    std::vector<Expr> eta;
  };
  std::optional<Structure> structure;
  std::optional<std::array<Expr, 2>> scalars;
  std::optional<std::array<std::vector<Expr>, 2>> vectors;

  /// c1, c2, lambda; nullopt means "fit".
  std::array<std::optional<double>, 3> constants{0.0, 0.0, 0.0};
  ParameterSet extra_constants;
  SamplingPlan sampling;
  double tolerance = 1e-8;

  bool any_fit() const;
};

Manifest parse_manifest(const nlohmann::json& document);
Manifest parse_manifest_text(std::string_view text);
Manifest load_manifest(const std::filesystem::path& path);

/// Names accepted by bundled_manifest().
std::vector<std::string> bundled_names();

/// Built-in manifests: "hyperbolic", "cone", "sasakian3". Throws
/// ManifestError for other names.
nlohmann::json bundled_manifest(std::string_view name);

/// Extra constants plus the numeric soliton constants (overridden by `c` when
/// given), for binding symbols at evaluation time.
ParameterSet manifest_parameters(const Manifest& m, const SolitonConstants* c = nullptr);

/// The geometry and structure a manifest describes.
Geometry build_geometry(const Manifest& m);
AlmostContactStructure build_structure(const Manifest& m, Geometry geometry);
SolitonSpec build_soliton(const Manifest& m, Geometry geometry, const SolitonConstants& constants);

}  // namespace ricsol
