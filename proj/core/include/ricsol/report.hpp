#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ricsol/contact.hpp"
#include "ricsol/fit.hpp"
#include "ricsol/manifest.hpp"
#include "ricsol/residual.hpp"

namespace ricsol {

enum class Command { CheckSoliton, CheckStructure, CheckTheorem, Fit, All };
enum class Format { Json, Csv, Table };

const char* command_name(Command c);
std::optional<Command> parse_command(std::string_view name);
std::optional<Format> parse_format(std::string_view name);

/// Process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitManifest = 2;
inline constexpr int kExitDomain = 3;

/// Command-line overrides of manifest settings.
struct RunOptions {
  std::optional<std::size_t> points;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  DConvention convention = DConvention::Half;
};

struct Report {
  std::string command;
  std::string manifest_digest;
  DConvention convention = DConvention::Half;
  SamplingPlan sampling;
  double tolerance = 0.0;

  std::vector<ResidualReport> checks;
  std::optional<StructureFlags> structure;
  bool form_sas1_consistent = true;
  std::optional<FitResult> fit;
  /// Constants used by the soliton and theorem checks, and where they came
  /// from ("manifest" or "fit").
  std::optional<SolitonConstants> constants;
  std::string constants_source;
  std::set<std::string> labels;

  bool pass = false;
  int exit_code = kExitFail;
  double wall_seconds = 0.0;

  const ResidualReport* find(std::string_view name) const;
};

/// Runs the checks selected by `command`. Throws ManifestError when the
/// manifest lacks what the command needs.
///
///   check-structure  structure.* (ladder, axioms, Sasakian identities)
///   check-soliton    soliton_gradient or soliton_vector
///   check-theorem    theorem_zeta, lemma3, ricci_xi, lemma1, lemma2,
///                    reduction_identity
///   fit              fit
///   all              every block the manifest supports
///
/// Constants given as "fit" are fitted first and the solution is used by the
/// soliton and theorem checks.
Report run_manifest(const Manifest& manifest, Command command, const RunOptions& options = {});

/// 64-bit FNV-1a of the manifest's compact JSON, as 16 hex digits.
std::string manifest_digest(const nlohmann::json& document);

nlohmann::ordered_json report_to_json(const Report& report, bool include_timing = true);

/// json: stable key order; csv: "name,abs_res,rel_res,pass" rows;
/// table: aligned text.
std::string emit_report(const Report& report, Format format, bool include_timing = true);

}  // namespace ricsol
