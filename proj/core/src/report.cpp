#include "ricsol/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cstdint>

#include "ricsol/soliton.hpp"

namespace ricsol {

namespace {

using nlohmann::ordered_json;

constexpr std::size_t kMaxDiagnostics = 5;

// Identities that involve third derivatives of the potentials get one order
// of tolerance more.
constexpr double kThirdDerivativeSlack = 10.0;

void require(bool ok, const char* command, const char* what) {
  if (!ok) throw ManifestError(fmt::format("{}: manifest has no {}", command, what));
}

void rename(ResidualReport& r, const std::string& prefix) { r.name = prefix + r.name; }

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::CheckSoliton: return "check-soliton";
    case Command::CheckStructure: return "check-structure";
    case Command::CheckTheorem: return "check-theorem";
    case Command::Fit: return "fit";
    case Command::All: return "all";
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view name) {
  for (Command c : {Command::CheckSoliton, Command::CheckStructure, Command::CheckTheorem, Command::Fit, Command::All}) {
    if (name == command_name(c)) return c;
  }
  return std::nullopt;
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "table") return Format::Table;
  return std::nullopt;
}

const ResidualReport* Report::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string manifest_digest(const nlohmann::json& document) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : document.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

Report run_manifest(const Manifest& m, Command command, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const char* name = command_name(command);

  Report report;
  report.command = name;
  report.manifest_digest = manifest_digest(m.document);
  report.convention = options.convention;
  report.sampling = m.sampling;
  if (options.points) report.sampling.count = *options.points;
  if (options.seed) report.sampling.seed = *options.seed;
  report.tolerance = options.tolerance.value_or(m.tolerance);
  const double tol = report.tolerance;

  const bool all = command == Command::All;
  const bool want_structure = command == Command::CheckStructure || (all && m.structure);
  const bool want_soliton = command == Command::CheckSoliton || (all && (m.scalars || m.vectors));
  const bool want_theorem = command == Command::CheckTheorem || (all && m.structure && m.scalars);
  const bool want_fit = command == Command::Fit || (all && m.scalars);

  if (command == Command::CheckStructure) require(m.structure.has_value(), name, "\"structure\" block");
  if (command == Command::CheckSoliton) require(m.scalars || m.vectors, name, "\"scalars\" or \"vectors\" block");
  if (command == Command::CheckTheorem) {
    require(m.structure.has_value(), name, "\"structure\" block");
    require(m.scalars.has_value(), name, "\"scalars\" block");
  }
  if (command == Command::Fit) require(m.scalars.has_value(), name, "\"scalars\" block");
  if (!(want_structure || want_soliton || want_theorem || want_fit)) {
    throw ManifestError(fmt::format("{}: nothing to check in this manifest", name));
  }

  const Geometry geometry = build_geometry(m);
  const SampleSet base = make_samples(m.chart, report.sampling, manifest_parameters(m));

  // Constants: from the manifest, or fitted when any is marked "fit".
  std::optional<SolitonConstants> constants;
  const bool need_constants = want_soliton || want_theorem;
  if (m.any_fit() && (need_constants || want_fit)) {
    std::array<std::optional<double>, 3> fixed = m.constants;
    FitResult fit = fit_constants(geometry, (*m.scalars)[0], (*m.scalars)[1], base, fixed);
    constants = SolitonConstants{fit.solution[0], fit.solution[1], fit.solution[2]};
    report.constants_source = "fit";
    report.fit = std::move(fit);
  } else {
    constants = SolitonConstants{m.constants[0].value_or(0.0), m.constants[1].value_or(0.0),
                                 m.constants[2].value_or(0.0)};
    report.constants_source = "manifest";
    if (want_fit) report.fit = fit_constants(geometry, (*m.scalars)[0], (*m.scalars)[1], base);
  }
  if (need_constants) {
    report.constants = constants;
    report.labels = classify_constants(*constants, m.chart.dimension());
  }
  const SampleSet samples{base.points, manifest_parameters(m, &*constants)};

  if (want_structure) {
    const AlmostContactStructure s = build_structure(m, geometry);
    StructureReport sr = classify_structure(s, samples, tol, options.convention);
    report.structure = sr.flags;
    report.form_sas1_consistent = sr.form_sas1_consistent;
    for (auto& e : sr.checks.entries) report.checks.push_back(std::move(e));
    CheckReport ids = check_sasakian_identities(s, samples, tol);
    for (auto& e : ids.entries) {
      if (e.name == "form_sas1" || e.name == "form_sas2_xi") continue;  // already covered by the ladder
      rename(e, "structure.");
      report.checks.push_back(std::move(e));
    }
  }

  if (want_soliton) {
    const SolitonSpec spec = build_soliton(m, geometry, *constants);
    report.checks.push_back(spec.gradient_mode() ? residual_gradient_form(spec, samples, tol)
                                                 : residual_vector_form(spec, samples, tol));
  }

  if (want_theorem) {
    const AlmostContactStructure s = build_structure(m, geometry);
    const Expr& f1 = (*m.scalars)[0];
    const Expr& f2 = (*m.scalars)[1];
    report.checks.push_back(zeta_condition(s, f1, f2, constants->c1, samples, tol).report);
    report.checks.push_back(lemma3_check(s, f1, f2, *constants, samples, tol));
    report.checks.push_back(ricci_xi_check(s, samples, tol));
    CheckReport proof = proof_identities_check(s, f1, f2, constants->c1, samples, kThirdDerivativeSlack * tol);
    for (auto& e : proof.entries) report.checks.push_back(std::move(e));
  }

  if (want_fit) {
    ResidualReport r;
    r.name = "fit";
    r.abs_sup = report.fit->abs_residual;
    r.rel_sup = report.fit->rel_residual;
    r.tolerance = tol;
    r.points_evaluated = report.fit->points_used;
    r.domain_failures = report.fit->domain_failures;
    r.pass = r.points_evaluated > 0 && r.rel_sup <= tol;
    report.checks.push_back(std::move(r));
  }

  bool domain = false;
  report.pass = true;
  for (const auto& c : report.checks) {
    report.pass = report.pass && c.pass;
    domain = domain || !c.domain_failures.empty();
  }
  report.exit_code = domain ? kExitDomain : (report.pass ? kExitPass : kExitFail);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

ordered_json flags_json(const StructureFlags& f) {
  ordered_json j;
  j["almost_contact_metric"] = f.almost_contact_metric;
  j["contact_metric"] = f.contact_metric;
  j["K_contact"] = f.k_contact;
  j["normal"] = f.normal;
  j["Sasakian"] = f.sasakian;
  return j;
}

ordered_json triple_json(const Triple& t) { return ordered_json{{"c1", t[0]}, {"c2", t[1]}, {"lambda", t[2]}}; }

}  // namespace

ordered_json report_to_json(const Report& r, bool include_timing) {
  ordered_json j;
  j["command"] = r.command;
  j["manifest_digest"] = r.manifest_digest;
  j["conventions"] = {{"d", convention_name(r.convention)},
                      {"sym_product", "half"},
                      {"phi", "phi^i_j, column = input"}};
  j["sampling"] = {{"strategy", r.sampling.strategy == SamplingStrategy::Grid ? "grid" : "uniform"},
                   {"count", r.sampling.count},
                   {"seed", r.sampling.seed}};
  j["tolerance"] = r.tolerance;

  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["abs_residual"] = c.abs_sup;
    e["rel_residual"] = c.rel_sup;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    e["points"] = c.points_evaluated;
    e["worst_point"] = c.worst_point;
    e["domain_errors"] = c.domain_failures.size();
    if (!c.domain_failures.empty()) {
      ordered_json diag = ordered_json::array();
      for (std::size_t k = 0; k < std::min(kMaxDiagnostics, c.domain_failures.size()); ++k) {
        diag.push_back({{"point", c.domain_failures[k].point}, {"message", c.domain_failures[k].message}});
      }
      e["domain_diagnostics"] = diag;
    }
    checks.push_back(std::move(e));
  }
  j["checks"] = checks;

  if (r.structure) {
    j["structure"] = flags_json(*r.structure);
    j["structure"]["form_sas1_consistent"] = r.form_sas1_consistent;
  }
  if (r.constants) {
    j["constants"] = triple_json({r.constants->c1, r.constants->c2, r.constants->lambda});
    j["constants"]["source"] = r.constants_source;
    j["constants"]["labels"] = r.labels;
  }
  if (r.fit) {
    ordered_json f;
    f["solution"] = triple_json(r.fit->solution);
    f["rank"] = r.fit->rank;
    ordered_json null = ordered_json::array();
    for (const auto& v : r.fit->null_space) null.push_back(v);
    f["null_space"] = null;
    f["fixed"] = {{"c1", r.fit->fixed[0]}, {"c2", r.fit->fixed[1]}, {"lambda", r.fit->fixed[2]}};
    f["abs_residual"] = r.fit->abs_residual;
    f["rel_residual"] = r.fit->rel_residual;
    f["rows"] = r.fit->rows;
    j["fit"] = f;
  }
  j["overall_pass"] = r.pass;
  j["exit_code"] = r.exit_code;
  if (include_timing) j["timing"] = {{"wall_seconds", r.wall_seconds}};
  return j;
}

std::string emit_report(const Report& r, Format format, bool include_timing) {
  switch (format) {
    case Format::Json: return report_to_json(r, include_timing).dump(2) + "\n";
    case Format::Csv: {
      std::string out = "name,abs_res,rel_res,pass\n";
      for (const auto& c : r.checks) {
        out += fmt::format("{},{},{},{}\n", c.name, c.abs_sup, c.rel_sup, c.pass ? "true" : "false");
      }
      return out;
    }
    case Format::Table: {
      std::size_t width = 5;
      for (const auto& c : r.checks) width = std::max(width, c.name.size());
      std::string out;
      out += fmt::format("command   {}\nmanifest  {}\nd-conv    {}\n", r.command, r.manifest_digest,
                         convention_name(r.convention));
      out += fmt::format("samples   {} ({}, seed {})\n\n", r.sampling.count,
                         r.sampling.strategy == SamplingStrategy::Grid ? "grid" : "uniform", r.sampling.seed);
      out += fmt::format("{:<{}}  {:>11}  {:>11}  {:>9}  {}\n", "check", width, "abs", "rel", "tol", "result");
      for (const auto& c : r.checks) {
        std::string result = c.pass ? "pass" : "FAIL";
        if (!c.domain_failures.empty()) result += fmt::format(" ({} domain errors)", c.domain_failures.size());
        out += fmt::format("{:<{}}  {:>11.3e}  {:>11.3e}  {:>9.1e}  {}\n", c.name, width, c.abs_sup, c.rel_sup,
                           c.tolerance, result);
      }
      if (r.structure) {
        const auto& f = *r.structure;
        out += fmt::format("\nstructure almost-contact-metric={} contact-metric={} K-contact={} normal={} Sasakian={}\n",
                           f.almost_contact_metric, f.contact_metric, f.k_contact, f.normal, f.sasakian);
      }
      if (r.constants) {
        out += fmt::format("\nconstants c1={} c2={} lambda={} ({})", r.constants->c1, r.constants->c2,
                           r.constants->lambda, r.constants_source);
        if (!r.labels.empty()) out += fmt::format(" [{}]", fmt::join(r.labels, ", "));
        out += "\n";
      }
      if (r.fit) {
        out += fmt::format("fit       ({}, {}, {}) rank {}", r.fit->solution[0], r.fit->solution[1],
                           r.fit->solution[2], r.fit->rank);
        for (const auto& v : r.fit->null_space) out += fmt::format(" null ({:.6f}, {:.6f}, {:.6f})", v[0], v[1], v[2]);
        out += "\n";
      }
      out += fmt::format("\noverall   {}\n", r.pass ? "pass" : "FAIL");
      if (include_timing) out += fmt::format("time      {:.3f} s\n", r.wall_seconds);
      return out;
    }
  }
  return {};
}

}  // namespace ricsol
