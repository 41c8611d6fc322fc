#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "ricsol/manifest.hpp"
#include "ricsol/report.hpp"

namespace {

constexpr const char* kFooter = R"(
Exit codes: 0 all checks pass, 1 a check failed, 2 bad manifest or arguments,
3 an expression left its domain at a sample point.

Expressions use + - * / ^, the functions exp ln sin cos tan cot sqrt and the
constants pi and e. '^' is right-associative and binds tighter than unary
minus, so -x^2 means -(x^2) and 2^3^2 means 2^(3^2).)";

struct Common {
  std::string manifest;
  std::string example;
  std::size_t points = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::string format = "json";
  std::string d_convention = "half";
  bool no_timing = false;
};

void add_common(CLI::App* sub, Common& c) {
  auto* source = sub->add_option_group("source");
  source->add_option("--manifest", c.manifest, "Manifest JSON file")->check(CLI::ExistingFile);
  source->add_option("--example", c.example, "Bundled manifest: hyperbolic, cone or sasakian3");
  source->require_option(1);
  sub->add_option("--points", c.points, "Override the number of sample points")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "Override the sampling seed");
  sub->add_option("--tol", c.tol, "Override the tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  sub->add_option("--d-convention", c.d_convention, "Exterior derivative factor convention")
      ->check(CLI::IsMember({"half", "plain"}));
  sub->add_flag("--no-timing", c.no_timing, "Leave wall-clock timing out of the report");
}

int run(ricsol::Command command, CLI::App* sub, const Common& c) {
  const ricsol::Manifest manifest = c.example.empty()
                                        ? ricsol::load_manifest(c.manifest)
                                        : ricsol::parse_manifest(ricsol::bundled_manifest(c.example));
  ricsol::RunOptions options;
  if (sub->count("--points") > 0) options.points = c.points;
  if (sub->count("--seed") > 0) options.seed = c.seed;
  if (sub->count("--tol") > 0) options.tolerance = c.tol;
  options.convention = c.d_convention == "plain" ? ricsol::DConvention::Plain : ricsol::DConvention::Half;

  const ricsol::Report report = ricsol::run_manifest(manifest, command, options);
  std::cout << ricsol::emit_report(report, *ricsol::parse_format(c.format), !c.no_timing);
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify generalised Ricci solitons and Sasakian structures on a coordinate chart", "ricsol"};
  app.footer(kFooter);
  app.require_subcommand(1);

  Common common;
  std::vector<std::pair<CLI::App*, ricsol::Command>> commands;
  const std::pair<const char*, const char*> specs[] = {
      {"check-soliton", "Residual of the soliton equation (gradient or vector form)"},
      {"check-structure", "Almost contact metric axioms and the Sasakian ladder"},
      {"check-theorem", "The zeta condition and the identities used to prove it"},
      {"fit", "Least-squares fit of c1, c2, lambda"},
      {"all", "Every check the manifest supports"},
  };
  for (const auto& [name, help] : specs) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, common);
    commands.emplace_back(sub, *ricsol::parse_command(name));
  }
  std::string dump_name;
  auto* examples = app.add_subcommand("examples", "List bundled manifests, or print one");
  examples->add_option("name", dump_name, "Bundled manifest to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ricsol::kExitManifest;
  }

  try {
    if (examples->parsed()) {
      if (dump_name.empty()) {
        for (const auto& n : ricsol::bundled_names()) std::cout << n << "\n";
      } else {
        std::cout << ricsol::bundled_manifest(dump_name).dump(2) << "\n";
      }
      return ricsol::kExitPass;
    }
    for (const auto& [sub, command] : commands) {
      if (sub->parsed()) return run(command, sub, common);
    }
  } catch (const ricsol::ManifestError& e) {
    std::cerr << "ricsol: " << e.what() << "\n";
    return ricsol::kExitManifest;
  } catch (const ricsol::UnboundSymbolError& e) {
    std::cerr << "ricsol: " << e.what() << "\n";
    return ricsol::kExitManifest;
  } catch (const ricsol::DomainError& e) {
    std::cerr << "ricsol: " << e.what() << "\n";
    return ricsol::kExitDomain;
  }
  return ricsol::kExitManifest;
}
