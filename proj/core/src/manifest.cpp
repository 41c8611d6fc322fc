#include "ricsol/manifest.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace ricsol {

namespace {

using nlohmann::json;

const char* const kConstantNames[3] = {"c1", "c2", "lambda"};

[[noreturn]] void fail(const std::string& message) { throw ManifestError(message); }

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(fmt::format("{}: missing key '{}'", where, key));
  return obj.at(key);
}

class ExprReader {
 public:
  explicit ExprReader(std::set<std::string> allowed) : allowed_(std::move(allowed)) {}

  Expr operator()(const json& value, const std::string& where) const {
    if (value.is_number()) return Expr::number(value.get<double>());
    if (!value.is_string()) fail(fmt::format("{}: expected an expression string", where));
    const auto text = value.get<std::string>();
    Expr e;
    try {
      e = parse(text);
    } catch (const ParseError& err) {
      fail(fmt::format("{}: {}", where, err.what()));
    }
    for (const auto& s : free_symbols(e)) {
      if (!allowed_.contains(s)) fail(fmt::format("{}: unknown symbol '{}' in \"{}\"", where, s, text));
    }
    return simplify(e);
  }

  std::vector<Expr> vector(const json& value, std::size_t n, const std::string& where) const {
    if (!value.is_array() || value.size() != n) fail(fmt::format("{}: expected an array of {} expressions", where, n));
    std::vector<Expr> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back((*this)(value[i], fmt::format("{}[{}]", where, i)));
    return out;
  }

  ExprMatrix matrix(const json& value, std::size_t n, const std::string& where) const {
    if (!value.is_array() || value.size() != n) fail(fmt::format("{}: expected a {}x{} matrix", where, n, n));
    ExprMatrix out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(vector(value[i], n, fmt::format("{}[{}]", where, i)));
    return out;
  }

 private:
  std::set<std::string> allowed_;
};

double bound_value(const json& v, double if_null, const std::string& where) {
  if (v.is_null()) return if_null;
  if (!v.is_number()) fail(fmt::format("{}: bound must be a number or null", where));
  return v.get<double>();
}

}  // namespace

bool Manifest::any_fit() const {
  return !constants[0] || !constants[1] || !constants[2];
}

Manifest parse_manifest(const json& doc) {
  if (!doc.is_object()) fail("manifest: top level must be an object");
  static const std::set<std::string> known{"chart",     "metric",   "structure", "scalars",
                                           "vectors",   "constants", "sampling", "tolerance"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) fail(fmt::format("manifest: unknown key '{}'", key));
  }

  Manifest m;
  m.document = doc;

  const json& chart = member(doc, "chart", "manifest");
  const json& coords = member(chart, "coords", "chart");
  if (!coords.is_array() || coords.empty()) fail("chart.coords: expected a non-empty array of names");
  std::vector<std::string> names;
  for (const auto& c : coords) {
    if (!c.is_string()) fail("chart.coords: names must be strings");
    names.push_back(c.get<std::string>());
  }
  std::map<std::string, Interval> bounds;
  if (chart.contains("bounds")) {
    const json& b = chart.at("bounds");
    if (!b.is_object()) fail("chart.bounds: expected an object");
    for (const auto& [name, range] : b.items()) {
      const std::string where = "chart.bounds." + name;
      if (!range.is_array() || range.size() != 2) fail(where + ": expected [lo, hi]");
      bounds[name] = Interval{bound_value(range[0], -std::numeric_limits<double>::infinity(), where),
                              bound_value(range[1], std::numeric_limits<double>::infinity(), where)};
    }
  }
  try {
    m.chart = Chart(names, bounds);
  } catch (const GeometryError& e) {
    fail(fmt::format("chart: {}", e.what()));
  }
  const std::size_t n = m.chart.dimension();

  // Constants first: they decide which symbols expressions may use.
  std::set<std::string> allowed(names.begin(), names.end());
  if (doc.contains("constants")) {
    const json& c = doc.at("constants");
    if (!c.is_object()) fail("constants: expected an object");
    for (const auto& [key, value] : c.items()) {
      const auto* it = std::find(std::begin(kConstantNames), std::end(kConstantNames), key);
      if (it != std::end(kConstantNames)) {
        const auto k = static_cast<std::size_t>(it - std::begin(kConstantNames));
        if (value.is_string() && value.get<std::string>() == "fit") {
          m.constants[k] = std::nullopt;
        } else if (value.is_number()) {
          m.constants[k] = value.get<double>();
          allowed.insert(key);
        } else {
          fail(fmt::format("constants.{}: expected a number or \"fit\"", key));
        }
      } else {
        if (!value.is_number()) fail(fmt::format("constants.{}: expected a number", key));
        if (allowed.contains(key)) fail(fmt::format("constants.{}: name clashes with a coordinate", key));
        m.extra_constants[key] = value.get<double>();
        allowed.insert(key);
      }
    }
  } else {
    for (const char* k : kConstantNames) allowed.insert(k);
  }
  for (const auto& [k, v] : m.extra_constants) {
    if (!std::isfinite(v)) fail(fmt::format("constants.{}: must be finite", k));
  }
  const ExprReader read(allowed);

  m.metric = read.matrix(member(doc, "metric", "manifest"), n, "metric");

  if (doc.contains("structure")) {
    const json& s = doc.at("structure");
    m.structure = Manifest::Structure{read.matrix(member(s, "phi", "structure"), n, "structure.phi"),
                                      read.vector(member(s, "xi", "structure"), n, "structure.xi"),
                                      read.vector(member(s, "eta", "structure"), n, "structure.eta")};
  }
  if (doc.contains("scalars")) {
    const json& s = doc.at("scalars");
    m.scalars = std::array<Expr, 2>{read(member(s, "f1", "scalars"), "scalars.f1"),
                                    read(member(s, "f2", "scalars"), "scalars.f2")};
  }
  if (doc.contains("vectors")) {
    const json& v = doc.at("vectors");
    m.vectors = std::array<std::vector<Expr>, 2>{read.vector(member(v, "X1", "vectors"), n, "vectors.X1"),
                                                 read.vector(member(v, "X2", "vectors"), n, "vectors.X2")};
  }
  if (m.scalars && m.vectors) fail("manifest: give either \"scalars\" or \"vectors\", not both");
  if (m.any_fit() && !m.scalars) fail("constants: \"fit\" requires \"scalars\" (gradient mode)");

  if (doc.contains("sampling")) {
    const json& s = doc.at("sampling");
    if (!s.is_object()) fail("sampling: expected an object");
    if (s.contains("strategy")) {
      const auto& st = s.at("strategy");
      if (st == "uniform") {
        m.sampling.strategy = SamplingStrategy::UniformRandom;
      } else if (st == "grid") {
        m.sampling.strategy = SamplingStrategy::Grid;
      } else {
        fail("sampling.strategy: expected \"uniform\" or \"grid\"");
      }
    }
    if (s.contains("count")) {
      if (!s.at("count").is_number_integer() || s.at("count").get<long long>() < 1) {
        fail("sampling.count: expected a positive integer");
      }
      m.sampling.count = s.at("count").get<std::size_t>();
    }
    if (s.contains("seed")) {
      if (!s.at("seed").is_number_integer() || s.at("seed").get<long long>() < 0) {
        fail("sampling.seed: expected a non-negative integer");
      }
      m.sampling.seed = s.at("seed").get<std::uint64_t>();
    }
  }
  if (doc.contains("tolerance")) {
    const json& t = doc.at("tolerance");
    if (!t.is_number() || !(t.get<double>() > 0.0)) fail("tolerance: expected a positive number");
    m.tolerance = t.get<double>();
  }
  return m;
}

Manifest parse_manifest_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(fmt::format("manifest: invalid JSON: {}", e.what()));
  }
  return parse_manifest(doc);
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(fmt::format("cannot open manifest '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest_text(buf.str());
}

ParameterSet manifest_parameters(const Manifest& m, const SolitonConstants* c) {
  ParameterSet p = m.extra_constants;
  for (std::size_t k = 0; k < 3; ++k) {
    if (m.constants[k]) p[kConstantNames[k]] = *m.constants[k];
  }
  if (c != nullptr) {
    p["c1"] = c->c1;
    p["c2"] = c->c2;
    p["lambda"] = c->lambda;
  }
  return p;
}

Geometry build_geometry(const Manifest& m) {
  try {
    return Geometry(MetricField(m.chart, m.metric, manifest_parameters(m, nullptr)));
  } catch (const GeometryError& e) {
    fail(fmt::format("metric: {}", e.what()));
  }
}

AlmostContactStructure build_structure(const Manifest& m, Geometry geometry) {
  if (!m.structure) fail("manifest has no \"structure\" block");
  const std::size_t n = m.chart.dimension();
  std::vector<Expr> phi;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) phi.push_back(m.structure->phi[i][j]);
  }
  try {
    return make_structure(std::move(geometry), TensorField(Valence::Endo, n, std::move(phi)),
                          vector_field(m.structure->xi), one_form(m.structure->eta));
  } catch (const StructureError& e) {
    fail(fmt::format("structure: {}", e.what()));
  }
}

SolitonSpec build_soliton(const Manifest& m, Geometry geometry, const SolitonConstants& constants) {
  if (m.scalars) return SolitonSpec{std::move(geometry), GradientPotentials{(*m.scalars)[0], (*m.scalars)[1]}, constants};
  if (m.vectors) {
    return SolitonSpec{std::move(geometry), VectorPotentials{vector_field((*m.vectors)[0]), vector_field((*m.vectors)[1])},
                       constants};
  }
  fail("manifest has neither \"scalars\" nor \"vectors\"");
}

}  // namespace ricsol
