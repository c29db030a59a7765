#include "statgeo/fixtures.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <json.hpp>

namespace statgeo {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& fixture, const std::string& what) {
  throw FixtureError("fixture '" + fixture + "': " + what);
}

std::string point_string(const Eigen::VectorXd& x) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

// ---- expression compilation ----------------------------------------------

/// Parses fixture expressions over a chart's coordinates plus the fixture
/// parameters, then folds the parameters into constants.
class ExprCompiler {
 public:
  ExprCompiler(const FixtureSpec& spec, const std::vector<std::string>& coordinates) : fixture_(spec.name) {
    names_ = coordinates;
    for (std::size_t i = 0; i < coordinates.size(); ++i) {
      replacements_.push_back(Expr::variable(static_cast<int>(i), coordinates[i]));
    }
    for (const auto& [name, value] : spec.parameters) {
      for (const auto& c : coordinates) {
        if (c == name) fail(fixture_, "parameter '" + name + "' shadows a coordinate");
      }
      names_.push_back(name);
      replacements_.push_back(Expr::constant(value));
    }
  }

  Expr operator()(const std::string& text, const std::string& where) const {
    try {
      return substitute(parse(text, names_), replacements_);
    } catch (const ParseError& e) {
      fail(fixture_, where + ": " + e.what());
    }
  }

  /// Canonical source text; parameters stay symbolic.
  std::string canonical(const std::string& text, const std::string& where) const {
    try {
      return parse(text, names_).to_string();
    } catch (const ParseError& e) {
      fail(fixture_, where + ": " + e.what());
    }
  }

  std::vector<Expr> vector(const std::vector<std::string>& items, const std::string& where, std::size_t size) const {
    if (items.size() != size) {
      fail(fixture_, where + ": expected " + std::to_string(size) + " components, got " + std::to_string(items.size()));
    }
    std::vector<Expr> out;
    for (std::size_t i = 0; i < items.size(); ++i) out.push_back((*this)(items[i], where + "[" + std::to_string(i) + "]"));
    return out;
  }

 private:
  std::string fixture_;
  std::vector<std::string> names_;
  std::vector<Expr> replacements_;
};

Chart compile_chart(const FixtureSpec& spec, const ChartSpec& c, const std::string& where) {
  if (c.coordinates.empty()) fail(spec.name, where + ": no coordinates");
  if (static_cast<int>(c.coordinates.size()) > kMaxVariables) {
    fail(spec.name, where + ": at most " + std::to_string(kMaxVariables) + " coordinates are supported");
  }
  std::set<std::string> seen;
  for (const auto& n : c.coordinates) {
    if (!seen.insert(n).second) fail(spec.name, where + ": duplicate coordinate '" + n + "'");
  }
  if (c.box.size() != c.coordinates.size()) fail(spec.name, where + ": box must have one interval per coordinate");
  for (const auto& iv : c.box) {
    if (!(iv.lo < iv.hi)) fail(spec.name, where + ": empty box interval");
  }
  Chart chart;
  chart.names = c.coordinates;
  chart.box = c.box;
  const ExprCompiler compile(spec, c.coordinates);
  for (std::size_t i = 0; i < c.exclusions.size(); ++i) {
    chart.exclusions.push_back(compile(c.exclusions[i], where + ".exclusions[" + std::to_string(i) + "]"));
  }
  return chart;
}

DifferenceTensor compile_difference(const FixtureSpec& spec, const ExprCompiler& compile, int n) {
  std::vector<CoefficientEntry> entries;
  for (std::size_t e = 0; e < spec.connection.entries.size(); ++e) {
    const EntrySpec& s = spec.connection.entries[e];
    const std::string where = "connection.entries[" + std::to_string(e) + "]";
    if (s.k < 0 || s.k >= n || s.i < 0 || s.i >= n || s.j < 0 || s.j >= n) fail(spec.name, where + ": index out of range");
    entries.push_back({s.k, s.i, s.j, compile(s.value, where)});
  }
  for (std::size_t t = 0; t < spec.connection.terms.size(); ++t) {
    const RankOneSpec& s = spec.connection.terms[t];
    const std::string where = "connection.terms[" + std::to_string(t) + "]";
    const Expr c = compile(s.coefficient, where + ".coefficient");
    const auto alpha = compile.vector(s.alpha, where + ".alpha", static_cast<std::size_t>(n));
    const auto beta = compile.vector(s.beta, where + ".beta", static_cast<std::size_t>(n));
    const auto v = compile.vector(s.vector, where + ".vector", static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const Expr value = c * alpha[static_cast<std::size_t>(i)] * beta[static_cast<std::size_t>(j)] *
                             v[static_cast<std::size_t>(k)];
          if (!value.is_constant(0.0)) entries.push_back({k, i, j, value});
        }
      }
    }
  }
  return coefficients_from_entries(n, std::move(entries), "K");
}

// ---- JSON ------------------------------------------------------------------

class Reader {
 public:
  explicit Reader(std::string fixture) : fixture_(std::move(fixture)) {}

  const json& member(const json& obj, const char* key, const std::string& where) const {
    if (!obj.contains(key)) fail(fixture_, "schema: " + where + " is missing '" + key + "'");
    return obj.at(key);
  }

  void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) const {
    if (!obj.is_object()) fail(fixture_, "schema: " + where + " must be an object");
    for (const auto& [k, v] : obj.items()) {
      bool known = false;
      for (const char* key : keys) known = known || k == key;
      if (!known) fail(fixture_, "schema: unknown key '" + k + "' in " + where);
    }
  }

  std::string string(const json& v, const std::string& where) const {
    if (!v.is_string()) fail(fixture_, "schema: " + where + " must be a string");
    return v.get<std::string>();
  }

  double number(const json& v, const std::string& where) const {
    if (!v.is_number()) fail(fixture_, "schema: " + where + " must be a number");
    return v.get<double>();
  }

  int integer(const json& v, const std::string& where) const {
    if (!v.is_number_integer()) fail(fixture_, "schema: " + where + " must be an integer");
    return v.get<int>();
  }

  std::vector<std::string> strings(const json& v, const std::string& where) const {
    if (!v.is_array()) fail(fixture_, "schema: " + where + " must be an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(string(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
  }

  std::vector<std::vector<std::string>> string_rows(const json& v, const std::string& where) const {
    if (!v.is_array()) fail(fixture_, "schema: " + where + " must be an array of arrays");
    std::vector<std::vector<std::string>> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(strings(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
  }

  ChartSpec chart(const json& obj, const std::string& where) const {
    ChartSpec c;
    c.coordinates = strings(member(obj, "coordinates", where), where + ".coordinates");
    const json& box = member(obj, "box", where);
    if (!box.is_array()) fail(fixture_, "schema: " + where + ".box must be an array");
    for (std::size_t i = 0; i < box.size(); ++i) {
      const std::string w = where + ".box[" + std::to_string(i) + "]";
      if (!box[i].is_array() || box[i].size() != 2) fail(fixture_, "schema: " + w + " must be [lo, hi]");
      c.box.push_back({number(box[i][0], w), number(box[i][1], w)});
    }
    if (obj.contains("exclusions")) c.exclusions = strings(obj.at("exclusions"), where + ".exclusions");
    return c;
  }

 private:
  std::string fixture_;
};

json chart_json(const ChartSpec& c, const ExprCompiler& canon, const std::string& where) {
  json box = json::array();
  for (const auto& iv : c.box) box.push_back({iv.lo, iv.hi});
  json ex = json::array();
  for (std::size_t i = 0; i < c.exclusions.size(); ++i) {
    ex.push_back(canon.canonical(c.exclusions[i], where + ".exclusions[" + std::to_string(i) + "]"));
  }
  return {{"coordinates", c.coordinates}, {"box", box}, {"exclusions", ex}};
}

json strings_json(const std::vector<std::string>& items, const ExprCompiler& canon, const std::string& where) {
  json out = json::array();
  for (std::size_t i = 0; i < items.size(); ++i) out.push_back(canon.canonical(items[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json rows_json(const std::vector<std::vector<std::string>>& rows, const ExprCompiler& canon, const std::string& where) {
  json out = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) out.push_back(strings_json(rows[i], canon, where + "[" + std::to_string(i) + "]"));
  return out;
}

Expectation parse_expectation(const std::string& fixture, const std::string& text, const std::string& where) {
  if (text == "pass") return Expectation::Pass;
  if (text == "report-only") return Expectation::ReportOnly;
  fail(fixture, "schema: " + where + " must be \"pass\" or \"report-only\"");
}

// ---- bootstrap helpers -------------------------------------------------------

void check(bool ok, const std::string& fixture, const std::string& what, const Eigen::VectorXd& p, double residual) {
  if (!ok) {
    std::ostringstream os;
    os << "bootstrap: " << what << " at point " << point_string(p) << " (residual " << residual << ")";
    fail(fixture, os.str());
  }
}

}  // namespace

// ---- serialization -------------------------------------------------------------

std::string serialize_fixture(const FixtureSpec& spec) {
  const ExprCompiler ambient(spec, spec.ambient.coordinates);
  json j;
  j["format_version"] = kFixtureFormatVersion;
  j["name"] = spec.name;
  j["description"] = spec.description;
  json params = json::object();
  for (const auto& [k, v] : spec.parameters) params[k] = v;
  j["parameters"] = params;
  j["ambient"] = chart_json(spec.ambient, ambient, "ambient");
  j["metric"] = rows_json(spec.metric, ambient, "metric");
  json conn;
  conn["kind"] = spec.connection.kind;
  json entries = json::array();
  for (std::size_t e = 0; e < spec.connection.entries.size(); ++e) {
    const auto& s = spec.connection.entries[e];
    entries.push_back({{"k", s.k}, {"i", s.i}, {"j", s.j},
                       {"value", ambient.canonical(s.value, "connection.entries[" + std::to_string(e) + "]")}});
  }
  conn["entries"] = entries;
  json terms = json::array();
  for (std::size_t t = 0; t < spec.connection.terms.size(); ++t) {
    const auto& s = spec.connection.terms[t];
    const std::string w = "connection.terms[" + std::to_string(t) + "]";
    terms.push_back({{"coefficient", ambient.canonical(s.coefficient, w + ".coefficient")},
                     {"alpha", strings_json(s.alpha, ambient, w + ".alpha")},
                     {"beta", strings_json(s.beta, ambient, w + ".beta")},
                     {"vector", strings_json(s.vector, ambient, w + ".vector")}});
  }
  conn["terms"] = terms;
  j["connection"] = conn;
  if (spec.contact) {
    const auto& c = *spec.contact;
    j["contact"] = {{"phi_columns", rows_json(c.phi_columns, ambient, "contact.phi_columns")},
                    {"nu", strings_json(c.nu, ambient, "contact.nu")},
                    {"eta", strings_json(c.eta, ambient, "contact.eta")},
                    {"epsilon", c.epsilon}};
  }
  if (spec.hypersurface) {
    const auto& h = *spec.hypersurface;
    const ExprCompiler hyper(spec, h.chart.coordinates);
    json hj = chart_json(h.chart, hyper, "hypersurface");
    hj["embedding"] = strings_json(h.embedding, hyper, "hypersurface.embedding");
    hj["frame"] = rows_json(h.frame, hyper, "hypersurface.frame");
    hj["xi"] = strings_json(h.xi, hyper, "hypersurface.xi");
    hj["transversal"] = strings_json(h.transversal, hyper, "hypersurface.transversal");
    hj["screen"] = rows_json(h.screen, hyper, "hypersurface.screen");
    j["hypersurface"] = hj;
  }
  json expectations = json::object();
  for (const auto& [id, e] : spec.expectations) {
    json entry = {{"expected", to_string(e.expected)}};
    if (!e.note.empty()) entry["note"] = e.note;
    expectations[id] = entry;
  }
  j["expectations"] = expectations;
  j["changelog"] = spec.changelog;
  return j.dump(2) + "\n";
}

FixtureSpec parse_fixture(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FixtureError(std::string("fixture file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FixtureError("fixture file must contain a JSON object");
  FixtureSpec spec;
  spec.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "<unnamed>";
  const Reader r(spec.name);
  r.only_keys(j,
              {"format_version", "name", "description", "parameters", "ambient", "metric", "connection", "contact",
               "hypersurface", "expectations", "changelog"},
              "fixture");
  const int version = r.integer(r.member(j, "format_version", "fixture"), "format_version");
  if (version != kFixtureFormatVersion) {
    fail(spec.name, "unsupported format_version " + std::to_string(version) + " (expected " +
                        std::to_string(kFixtureFormatVersion) + ")");
  }
  spec.name = r.string(r.member(j, "name", "fixture"), "name");
  if (j.contains("description")) spec.description = r.string(j["description"], "description");
  if (j.contains("parameters")) {
    if (!j["parameters"].is_object()) fail(spec.name, "schema: parameters must be an object");
    for (const auto& [k, v] : j["parameters"].items()) spec.parameters[k] = r.number(v, "parameters." + k);
  }
  const json& ambient = r.member(j, "ambient", "fixture");
  r.only_keys(ambient, {"coordinates", "box", "exclusions"}, "ambient");
  spec.ambient = r.chart(ambient, "ambient");
  spec.metric = r.string_rows(r.member(j, "metric", "fixture"), "metric");
  if (j.contains("connection")) {
    const json& c = j["connection"];
    r.only_keys(c, {"kind", "entries", "terms"}, "connection");
    spec.connection.kind = r.string(r.member(c, "kind", "connection"), "connection.kind");
    if (c.contains("entries")) {
      if (!c["entries"].is_array()) fail(spec.name, "schema: connection.entries must be an array");
      for (std::size_t e = 0; e < c["entries"].size(); ++e) {
        const json& en = c["entries"][e];
        const std::string w = "connection.entries[" + std::to_string(e) + "]";
        r.only_keys(en, {"k", "i", "j", "value"}, w);
        spec.connection.entries.push_back({r.integer(r.member(en, "k", w), w + ".k"), r.integer(r.member(en, "i", w), w + ".i"),
                                           r.integer(r.member(en, "j", w), w + ".j"),
                                           r.string(r.member(en, "value", w), w + ".value")});
      }
    }
    if (c.contains("terms")) {
      if (!c["terms"].is_array()) fail(spec.name, "schema: connection.terms must be an array");
      for (std::size_t t = 0; t < c["terms"].size(); ++t) {
        const json& tj = c["terms"][t];
        const std::string w = "connection.terms[" + std::to_string(t) + "]";
        r.only_keys(tj, {"coefficient", "alpha", "beta", "vector"}, w);
        spec.connection.terms.push_back({r.string(r.member(tj, "coefficient", w), w + ".coefficient"),
                                         r.strings(r.member(tj, "alpha", w), w + ".alpha"),
                                         r.strings(r.member(tj, "beta", w), w + ".beta"),
                                         r.strings(r.member(tj, "vector", w), w + ".vector")});
      }
    }
  }
  if (j.contains("contact")) {
    const json& c = j["contact"];
    r.only_keys(c, {"phi_columns", "nu", "eta", "epsilon"}, "contact");
    ContactSpec cs;
    cs.phi_columns = r.string_rows(r.member(c, "phi_columns", "contact"), "contact.phi_columns");
    cs.nu = r.strings(r.member(c, "nu", "contact"), "contact.nu");
    cs.eta = r.strings(r.member(c, "eta", "contact"), "contact.eta");
    if (c.contains("epsilon")) cs.epsilon = r.integer(c["epsilon"], "contact.epsilon");
    spec.contact = cs;
  }
  if (j.contains("hypersurface")) {
    const json& h = j["hypersurface"];
    r.only_keys(h, {"coordinates", "box", "exclusions", "embedding", "frame", "xi", "transversal", "screen"},
                "hypersurface");
    HypersurfaceSpec hs;
    hs.chart = r.chart(h, "hypersurface");
    hs.embedding = r.strings(r.member(h, "embedding", "hypersurface"), "hypersurface.embedding");
    hs.frame = r.string_rows(r.member(h, "frame", "hypersurface"), "hypersurface.frame");
    hs.xi = r.strings(r.member(h, "xi", "hypersurface"), "hypersurface.xi");
    hs.transversal = r.strings(r.member(h, "transversal", "hypersurface"), "hypersurface.transversal");
    hs.screen = r.string_rows(r.member(h, "screen", "hypersurface"), "hypersurface.screen");
    spec.hypersurface = hs;
  }
  if (j.contains("expectations")) {
    if (!j["expectations"].is_object()) fail(spec.name, "schema: expectations must be an object");
    for (const auto& [id, v] : j["expectations"].items()) {
      const std::string w = "expectations." + id;
      r.only_keys(v, {"expected", "note"}, w);
      ExpectationOverride o;
      o.expected = parse_expectation(spec.name, r.string(r.member(v, "expected", w), w + ".expected"), w + ".expected");
      if (v.contains("note")) o.note = r.string(v["note"], w + ".note");
      spec.expectations[id] = o;
    }
  }
  if (j.contains("changelog")) spec.changelog = r.strings(j["changelog"], "changelog");
  return spec;
}

FixtureSpec read_fixture_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FixtureError("cannot open fixture file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fixture(buf.str());
}

// ---- compilation ----------------------------------------------------------------

Expectation Model::expectation(const std::string& id, Expectation fallback) const {
  const auto it = spec.expectations.find(id);
  return it == spec.expectations.end() ? fallback : it->second.expected;
}

std::string Model::annotation_note(const std::string& id) const {
  const auto it = spec.expectations.find(id);
  return it == spec.expectations.end() ? std::string() : it->second.note;
}

std::shared_ptr<const Model> compile(const FixtureSpec& spec) {
  if (spec.name.empty()) throw FixtureError("fixture has no name");
  auto model = std::make_shared<Model>();
  model->spec = spec;
  const Chart chart = compile_chart(spec, spec.ambient, "ambient");
  const int n = chart.dimension();
  model->ambient = Domain::ambient(chart);
  const ExprCompiler compile_ambient(spec, spec.ambient.coordinates);

  if (static_cast<int>(spec.metric.size()) != n) fail(spec.name, "metric must have one row per coordinate");
  model->g = Metric(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = spec.metric[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) != n) fail(spec.name, "metric row " + std::to_string(i) + " has wrong length");
    for (int c = 0; c < n; ++c) {
      model->g(i, c) = compile_ambient(row[static_cast<std::size_t>(c)],
                                       "metric[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    }
  }

  model->levi_civita = levi_civita(model->g);
  const std::string& kind = spec.connection.kind;
  if (kind == "levi_civita") {
    if (!spec.connection.entries.empty() || !spec.connection.terms.empty()) {
      fail(spec.name, "connection kind levi_civita takes no entries or terms");
    }
    model->d = model->levi_civita;
    model->k = coefficients_from_entries(n, {}, "K");
  } else if (kind == "christoffel") {
    if (!spec.connection.terms.empty()) fail(spec.name, "connection kind christoffel takes entries only");
    std::vector<CoefficientEntry> entries;
    for (std::size_t e = 0; e < spec.connection.entries.size(); ++e) {
      const EntrySpec& s = spec.connection.entries[e];
      const std::string where = "connection.entries[" + std::to_string(e) + "]";
      if (s.k < 0 || s.k >= n || s.i < 0 || s.i >= n || s.j < 0 || s.j >= n) fail(spec.name, where + ": index out of range");
      entries.push_back({s.k, s.i, s.j, compile_ambient(s.value, where)});
    }
    model->d = coefficients_from_entries(n, std::move(entries), "D");
    model->k = difference_tensor(model->d, model->levi_civita);
  } else if (kind == "difference") {
    model->k = compile_difference(spec, compile_ambient, n);
    model->d = connection_from_difference(model->levi_civita, model->k);
  } else {
    fail(spec.name, "unknown connection kind '" + kind + "' (levi_civita, christoffel, difference)");
  }
  model->dstar = dual_connection(model->d, model->g);

  if (spec.contact) {
    const ContactSpec& c = *spec.contact;
    if (c.epsilon != 1) fail(spec.name, "contact.epsilon must be +1 (nu is spacelike)");
    if (static_cast<int>(c.phi_columns.size()) != n) fail(spec.name, "contact.phi_columns must have one column per coordinate");
    ContactStructure cs;
    cs.phi = Tensor11(n, n);
    for (int col = 0; col < n; ++col) {
      const auto v = compile_ambient.vector(c.phi_columns[static_cast<std::size_t>(col)],
                                            "contact.phi_columns[" + std::to_string(col) + "]", static_cast<std::size_t>(n));
      for (int row = 0; row < n; ++row) cs.phi(row, col) = v[static_cast<std::size_t>(row)];
    }
    cs.nu = compile_ambient.vector(c.nu, "contact.nu", static_cast<std::size_t>(n));
    cs.eta = compile_ambient.vector(c.eta, "contact.eta", static_cast<std::size_t>(n));
    cs.epsilon = c.epsilon;
    model->contact = std::move(cs);
  }

  if (spec.hypersurface) {
    const HypersurfaceSpec& h = *spec.hypersurface;
    const Chart hchart = compile_chart(spec, h.chart, "hypersurface");
    const int m = hchart.dimension();
    if (m != n - 1) fail(spec.name, "hypersurface must have one coordinate fewer than the ambient chart");
    const ExprCompiler compile_h(spec, h.chart.coordinates);
    Hypersurface hs;
    hs.domain = Domain{hchart, compile_h.vector(h.embedding, "hypersurface.embedding", static_cast<std::size_t>(n)), n};
    if (static_cast<int>(h.frame.size()) != m) fail(spec.name, "hypersurface.frame must have one field per coordinate");
    for (std::size_t a = 0; a < h.frame.size(); ++a) {
      hs.frame.push_back(VectorField::from_domain(
          compile_h.vector(h.frame[a], "hypersurface.frame[" + std::to_string(a) + "]", static_cast<std::size_t>(n))));
    }
    hs.xi = VectorField::from_domain(compile_h.vector(h.xi, "hypersurface.xi", static_cast<std::size_t>(n)));
    hs.transversal =
        VectorField::from_domain(compile_h.vector(h.transversal, "hypersurface.transversal", static_cast<std::size_t>(n)));
    if (static_cast<int>(h.screen.size()) != m - 1) fail(spec.name, "hypersurface.screen must have m - 1 fields");
    for (std::size_t a = 0; a < h.screen.size(); ++a) {
      hs.screen.push_back(VectorField::from_domain(
          compile_h.vector(h.screen[a], "hypersurface.screen[" + std::to_string(a) + "]", static_cast<std::size_t>(n))));
    }
    model->hypersurface = std::move(hs);
  }
  return model;
}

void bootstrap(const Model& model, int points, std::uint64_t seed) {
  const std::string& name = model.name();
  std::vector<Eigen::VectorXd> ambient_points;
  try {
    ambient_points = sample_points(model.ambient.chart, points, seed);
  } catch (const std::exception& e) {
    fail(name, std::string("ambient sampling: ") + e.what());
  }
  for (const auto& p : ambient_points) {
    const SymmetryDefect s = symmetry_defect(model.g, p);
    if (s.residual > 0.0) {
      std::ostringstream os;
      os << "metric is not symmetric: g(" << s.i << "," << s.j << ") != g(" << s.j << "," << s.i << ")";
      check(false, name, os.str(), p, s.residual);
    }
    try {
      model.levi_civita.evaluate(p);
      model.dstar.evaluate(p);
    } catch (const SingularMetric& e) {
      fail(name, std::string("bootstrap: ") + e.what());
    } catch (const DomainError& e) {
      fail(name, std::string("bootstrap: ") + e.what());
    }
  }
  if (!model.hypersurface) return;
  const Hypersurface& h = *model.hypersurface;
  std::vector<Eigen::VectorXd> hpoints;
  try {
    hpoints = sample_points(h.domain.chart, points, seed + 1);
  } catch (const std::exception& e) {
    fail(name, std::string("hypersurface sampling: ") + e.what());
  }
  for (const auto& p : hpoints) {
    try {
      const Site site(h.domain, p);
      const auto tangent = [&](const VectorField& f, const std::string& what) {
        const Eigen::VectorXd v = f.value(site);
        const double r = site.tangency_residual(v);
        check(r < 1e-8 * std::max(1.0, v.norm()), name, what + " is not tangent", p, r);
      };
      for (std::size_t a = 0; a < h.frame.size(); ++a) tangent(h.frame[a], "frame[" + std::to_string(a) + "]");
      tangent(h.xi, "xi");
      for (std::size_t a = 0; a < h.screen.size(); ++a) tangent(h.screen[a], "screen[" + std::to_string(a) + "]");
      const Eigen::MatrixXd frame = frame_matrix(site, h.frame);
      const double smallest = Eigen::JacobiSVD<Eigen::MatrixXd>(frame).singularValues().minCoeff();
      check(smallest > 1e-8, name, "frame is linearly dependent", p, smallest);

      const Eigen::VectorXd xi = h.xi.value(site);
      const Eigen::VectorXd nv = h.transversal.value(site);
      const auto null_check = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y, double target,
                                  const std::string& what) {
        const double r = std::abs(metric_apply(site, model.g, x, y) - target);
        check(r < 1e-10 * std::max(1.0, x.norm() * y.norm()), name, what, p, r);
      };
      null_check(xi, xi, 0.0, "g(xi, xi) != 0");
      null_check(nv, nv, 0.0, "g(N, N) != 0");
      null_check(xi, nv, 1.0, "g(xi, N) != 1");
      Eigen::MatrixXd screen(site.ambient_dimension(), static_cast<Eigen::Index>(h.screen.size()));
      for (std::size_t a = 0; a < h.screen.size(); ++a) {
        const Eigen::VectorXd w = h.screen[a].value(site);
        screen.col(static_cast<Eigen::Index>(a)) = w;
        null_check(xi, w, 0.0, "g(xi, screen[" + std::to_string(a) + "]) != 0");
        null_check(nv, w, 0.0, "g(N, screen[" + std::to_string(a) + "]) != 0");
      }
      const Eigen::MatrixXd gv = values(metric_at(site, model.g));
      const double det = std::abs((screen.transpose() * gv * screen).determinant());
      check(det > kDegeneracyThreshold, name, "screen Gram matrix is singular", p, det);

      const Radical rad = radical(site, model.g, h.frame, &nv);
      const double sine = sine_between(rad.generator, xi);
      check(sine < 1e-8, name, "declared xi is not the radical direction", p, sine);
      const Eigen::VectorXd solved = solve_transversal(site, model.g, xi, screen);
      const double nr = (solved - nv).norm();
      check(nr < 1e-8 * std::max(1.0, nv.norm()), name, "declared N differs from the solved transversal", p, nr);
    } catch (const LightlikeError& e) {
      fail(name, "bootstrap at point " + point_string(p) + ": " + e.what());
    } catch (const SingularMetric& e) {
      fail(name, std::string("bootstrap: ") + e.what());
    } catch (const DomainError& e) {
      fail(name, "bootstrap at point " + point_string(p) + ": " + e.what());
    }
  }
}

std::shared_ptr<const Model> load_fixture(const FixtureSpec& spec) {
  auto model = compile(spec);
  bootstrap(*model);
  return model;
}

std::shared_ptr<const Model> load_fixture(const std::string& name_or_path) {
  return load_fixture(resolve_fixture(name_or_path));
}

FixtureSpec resolve_fixture(const std::string& name_or_path) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(name_or_path, ec)) return read_fixture_file(name_or_path);
  return registry_fixture(name_or_path);
}

}  // namespace statgeo
