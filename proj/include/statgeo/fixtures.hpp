#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "statgeo/connection.hpp"
#include "statgeo/contact.hpp"
#include "statgeo/geometry.hpp"
#include "statgeo/lightlike.hpp"
#include "statgeo/report.hpp"

namespace statgeo {

/// Load, schema, expression or bootstrap failure. The message names the
/// fixture and, for bootstrap failures, the point and residual.
class FixtureError : public std::runtime_error {
 public:
  explicit FixtureError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kFixtureFormatVersion = 1;

// Declarative fixture document. Every expression is kept as source text; the
// names it may reference are the coordinates of its chart plus the fixture
// parameters.

struct ChartSpec {
  std::vector<std::string> coordinates;
  std::vector<Interval> box;
  std::vector<std::string> exclusions;
};

/// One Christoffel or difference-tensor component C^k_ij.
struct EntrySpec {
  int k = 0;
  int i = 0;
  int j = 0;
  std::string value;
};

/// coefficient * alpha(X) * beta(Y) * vector, a rank-one (1,2)-tensor.
struct RankOneSpec {
  std::string coefficient;
  std::vector<std::string> alpha;
  std::vector<std::string> beta;
  std::vector<std::string> vector;
};

/// kind: "levi_civita" (D = nabla), "christoffel" (entries are Gamma), or
/// "difference" (D = nabla + K with K from entries and rank-one terms).
struct ConnectionSpec {
  std::string kind = "levi_civita";
  std::vector<EntrySpec> entries;
  std::vector<RankOneSpec> terms;
};

struct ContactSpec {
  std::vector<std::vector<std::string>> phi_columns;  // column j is phi(d_j)
  std::vector<std::string> nu;
  std::vector<std::string> eta;
  int epsilon = 1;
};

/// Ambient components of every field are expressions in the hypersurface
/// coordinates.
struct HypersurfaceSpec {
  ChartSpec chart;
  std::vector<std::string> embedding;
  std::vector<std::vector<std::string>> frame;
  std::vector<std::string> xi;
  std::vector<std::string> transversal;
  std::vector<std::vector<std::string>> screen;
};

struct ExpectationOverride {
  Expectation expected = Expectation::ReportOnly;
  std::string note;
};

struct FixtureSpec {
  std::string name;
  std::string description;
  std::map<std::string, double> parameters;
  ChartSpec ambient;
  std::vector<std::vector<std::string>> metric;
  ConnectionSpec connection;
  std::optional<ContactSpec> contact;
  std::optional<HypersurfaceSpec> hypersurface;
  std::map<std::string, ExpectationOverride> expectations;
  std::vector<std::string> changelog;
};

/// Canonical JSON text; expressions are reprinted in canonical form so that
/// serialize(load(serialize(x))) == serialize(x).
std::string serialize_fixture(const FixtureSpec& spec);
FixtureSpec parse_fixture(const std::string& json_text);
FixtureSpec read_fixture_file(const std::string& path);

/// Compiled fixture. Objects hold references into the model, so it is only
/// handed out behind a shared pointer and never moves.
struct Model {
  FixtureSpec spec;
  Domain ambient;
  Metric g;
  Connection levi_civita;
  Connection d;
  Connection dstar;
  DifferenceTensor k;
  std::optional<ContactStructure> contact;
  std::optional<Hypersurface> hypersurface;

  const std::string& name() const { return spec.name; }
  /// Fixture annotation for a row, or `fallback` when none is declared.
  Expectation expectation(const std::string& id, Expectation fallback) const;
  std::string annotation_note(const std::string& id) const;
};

std::shared_ptr<const Model> compile(const FixtureSpec& spec);

/// Validations every fixture must pass before use: metric symmetry and
/// nondegeneracy, contact sign, and the full null-frame contract of the
/// hypersurface. Throws FixtureError naming the first violation.
void bootstrap(const Model& model, int points = 20, std::uint64_t seed = 20240901);

/// Registry name or path to a fixture file; compiled and bootstrapped.
std::shared_ptr<const Model> load_fixture(const std::string& name_or_path);
std::shared_ptr<const Model> load_fixture(const FixtureSpec& spec);

std::vector<std::string> registry_names();
/// Throws FixtureError listing the available names.
FixtureSpec registry_fixture(const std::string& name);
/// Registry name, or a path when the argument names an existing file.
FixtureSpec resolve_fixture(const std::string& name_or_path);

}  // namespace statgeo
