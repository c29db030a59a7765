#pragma once

// Shared machinery of the suites: row bookkeeping with hypothesis gauges,
// seeded random fields, and per-point caches of induced objects.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "statgeo/suites.hpp"

namespace statgeo::detail {

/// Rows of one suite, keyed by id. Every row defaults to an expected outcome
/// that the fixture annotations may override; gauges may further downgrade
/// a row to report-only or withhold it as not-evaluated.
class RowBook {
 public:
  RowBook(const Model& model, std::string suite, double tolerance)
      : model_(&model), suite_(std::move(suite)), tolerance_(tolerance) {}

  RowAccumulator& row(const std::string& id, const std::string& reference, const std::string& domain = "ambient",
                      Expectation expected = Expectation::Pass, const std::string& note = {});

  /// `id` is expected to pass only while every listed gauge row is within
  /// tolerance; otherwise it is still computed but reported only.
  void pass_if(const std::string& id, const std::vector<std::string>& gauges);
  /// `id` is withheld (not-evaluated) unless every gauge is within tolerance.
  void require_gauges(const std::string& id, const std::vector<std::string>& gauges);

  /// Adds one point to the sample count of every row touched since the last call.
  void end_point();

  bool within(const std::string& id) const;
  double max_residual(const std::string& id) const;
  double tolerance() const { return tolerance_; }

  void emit(CheckReport& report) const;

 private:
  struct Entry {
    RowAccumulator acc;
    Expectation expected;
    std::string note;
    std::vector<std::string> pass_gauges;
    std::vector<std::string> required_gauges;
  };
  std::string gauge_note(const std::vector<std::string>& gauges) const;

  const Model* model_;
  std::string suite_;
  double tolerance_;
  std::map<std::string, Entry> rows_;
  std::set<std::string> touched_;
};

/// Deterministic generator for the random fields of one suite block.
std::mt19937_64 field_rng(std::uint64_t seed, std::uint64_t salt);

/// Polynomial of degree <= 2 in `variables` coordinates, coefficients in [-1, 1].
Expr random_polynomial(const std::vector<std::string>& names, std::mt19937_64& rng);

/// Field whose ambient components are random polynomials of the domain coordinates.
VectorField random_ambient_field(const Domain& domain, std::mt19937_64& rng);

/// sum_a p_a(q) F_a with random polynomial coefficients; tangent when the F_a are.
VectorField random_combination(const Domain& domain, const std::vector<VectorField>& basis, std::mt19937_64& rng);

/// The scalar field given by an expression in the domain coordinates.
ScalarField scalar_field(const Expr& e);

inline constexpr int kRandomFields = 3;

/// Coordinate fields of the ambient chart followed by kRandomFields random
/// polynomial fields.
std::vector<VectorField> ambient_fields(const Model& model, std::uint64_t seed);
/// The adapted frame (xi first, then the screen) followed by kRandomFields
/// random tangent combinations of it.
std::vector<VectorField> tangent_fields(const Model& model, std::uint64_t seed);

/// Seeds of the two sample sets; the hypersurface set is offset so that it
/// never replays the ambient sequence.
inline std::uint64_t ambient_seed(const RunConfig& c) { return c.seed; }
inline std::uint64_t hypersurface_seed(const RunConfig& c) { return c.seed + 1; }

/// Field values at one site, with and without partials.
struct FieldValues {
  std::vector<VectorXdual> dual;
  std::vector<Eigen::VectorXd> value;

  FieldValues(const Site& site, const std::vector<VectorField>& fields);
  std::size_t size() const { return dual.size(); }
};

/// Gauss-Weingarten data of one connection at one site over a field list.
struct InducedAtPoint {
  std::vector<std::vector<Eigen::VectorXd>> d;   // D_{F_i} F_j
  std::vector<std::vector<double>> b;            // B(F_i, F_j)
  std::vector<std::vector<double>> c;            // C(F_i, P F_j)
  std::vector<std::vector<double>> b_screen;     // B(F_i, P F_j)
  std::vector<Eigen::VectorXd> shape_n;          // A_N F_i
  std::vector<double> tau;                       // tau(F_i)
  std::vector<Eigen::VectorXd> radical_shape;    // Abar_xi F_i = -P(D_{F_i} xi)
  std::vector<double> radical_theta;             // theta(D_{F_i} xi)
  std::vector<Eigen::VectorXd> d_xi;             // D_{F_i} xi
  std::vector<double> b_xi;                      // B(F_i, xi)
  double gauss_tangency = 0;                     // worst tangency residual of D_X Y
  double weingarten_tangency = 0;                // worst tangency residual of A_N X

  InducedAtPoint(const Site& site, const InducedObjects& induced, const FieldValues& f);
};

Eigen::VectorXd point_of(const Site& site);

void section2_suite(const Model& model, const RunConfig& config, CheckReport& report);
void section3_suite(const Model& model, const RunConfig& config, CheckReport& report);
void contact_suite(const Model& model, const RunConfig& config, CheckReport& report);
void ssi_suite(const Model& model, const RunConfig& config, CheckReport& report);

}  // namespace statgeo::detail
