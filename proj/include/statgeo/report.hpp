#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace statgeo {

enum class Status { Pass, Fail, ReportOnly, NotEvaluated };
enum class Expectation { Pass, ReportOnly };

const char* to_string(Status s);
const char* to_string(Expectation e);

/// One identity checked over the sample set.
struct CheckRow {
  std::string id;
  std::string suite;
  std::string reference;  // the identity, written as a formula
  std::string domain;     // "ambient" or "hypersurface"
  double max_residual = 0.0;
  std::vector<double> argmax;
  int samples = 0;
  double tolerance = 0.0;
  Expectation expected = Expectation::ReportOnly;
  Status status = Status::ReportOnly;
  bool finite = true;
  std::string note;

  bool within_tolerance() const { return finite && max_residual < tolerance; }
};

/// Running max of |residual| for one row.
class RowAccumulator {
 public:
  RowAccumulator() = default;
  RowAccumulator(std::string id, std::string reference, std::string domain)
      : id_(std::move(id)), reference_(std::move(reference)), domain_(std::move(domain)) {}

  void add(double residual, const Eigen::VectorXd& point);
  void add_norm(const Eigen::VectorXd& residual, const Eigen::VectorXd& point) { add(residual.norm(), point); }
  /// Counts a sample point once, however many field combinations it saw.
  void count_point() { ++samples_; }

  const std::string& id() const { return id_; }
  double max_residual() const { return max_; }
  bool finite() const { return finite_; }
  bool empty() const { return !seen_; }

  CheckRow finish(const std::string& suite, double tolerance, Expectation expected, std::string note = {}) const;

 private:
  std::string id_;
  std::string reference_;
  std::string domain_;
  double max_ = 0.0;
  Eigen::VectorXd argmax_;
  int samples_ = 0;
  bool finite_ = true;
  bool seen_ = false;
};

/// A row marked not-evaluated because its hypothesis gauge failed.
CheckRow not_evaluated(const std::string& id, const std::string& suite, const std::string& reference,
                       const std::string& domain, double tolerance, std::string note);

struct SampleSet {
  std::string domain;
  std::vector<std::string> coordinates;
  std::vector<Eigen::VectorXd> points;
};

struct RunConfig {
  std::string suite = "all";
  int points = 64;
  double tolerance = 1e-8;
  std::uint64_t seed = 42;
};

struct CheckReport {
  std::string fixture;
  RunConfig config;
  std::vector<SampleSet> samples;
  std::vector<CheckRow> rows;  // sorted by id on finalize

  void finalize();
  /// Rows whose annotation is pass but whose status is fail.
  std::vector<const CheckRow*> failures() const;
  const CheckRow* find(const std::string& id) const;
};

/// Residuals are printed with 6 significant digits so that reports are
/// stable across compilers and libm versions.
std::string format_residual(double v);

std::string to_json(const CheckReport& report);
std::string to_text(const CheckReport& report);

inline constexpr int kReportSchemaVersion = 1;

}  // namespace statgeo
