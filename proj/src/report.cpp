#include "statgeo/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace statgeo {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::ReportOnly:
      return "report-only";
    case Status::NotEvaluated:
      return "not-evaluated";
  }
  return "?";
}

const char* to_string(Expectation e) { return e == Expectation::Pass ? "pass" : "report-only"; }

void RowAccumulator::add(double residual, const Eigen::VectorXd& point) {
  const double r = std::abs(residual);
  if (!std::isfinite(r)) {
    if (finite_) argmax_ = point;
    finite_ = false;
    max_ = std::numeric_limits<double>::infinity();
  } else if (finite_ && (!seen_ || r > max_)) {
    max_ = r;
    argmax_ = point;
  }
  seen_ = true;
}

CheckRow RowAccumulator::finish(const std::string& suite, double tolerance, Expectation expected,
                                std::string note) const {
  CheckRow row;
  row.id = id_;
  row.suite = suite;
  row.reference = reference_;
  row.domain = domain_;
  row.max_residual = max_;
  row.argmax.assign(argmax_.data(), argmax_.data() + argmax_.size());
  row.samples = samples_;
  row.tolerance = tolerance;
  row.expected = expected;
  row.finite = finite_;
  row.note = std::move(note);
  if (expected == Expectation::Pass) {
    row.status = row.within_tolerance() && seen_ ? Status::Pass : Status::Fail;
  } else {
    row.status = Status::ReportOnly;
  }
  return row;
}

CheckRow not_evaluated(const std::string& id, const std::string& suite, const std::string& reference,
                       const std::string& domain, double tolerance, std::string note) {
  CheckRow row;
  row.id = id;
  row.suite = suite;
  row.reference = reference;
  row.domain = domain;
  row.tolerance = tolerance;
  row.expected = Expectation::ReportOnly;
  row.status = Status::NotEvaluated;
  row.note = std::move(note);
  return row;
}

void CheckReport::finalize() {
  std::stable_sort(rows.begin(), rows.end(), [](const CheckRow& a, const CheckRow& b) {
    return a.id < b.id;
  });
}

std::vector<const CheckRow*> CheckReport::failures() const {
  std::vector<const CheckRow*> out;
  for (const auto& r : rows) {
    if (r.expected == Expectation::Pass && r.status == Status::Fail) out.push_back(&r);
  }
  return out;
}

const CheckRow* CheckReport::find(const std::string& id) const {
  for (const auto& r : rows) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::string format_residual(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json residual_json(double v) {
  if (!std::isfinite(v)) return format_residual(v);
  return std::stod(format_residual(v));
}

ordered_json point_json(const std::vector<double>& p) {
  ordered_json a = ordered_json::array();
  for (double x : p) a.push_back(x);
  return a;
}

}  // namespace

std::string to_json(const CheckReport& report) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["fixture"] = report.fixture;
  j["config"] = {{"suite", report.config.suite},
                 {"points", report.config.points},
                 {"tolerance", report.config.tolerance},
                 {"seed", report.config.seed}};
  ordered_json domains = ordered_json::array();
  for (const auto& s : report.samples) {
    ordered_json pts = ordered_json::array();
    for (const auto& p : s.points) pts.push_back(point_json(std::vector<double>(p.data(), p.data() + p.size())));
    domains.push_back({{"domain", s.domain}, {"coordinates", s.coordinates}, {"points", pts}});
  }
  j["domains"] = domains;
  ordered_json rows = ordered_json::array();
  int failed = 0;
  for (const auto& r : report.rows) {
    if (r.expected == Expectation::Pass && r.status == Status::Fail) ++failed;
    ordered_json row;
    row["id"] = r.id;
    row["suite"] = r.suite;
    row["reference"] = r.reference;
    row["domain"] = r.domain;
    row["status"] = to_string(r.status);
    row["expected"] = to_string(r.expected);
    if (r.status == Status::NotEvaluated) {
      row["max_residual"] = nullptr;
      row["argmax"] = nullptr;
    } else {
      row["max_residual"] = residual_json(r.max_residual);
      row["argmax"] = point_json(r.argmax);
    }
    row["within_tolerance"] = r.status != Status::NotEvaluated && r.within_tolerance();
    row["samples"] = r.samples;
    row["tolerance"] = r.tolerance;
    if (!r.note.empty()) row["note"] = r.note;
    rows.push_back(row);
  }
  j["summary"] = {{"rows", report.rows.size()}, {"failed", failed}};
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string to_text(const CheckReport& report) {
  std::ostringstream os;
  os << "fixture " << report.fixture << "  suite " << report.config.suite << "  points " << report.config.points
     << "  tol " << report.config.tolerance << "  seed " << report.config.seed << "\n";
  std::size_t width = 10;
  for (const auto& r : report.rows) width = std::max(width, r.id.size());
  std::string suite;
  for (const auto& r : report.rows) {
    if (r.suite != suite) {
      suite = r.suite;
      os << "\n[" << suite << "]\n";
    }
    os << "  " << r.id << std::string(width - r.id.size() + 2, ' ');
    char status[16];
    std::snprintf(status, sizeof status, "%-14s", to_string(r.status));
    os << status;
    if (r.status != Status::NotEvaluated) os << format_residual(r.max_residual);
    if (!r.note.empty()) os << "  (" << r.note << ")";
    os << "\n      " << r.reference << "\n";
  }
  const auto failed = report.failures();
  os << "\n" << report.rows.size() << " rows, " << failed.size() << " failed\n";
  return os.str();
}

}  // namespace statgeo
