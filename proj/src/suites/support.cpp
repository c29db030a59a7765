#include "support.hpp"

#include <algorithm>
#include <cmath>

namespace statgeo::detail {

RowAccumulator& RowBook::row(const std::string& id, const std::string& reference, const std::string& domain,
                             Expectation expected, const std::string& note) {
  auto it = rows_.find(id);
  if (it == rows_.end()) {
    it = rows_.emplace(id, Entry{RowAccumulator(id, reference, domain), expected, note, {}, {}}).first;
  }
  touched_.insert(id);
  return it->second.acc;
}

void RowBook::pass_if(const std::string& id, const std::vector<std::string>& gauges) {
  auto& g = rows_.at(id).pass_gauges;
  g.insert(g.end(), gauges.begin(), gauges.end());
}

void RowBook::require_gauges(const std::string& id, const std::vector<std::string>& gauges) {
  auto& g = rows_.at(id).required_gauges;
  g.insert(g.end(), gauges.begin(), gauges.end());
}

void RowBook::end_point() {
  for (const auto& id : touched_) rows_.at(id).acc.count_point();
  touched_.clear();
}

bool RowBook::within(const std::string& id) const {
  const auto it = rows_.find(id);
  if (it == rows_.end() || it->second.acc.empty() || !it->second.acc.finite()) return false;
  // A gauge that is itself withheld cannot certify anything.
  for (const auto& g : it->second.required_gauges) {
    if (!within(g)) return false;
  }
  return it->second.acc.max_residual() < tolerance_;
}

double RowBook::max_residual(const std::string& id) const {
  const auto it = rows_.find(id);
  return it == rows_.end() ? std::nan("") : it->second.acc.max_residual();
}

std::string RowBook::gauge_note(const std::vector<std::string>& gauges) const {
  std::string note;
  for (const auto& g : gauges) {
    if (within(g)) continue;
    note += note.empty() ? "hypothesis not met: " : "; ";
    const auto it = rows_.find(g);
    note += g + (it == rows_.end() || it->second.acc.empty() ? std::string(" not computed")
                                                            : " = " + format_residual(it->second.acc.max_residual()));
  }
  return note;
}

void RowBook::emit(CheckReport& report) const {
  for (const auto& [id, e] : rows_) {
    std::string note = model_->annotation_note(id);
    if (note.empty()) note = e.note;
    const std::string required = gauge_note(e.required_gauges);
    if (!required.empty()) {
      CheckRow r = e.acc.finish(suite_, tolerance_, Expectation::ReportOnly);
      report.rows.push_back(not_evaluated(id, suite_, r.reference, r.domain, tolerance_,
                                          note.empty() ? required : note + "; " + required));
      continue;
    }
    Expectation expected = model_->expectation(id, e.expected);
    const std::string downgraded = gauge_note(e.pass_gauges);
    if (!downgraded.empty() && expected == Expectation::Pass) {
      expected = Expectation::ReportOnly;
      note = note.empty() ? downgraded : note + "; " + downgraded;
    }
    report.rows.push_back(e.acc.finish(suite_, tolerance_, expected, note));
  }
}

std::mt19937_64 field_rng(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
  return std::mt19937_64(seq);
}

namespace {

double coefficient(std::mt19937_64& rng) {
  // Quarter steps keep the generated fields printable and exactly representable.
  return std::round((2.0 * unit_uniform(rng()) - 1.0) * 4.0) / 4.0;
}

}  // namespace

Expr random_polynomial(const std::vector<std::string>& names, std::mt19937_64& rng) {
  const int n = static_cast<int>(names.size());
  Expr p = Expr::constant(coefficient(rng));
  for (int i = 0; i < n; ++i) p = p + Expr::constant(coefficient(rng)) * Expr::variable(i, names[static_cast<std::size_t>(i)]);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      p = p + Expr::constant(coefficient(rng)) * Expr::variable(i, names[static_cast<std::size_t>(i)]) *
                  Expr::variable(j, names[static_cast<std::size_t>(j)]);
    }
  }
  return p;
}

VectorField random_ambient_field(const Domain& domain, std::mt19937_64& rng) {
  std::vector<Expr> components;
  for (int k = 0; k < domain.ambient_dimension; ++k) components.push_back(random_polynomial(domain.chart.names, rng));
  return VectorField::from_domain(std::move(components));
}

ScalarField scalar_field(const Expr& e) {
  return [e](const Site& site) { return e.at(site.seeded()); };
}

VectorField random_combination(const Domain& domain, const std::vector<VectorField>& basis, std::mt19937_64& rng) {
  VectorField out = VectorField::zero(domain.ambient_dimension);
  for (const auto& f : basis) out = out + scalar_field(random_polynomial(domain.chart.names, rng)) * f;
  return out;
}

std::vector<VectorField> ambient_fields(const Model& model, std::uint64_t seed) {
  const int n = model.ambient.ambient_dimension;
  std::vector<VectorField> out;
  for (int i = 0; i < n; ++i) out.push_back(VectorField::coordinate(i, n));
  auto rng = field_rng(seed, 0xa3b1);
  for (int r = 0; r < kRandomFields; ++r) out.push_back(random_ambient_field(model.ambient, rng));
  return out;
}

std::vector<VectorField> tangent_fields(const Model& model, std::uint64_t seed) {
  const Hypersurface& h = *model.hypersurface;
  std::vector<VectorField> out = h.adapted_frame();
  const std::vector<VectorField> basis = out;
  auto rng = field_rng(seed, 0x7e57);
  for (int r = 0; r < kRandomFields; ++r) out.push_back(random_combination(h.domain, basis, rng));
  return out;
}

FieldValues::FieldValues(const Site& site, const std::vector<VectorField>& fields) {
  for (const auto& f : fields) {
    dual.push_back(f(site));
    value.push_back(values(dual.back()));
  }
}

InducedAtPoint::InducedAtPoint(const Site& site, const InducedObjects& induced, const FieldValues& f) {
  const std::size_t n = f.size();
  const VectorXdual xi = induced.xi()(site);
  d.assign(n, std::vector<Eigen::VectorXd>(n));
  b.assign(n, std::vector<double>(n));
  c.assign(n, std::vector<double>(n));
  b_screen.assign(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd& x = f.value[i];
    for (std::size_t j = 0; j < n; ++j) {
      const auto g = induced.gauss(site, x, f.dual[j]);
      d[i][j] = g.induced;
      b[i][j] = g.second_form;
      gauss_tangency = std::max(gauss_tangency, site.tangency_residual(g.induced));
      c[i][j] = induced.screen(site, x, f.dual[j]).form;
      b_screen[i][j] = induced.gauss(site, x, induced.project(site, f.dual[j])).second_form;
    }
    const auto w = induced.weingarten(site, x);
    shape_n.push_back(w.shape);
    tau.push_back(w.form);
    weingarten_tangency = std::max(weingarten_tangency, site.tangency_residual(w.shape));
    const auto r = induced.radical(site, x);
    radical_shape.push_back(r.shape);
    radical_theta.push_back(r.form);
    const auto gx = induced.gauss(site, x, xi);
    d_xi.push_back(gx.induced);
    b_xi.push_back(gx.second_form);
  }
}

Eigen::VectorXd point_of(const Site& site) { return site.coords(); }

}  // namespace statgeo::detail
