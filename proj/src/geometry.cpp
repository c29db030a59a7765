#include "statgeo/geometry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace statgeo {

bool Chart::admits(const Eigen::VectorXd& p) const {
  for (int i = 0; i < dimension(); ++i) {
    if (p[i] < box[static_cast<std::size_t>(i)].lo || p[i] > box[static_cast<std::size_t>(i)].hi) return false;
  }
  try {
    for (const Expr& e : exclusions) {
      if (!(e.at(p) > 0.0)) return false;
    }
  } catch (const DomainError&) {
    return false;
  }
  return true;
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::vector<Eigen::VectorXd> sample_points(const Chart& chart, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(count));
  const long max_attempts = 1000L * std::max(count, 1);
  long attempts = 0;
  const int n = chart.dimension();
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > max_attempts) {
      throw std::runtime_error("sampling: exclusions reject almost every point of the box");
    }
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) {
      const Interval& iv = chart.box[static_cast<std::size_t>(i)];
      p[i] = iv.lo + (iv.hi - iv.lo) * unit_uniform(rng());
    }
    if (chart.admits(p)) out.push_back(std::move(p));
  }
  return out;
}

Domain Domain::ambient(Chart chart) {
  Domain d;
  d.ambient_dimension = chart.dimension();
  d.chart = std::move(chart);
  return d;
}

Site::Site(const Domain& domain, const Eigen::VectorXd& coords)
    : domain_(&domain), coords_(coords), seeded_(seed(coords)) {
  if (coords.size() > kMaxVariables) throw std::invalid_argument("site: too many coordinates");
  if (domain.is_ambient()) {
    image_ = seeded_;
  } else {
    image_ = evaluate_all(domain.embedding, seeded_);
  }
  ambient_ = values(image_);
  jacobian_.resize(image_.size(), coords.size());
  for (Eigen::Index k = 0; k < image_.size(); ++k) {
    jacobian_.row(k) = image_[k].partials.head(coords.size()).transpose();
  }
  qr_.compute(jacobian_);
}

Eigen::VectorXd Site::lift(const Eigen::VectorXd& x) const {
  if (domain_->is_ambient()) return x;
  return qr_.solve(x);
}

double Site::tangency_residual(const Eigen::VectorXd& x) const {
  if (domain_->is_ambient()) return 0.0;
  return (jacobian_ * qr_.solve(x) - x).norm();
}

Eigen::VectorXd gradient(const Site& site, const Dual& s) { return s.partials.head(site.dimension()); }

double directional_derivative(const Site& site, const Eigen::VectorXd& x, const Dual& s) {
  return gradient(site, s).dot(site.lift(x));
}

Eigen::VectorXd directional_derivative(const Site& site, const Eigen::VectorXd& x, const VectorXdual& y) {
  const Eigen::VectorXd xhat = site.lift(x);
  Eigen::VectorXd out(y.size());
  for (Eigen::Index k = 0; k < y.size(); ++k) out[k] = gradient(site, y[k]).dot(xhat);
  return out;
}

VectorField VectorField::from_domain(std::vector<Expr> components) {
  return VectorField([c = std::move(components)](const Site& site) { return evaluate_all(c, site.seeded()); });
}

VectorField VectorField::from_ambient(std::vector<Expr> components) {
  return VectorField([c = std::move(components)](const Site& site) { return evaluate_all(c, site.image()); });
}

VectorField VectorField::coordinate(int i, int ambient_dimension) {
  return VectorField([i, ambient_dimension](const Site&) {
    VectorXdual v = VectorXdual::Constant(ambient_dimension, Dual(0.0));
    v[i] = Dual(1.0);
    return v;
  });
}

VectorField VectorField::zero(int ambient_dimension) {
  return VectorField([ambient_dimension](const Site&) { return VectorXdual::Constant(ambient_dimension, Dual(0.0)); });
}

VectorField operator+(const VectorField& x, const VectorField& y) {
  return VectorField([x, y](const Site& s) -> VectorXdual { return x(s) + y(s); });
}

VectorField operator-(const VectorField& x, const VectorField& y) {
  return VectorField([x, y](const Site& s) -> VectorXdual { return x(s) - y(s); });
}

VectorField operator*(double c, const VectorField& x) {
  return VectorField([c, x](const Site& s) -> VectorXdual { return x(s) * Dual(c); });
}

VectorField operator*(const ScalarField& f, const VectorField& x) {
  return VectorField([f, x](const Site& s) -> VectorXdual { return x(s) * f(s); });
}

VectorField apply(const Tensor11& t, const VectorField& x) {
  return VectorField([&t, x](const Site& s) -> VectorXdual {
    const MatrixXdual& m = s.memo<MatrixXdual>(&t, [&] { return t.at(s.image()); });
    return m * x(s);
  });
}

Eigen::VectorXd lie_bracket(const Site& site, const VectorField& x, const VectorField& y) {
  const VectorXdual xv = x(site);
  const VectorXdual yv = y(site);
  return directional_derivative(site, values(xv), yv) - directional_derivative(site, values(yv), xv);
}

const MatrixXdual& metric_at(const Site& site, const Metric& g) {
  return site.memo<MatrixXdual>(&g, [&] { return g.at(site.image()); });
}

Dual metric_apply(const Site& site, const Metric& g, const VectorXdual& x, const VectorXdual& y) {
  return inner(metric_at(site, g), x, y);
}

double metric_apply(const Site& site, const Metric& g, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const auto* key = reinterpret_cast<const char*>(&g) + 1;
  const Eigen::MatrixXd& gv = site.memo<Eigen::MatrixXd>(key, [&] { return Eigen::MatrixXd(values(metric_at(site, g))); });
  return inner(gv, x, y);
}

Dual apply(const Site& site, const std::vector<Expr>& form, const VectorXdual& x) {
  return evaluate_all(form, site.image()).dot(x);
}

double apply(const Site& site, const std::vector<Expr>& form, const Eigen::VectorXd& x) {
  return evaluate_all(form, site.ambient()).dot(x);
}

SymmetryDefect symmetry_defect(const Metric& g, const Eigen::VectorXd& x) {
  const Eigen::MatrixXd m = g.at(x);
  SymmetryDefect worst;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i + 1; j < m.cols(); ++j) {
      const double r = std::abs(m(i, j) - m(j, i));
      if (r > worst.residual) worst = {r, i, j};
    }
  }
  return worst;
}

}  // namespace statgeo
