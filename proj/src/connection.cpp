#include "statgeo/connection.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>

namespace statgeo {

namespace {

Christoffel zero_coefficients(int n) { return Christoffel(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n)); }

std::string point_string(const Eigen::VectorXd& x) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

/// Metric values, inverse and first derivatives d_l g_ij at x.
struct MetricJet {
  Eigen::MatrixXd g;
  Eigen::MatrixXd inverse;
  std::vector<Eigen::MatrixXd> d;  // d[l](i, j)
};

MetricJet metric_jet(const Metric& metric, const Eigen::VectorXd& x, double threshold) {
  const int n = metric.rows();
  const MatrixXdual gd = metric.at(seed(x));
  MetricJet jet;
  jet.g = values(gd);
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(jet.g);
  const double det = lu.determinant();
  if (!(std::abs(det) >= threshold)) {
    throw SingularMetric("metric is singular at " + point_string(x) + " (|det g| = " + std::to_string(std::abs(det)) +
                         ")");
  }
  jet.inverse = lu.inverse();
  jet.d.assign(static_cast<std::size_t>(n), Eigen::MatrixXd(n, n));
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) jet.d[static_cast<std::size_t>(l)](i, j) = gd(i, j).partials[l];
    }
  }
  return jet;
}

}  // namespace

Eigen::VectorXd CoefficientField::contract(const Site& site, const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  const Christoffel& c = at(site);
  Eigen::VectorXd out(dimension());
  for (int k = 0; k < dimension(); ++k) out[k] = x.dot(c[static_cast<std::size_t>(k)] * y);
  return out;
}

CoefficientField coefficients_from_exprs(int n, std::vector<Expr> entries, std::string name) {
  if (static_cast<int>(entries.size()) != n * n * n) throw std::invalid_argument("coefficients: expected n^3 entries");
  return CoefficientField(
      n,
      [n, e = std::move(entries)](const Eigen::VectorXd& x) {
        Christoffel c = zero_coefficients(n);
        for (int k = 0; k < n; ++k) {
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
              c[static_cast<std::size_t>(k)](i, j) = e[static_cast<std::size_t>((k * n + i) * n + j)].at(x);
            }
          }
        }
        return c;
      },
      std::move(name));
}

CoefficientField coefficients_from_entries(int n, std::vector<CoefficientEntry> entries, std::string name) {
  for (const auto& e : entries) {
    if (e.k < 0 || e.k >= n || e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) {
      throw std::invalid_argument("coefficients: index out of range");
    }
  }
  return CoefficientField(
      n,
      [n, e = std::move(entries)](const Eigen::VectorXd& x) {
        Christoffel c = zero_coefficients(n);
        for (const auto& entry : e) c[static_cast<std::size_t>(entry.k)](entry.i, entry.j) += entry.value.at(x);
        return c;
      },
      std::move(name));
}

Connection levi_civita(const Metric& g, double threshold) {
  const int n = g.rows();
  return Connection(
      n,
      [g, n, threshold](const Eigen::VectorXd& x) {
        const MetricJet jet = metric_jet(g, x, threshold);
        // Lowered symbols Gamma_lij = 1/2 (d_i g_jl + d_j g_il - d_l g_ij).
        Christoffel lowered = zero_coefficients(n);
        for (int l = 0; l < n; ++l) {
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
              lowered[static_cast<std::size_t>(l)](i, j) =
                  0.5 * (jet.d[static_cast<std::size_t>(i)](j, l) + jet.d[static_cast<std::size_t>(j)](i, l) -
                         jet.d[static_cast<std::size_t>(l)](i, j));
            }
          }
        }
        Christoffel c = zero_coefficients(n);
        for (int k = 0; k < n; ++k) {
          for (int l = 0; l < n; ++l) {
            c[static_cast<std::size_t>(k)] += jet.inverse(k, l) * lowered[static_cast<std::size_t>(l)];
          }
        }
        return c;
      },
      "levi_civita");
}

Connection dual_connection(const Connection& d, const Metric& g, double threshold) {
  const int n = g.rows();
  return Connection(
      n,
      [d, g, n, threshold](const Eigen::VectorXd& x) {
        const MetricJet jet = metric_jet(g, x, threshold);
        const Christoffel gamma = d.evaluate(x);
        // Lowered dual symbols L_jik = d_i g_jk - Gamma^l_ij g_lk, so that
        // Gamma*^m_ik = g^mj L_jik.
        Christoffel c = zero_coefficients(n);
        for (int i = 0; i < n; ++i) {
          for (int k = 0; k < n; ++k) {
            Eigen::VectorXd lowered(n);
            for (int j = 0; j < n; ++j) {
              double s = jet.d[static_cast<std::size_t>(i)](j, k);
              for (int l = 0; l < n; ++l) s -= gamma[static_cast<std::size_t>(l)](i, j) * jet.g(l, k);
              lowered[j] = s;
            }
            const Eigen::VectorXd raised = jet.inverse * lowered;
            for (int m = 0; m < n; ++m) c[static_cast<std::size_t>(m)](i, k) = raised[m];
          }
        }
        return c;
      },
      "dual(" + d.name() + ")");
}

DifferenceTensor difference_tensor(const Connection& d, const Connection& nabla) {
  return DifferenceTensor(
      d.dimension(),
      [d, nabla](const Eigen::VectorXd& x) {
        Christoffel a = d.evaluate(x);
        const Christoffel b = nabla.evaluate(x);
        for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
        return a;
      },
      d.name() + " - " + nabla.name());
}

Connection connection_from_difference(const Connection& nabla, const DifferenceTensor& k) {
  return Connection(
      nabla.dimension(),
      [nabla, k](const Eigen::VectorXd& x) {
        Christoffel a = nabla.evaluate(x);
        const Christoffel b = k.evaluate(x);
        for (std::size_t m = 0; m < a.size(); ++m) a[m] += b[m];
        return a;
      },
      nabla.name() + " + " + k.name());
}

Connection mean_complement(const Connection& d, const Connection& nabla) {
  return Connection(
      d.dimension(),
      [d, nabla](const Eigen::VectorXd& x) {
        Christoffel a = nabla.evaluate(x);
        const Christoffel b = d.evaluate(x);
        for (std::size_t m = 0; m < a.size(); ++m) a[m] = 2.0 * a[m] - b[m];
        return a;
      },
      "2*" + nabla.name() + " - " + d.name());
}

double coefficient_distance(const Christoffel& a, const Christoffel& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, (a[k] - b[k]).cwiseAbs().maxCoeff());
  return worst;
}

Eigen::VectorXd covariant_derivative(const Site& site, const Connection& d, const Eigen::VectorXd& x,
                                     const VectorXdual& y) {
  return directional_derivative(site, x, y) + d.contract(site, x, values(y));
}

Eigen::VectorXd covariant_derivative(const Site& site, const Connection& d, const VectorField& x,
                                     const VectorField& y) {
  return covariant_derivative(site, d, x.value(site), y(site));
}

Eigen::VectorXd torsion(const Site& site, const Connection& d, const VectorField& x, const VectorField& y) {
  return covariant_derivative(site, d, x, y) - covariant_derivative(site, d, y, x) - lie_bracket(site, x, y);
}

double metric_defect(const Site& site, const Connection& d, const Metric& g, const VectorField& x,
                     const VectorField& y, const VectorField& z) {
  const Eigen::VectorXd xv = x.value(site);
  const VectorXdual yd = y(site);
  const VectorXdual zd = z(site);
  const Dual gyz = metric_apply(site, g, yd, zd);
  return directional_derivative(site, xv, gyz) -
         metric_apply(site, g, covariant_derivative(site, d, xv, yd), values(zd)) -
         metric_apply(site, g, values(yd), covariant_derivative(site, d, xv, zd));
}

double codazzi_defect(const Site& site, const Connection& d, const Metric& g, const VectorField& x,
                      const VectorField& y, const VectorField& z) {
  return metric_defect(site, d, g, x, y, z) - metric_defect(site, d, g, y, x, z) -
         metric_apply(site, g, torsion(site, d, x, y), z.value(site));
}

double duality_defect(const Site& site, const Connection& d, const Connection& dstar, const Metric& g,
                      const VectorField& x, const VectorField& y, const VectorField& z) {
  const Eigen::VectorXd zv = z.value(site);
  const VectorXdual xd = x(site);
  const VectorXdual yd = y(site);
  return directional_derivative(site, zv, metric_apply(site, g, xd, yd)) -
         metric_apply(site, g, covariant_derivative(site, d, zv, xd), values(yd)) -
         metric_apply(site, g, values(xd), covariant_derivative(site, dstar, zv, yd));
}

}  // namespace statgeo
