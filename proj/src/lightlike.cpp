#include "statgeo/lightlike.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace statgeo {

namespace {

std::string vector_string(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ']';
  return os.str();
}

}  // namespace

std::vector<VectorField> Hypersurface::adapted_frame() const {
  std::vector<VectorField> out{xi};
  out.insert(out.end(), screen.begin(), screen.end());
  return out;
}

Eigen::MatrixXd frame_matrix(const Site& site, const std::vector<VectorField>& fields) {
  Eigen::MatrixXd f(site.ambient_dimension(), static_cast<Eigen::Index>(fields.size()));
  for (std::size_t a = 0; a < fields.size(); ++a) f.col(static_cast<Eigen::Index>(a)) = fields[a].value(site);
  return f;
}

Eigen::MatrixXd induced_metric(const Site& site, const Metric& g, const std::vector<VectorField>& frame) {
  const Eigen::MatrixXd f = frame_matrix(site, frame);
  const Eigen::MatrixXd gv = values(metric_at(site, g));
  return f.transpose() * gv * f;
}

Radical radical(const Site& site, const Metric& g, const std::vector<VectorField>& frame, const Eigen::VectorXd* n,
                double threshold) {
  const Eigen::MatrixXd f = frame_matrix(site, frame);
  const Eigen::MatrixXd gv = values(metric_at(site, g));
  const Eigen::MatrixXd gram = f.transpose() * gv * f;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double scale = std::max(1.0, sv[0]);
  int deficiency = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) deficiency += sv[i] < threshold * scale ? 1 : 0;
  if (deficiency == 0) throw NotLightlike("induced metric is nondegenerate; singular values " + vector_string(sv), sv);
  if (deficiency > 1) {
    throw DegeneracyTooHigh("induced metric has nullity " + std::to_string(deficiency) + "; singular values " +
                                vector_string(sv),
                            sv);
  }
  Eigen::VectorXd generator = f * svd.matrixV().col(sv.size() - 1);
  double pairing = 0.0;
  if (n != nullptr) pairing = generator.dot(gv * *n);
  if (n != nullptr && std::abs(pairing) > threshold) {
    generator /= pairing;
  } else {
    generator.normalize();
    for (Eigen::Index i = 0; i < generator.size(); ++i) {
      if (std::abs(generator[i]) > threshold) {
        if (generator[i] < 0) generator = -generator;
        break;
      }
    }
  }
  return {generator, sv};
}

Eigen::VectorXd solve_transversal(const Site& site, const Metric& g, const Eigen::VectorXd& xi,
                                  const Eigen::MatrixXd& screen, double threshold) {
  const Eigen::MatrixXd gv = values(metric_at(site, g));
  const Eigen::MatrixXd screen_gram = screen.transpose() * gv * screen;
  if (screen.cols() > 0 && std::abs(screen_gram.determinant()) < threshold) {
    throw TransversalError("screen Gram matrix is singular (|det| = " +
                           std::to_string(std::abs(screen_gram.determinant())) + ")");
  }
  const Eigen::Index n = xi.size();
  // Linear constraints g(N, xi) = 1, g(N, W_a) = 0.
  Eigen::MatrixXd a(screen.cols() + 1, n);
  a.row(0) = (gv * xi).transpose();
  for (Eigen::Index c = 0; c < screen.cols(); ++c) a.row(c + 1) = (gv * screen.col(c)).transpose();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(a.rows());
  b[0] = 1.0;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (lu.rank() != a.rows()) throw TransversalError("transversal constraints are dependent");
  const Eigen::VectorXd particular = a.completeOrthogonalDecomposition().solve(b);
  const Eigen::MatrixXd kernel = lu.kernel();
  if (kernel.cols() != 1) throw TransversalError("transversal constraints do not cut out a line");
  const Eigen::VectorXd v = kernel.col(0);
  // Quadratic g(P + t V, P + t V) = 0 in t.
  const double qa = v.dot(gv * v);
  const double qb = 2.0 * particular.dot(gv * v);
  const double qc = particular.dot(gv * particular);
  double t = 0.0;
  if (std::abs(qa) < threshold * std::max(1.0, v.squaredNorm())) {
    if (std::abs(qb) < threshold) {
      throw TransversalError("no null transversal: quadratic " + std::to_string(qa) + " t^2 + " + std::to_string(qb) +
                             " t + " + std::to_string(qc) + " is degenerate");
    }
    t = -qc / qb;
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) {
      throw TransversalError("no real null transversal: quadratic " + std::to_string(qa) + " t^2 + " +
                             std::to_string(qb) + " t + " + std::to_string(qc) + " has negative discriminant");
    }
    const double r = std::sqrt(disc);
    const double t1 = (-qb + r) / (2.0 * qa);
    const double t2 = (-qb - r) / (2.0 * qa);
    t = std::abs(t1) <= std::abs(t2) ? t1 : t2;
  }
  return particular + t * v;
}

double sine_between(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  // Rejection norm rather than sqrt(1 - cos^2), which loses half the digits.
  const Eigen::VectorXd ua = a / na;
  const Eigen::VectorXd ub = b / nb;
  return std::min(1.0, (ua - ua.dot(ub) * ub).norm());
}

double InducedObjects::theta(const Site& site, const Eigen::VectorXd& x) const {
  return metric_apply(site, *g_, x, n_.value(site));
}

Dual InducedObjects::theta(const Site& site, const VectorXdual& x) const {
  return metric_apply(site, *g_, x, n_(site));
}

Eigen::VectorXd InducedObjects::project(const Site& site, const Eigen::VectorXd& x) const {
  return x - theta(site, x) * xi_.value(site);
}

VectorXdual InducedObjects::project(const Site& site, const VectorXdual& x) const {
  const VectorXdual xi = xi_(site);
  return x - xi * theta(site, x);
}

InducedObjects::Gauss InducedObjects::gauss(const Site& site, const Eigen::VectorXd& x, const VectorXdual& y) const {
  Gauss out;
  out.ambient = covariant_derivative(site, ambient_, x, y);
  out.second_form = metric_apply(site, *g_, out.ambient, xi_.value(site));
  out.induced = out.ambient - out.second_form * n_.value(site);
  return out;
}

InducedObjects::Weingarten InducedObjects::shape(const Site& site, const Eigen::VectorXd& x,
                                                 const VectorXdual& v) const {
  Weingarten out;
  out.ambient = covariant_derivative(site, ambient_, x, v);
  out.form = metric_apply(site, *g_, out.ambient, xi_.value(site));
  out.shape = -(out.ambient - out.form * n_.value(site));
  return out;
}

InducedObjects::Weingarten InducedObjects::weingarten(const Site& site, const Eigen::VectorXd& x) const {
  return shape(site, x, n_(site));
}

InducedObjects::ScreenPart InducedObjects::screen(const Site& site, const Eigen::VectorXd& x,
                                                  const VectorXdual& y) const {
  const Eigen::VectorXd dpy = gauss(site, x, project(site, y)).induced;
  return {project(site, dpy), theta(site, dpy)};
}

InducedObjects::RadicalPart InducedObjects::radical(const Site& site, const Eigen::VectorXd& x) const {
  const Eigen::VectorXd dxi = gauss(site, x, xi_(site)).induced;
  return {-project(site, dxi), theta(site, dxi)};
}

}  // namespace statgeo
