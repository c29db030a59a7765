#include "statgeo/contact.hpp"

#include <cmath>

namespace statgeo {

Eigen::MatrixXd ContactStructure::phi_at(const Site& site) const {
  const auto* key = reinterpret_cast<const char*>(&phi) + 1;
  return site.memo<Eigen::MatrixXd>(key, [&] { return Eigen::MatrixXd(phi.at(site.ambient())); });
}

AcmResiduals acm_residuals(const Site& site, const ContactStructure& cs, const Metric& g, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) {
  const Eigen::MatrixXd phi = cs.phi_at(site);
  const Eigen::VectorXd nu = evaluate_all(cs.nu, site.ambient());
  const double eps = cs.epsilon;
  const double eta_x = cs.eta_of(site, x);
  const double eta_y = cs.eta_of(site, y);
  AcmResiduals r;
  r.phi_nu = (phi * nu).norm();
  r.eta_phi = cs.eta_of(site, Eigen::VectorXd(phi * x));
  r.eta_nu = cs.eta_of(site, nu) - eps;
  r.phi_squared = (phi * (phi * x) + x - eta_x * nu).norm();
  r.metric_nu = metric_apply(site, g, x, nu) - eps * eta_x;
  const Eigen::VectorXd px = phi * x;
  const Eigen::VectorXd py = phi * y;
  r.compatibility = metric_apply(site, g, px, py) - metric_apply(site, g, x, y) + eps * eta_x * eta_y;
  return r;
}

double f_structure_residual(const Site& site, const ContactStructure& cs, const Eigen::VectorXd& x) {
  const Eigen::MatrixXd phi = cs.phi_at(site);
  const Eigen::VectorXd px = phi * x;
  return (phi * (phi * px) + px).norm();
}

SasakianResiduals sasakian_residuals(const Site& site, const ContactStructure& cs, const Metric& g,
                                     const Connection& levi_civita, const VectorField& x, const VectorField& y) {
  const Eigen::VectorXd xv = x.value(site);
  const VectorXdual yd = y(site);
  const Eigen::VectorXd yv = values(yd);
  const Eigen::VectorXd nu = cs.nu_field().value(site);
  const VectorXdual phi_y = cs.phi_of(y)(site);
  const Eigen::VectorXd nabla_phi_y =
      covariant_derivative(site, levi_civita, xv, phi_y) - cs.phi_apply(site, covariant_derivative(site, levi_civita, xv, yd));
  SasakianResiduals r;
  r.phi_derivative = (nabla_phi_y - metric_apply(site, g, xv, yv) * nu + cs.epsilon * cs.eta_of(site, yv) * xv).norm();
  r.nu_derivative = (covariant_derivative(site, levi_civita, xv, cs.nu_field()(site)) + cs.phi_apply(site, xv)).norm();
  return r;
}

double k_condition_residual(const Site& site, const ContactStructure& cs, const DifferenceTensor& k,
                            const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return (k.contract(site, x, cs.phi_apply(site, y)) + cs.phi_apply(site, k.contract(site, x, y))).norm();
}

Theorem42Residuals theorem42_residuals(const Site& site, const ContactStructure& cs, const Metric& g,
                                       const Connection& d, const Connection& dstar, const VectorField& x,
                                       const VectorField& y) {
  const Eigen::VectorXd xv = x.value(site);
  const VectorXdual yd = y(site);
  const Eigen::VectorXd yv = values(yd);
  const VectorXdual nud = cs.nu_field()(site);
  const Eigen::VectorXd nu = values(nud);
  const VectorXdual phi_y = cs.phi_of(y)(site);
  const Eigen::VectorXd rhs = metric_apply(site, g, xv, yv) * nu - metric_apply(site, g, yv, nu) * xv;
  Theorem42Residuals r;
  r.th1 = (covariant_derivative(site, d, xv, phi_y) - cs.phi_apply(site, covariant_derivative(site, dstar, xv, yd)) - rhs)
              .norm();
  r.th3 = (covariant_derivative(site, dstar, xv, phi_y) - cs.phi_apply(site, covariant_derivative(site, d, xv, yd)) - rhs)
              .norm();
  const Eigen::VectorXd d_nu = covariant_derivative(site, d, xv, nud);
  r.th2 = (d_nu + cs.phi_apply(site, xv) - metric_apply(site, g, d_nu, nu) * nu).norm();
  return r;
}

}  // namespace statgeo
