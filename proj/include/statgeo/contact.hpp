#pragma once

#include <vector>

#include <Eigen/Core>

#include "statgeo/connection.hpp"
#include "statgeo/geometry.hpp"

namespace statgeo {

/// Almost contact metric data (phi, nu, eta, epsilon) on the ambient chart.
/// Nothing is assumed: every defining relation is measured by the residual
/// functions below. Fields built by phi_of capture `this`, so the structure
/// must outlive them and must not move.
struct ContactStructure {
  Tensor11 phi;
  std::vector<Expr> nu;
  std::vector<Expr> eta;
  int epsilon = 1;

  VectorField nu_field() const { return VectorField::from_ambient(nu); }
  /// phi applied to a field, with partials.
  VectorField phi_of(const VectorField& x) const { return apply(phi, x); }
  Eigen::MatrixXd phi_at(const Site& site) const;
  Eigen::VectorXd phi_apply(const Site& site, const Eigen::VectorXd& x) const { return phi_at(site) * x; }
  double eta_of(const Site& site, const Eigen::VectorXd& x) const { return apply(site, eta, x); }
  Dual eta_of(const Site& site, const VectorXdual& x) const { return apply(site, eta, x); }
};

/// The six defining relations of an almost contact metric structure at one
/// point for one pair (X, Y). Vector residuals are Euclidean norms.
struct AcmResiduals {
  double phi_nu = 0;         // |phi nu|
  double eta_phi = 0;        // eta(phi X)
  double eta_nu = 0;         // eta(nu) - epsilon
  double phi_squared = 0;    // |phi^2 X + X - eta(X) nu|
  double metric_nu = 0;      // g(X, nu) - epsilon eta(X)
  double compatibility = 0;  // g(phi X, phi Y) - g(X, Y) + epsilon eta(X) eta(Y)
};
AcmResiduals acm_residuals(const Site& site, const ContactStructure& cs, const Metric& g, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y);

/// |phi^3 X + phi X|.
double f_structure_residual(const Site& site, const ContactStructure& cs, const Eigen::VectorXd& x);

struct SasakianResiduals {
  double phi_derivative = 0;  // |(nabla_X phi) Y - g(X,Y) nu + epsilon eta(Y) X|
  double nu_derivative = 0;   // |nabla_X nu + phi X|
};
/// Levi-Civita relations of an indefinite Sasakian structure.
SasakianResiduals sasakian_residuals(const Site& site, const ContactStructure& cs, const Metric& g,
                                     const Connection& levi_civita, const VectorField& x, const VectorField& y);

/// |K(X, phi Y) + phi K(X, Y)|.
double k_condition_residual(const Site& site, const ContactStructure& cs, const DifferenceTensor& k,
                            const Eigen::VectorXd& x, const Eigen::VectorXd& y);

struct Theorem42Residuals {
  double th1 = 0;  // |D_X phi Y - phi D*_X Y - g(X,Y) nu + g(Y,nu) X|
  double th2 = 0;  // |D_X nu + phi X - g(D_X nu, nu) nu|
  double th3 = 0;  // |D*_X phi Y - phi D_X Y - g(X,Y) nu + g(Y,nu) X|
};
Theorem42Residuals theorem42_residuals(const Site& site, const ContactStructure& cs, const Metric& g,
                                       const Connection& d, const Connection& dstar, const VectorField& x,
                                       const VectorField& y);

}  // namespace statgeo
