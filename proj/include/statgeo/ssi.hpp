#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "statgeo/fixtures.hpp"

namespace statgeo {

class NotScreenSemiInvariant : public std::runtime_error {
 public:
  explicit NotScreenSemiInvariant(const std::string& what) : std::runtime_error(what) {}
};

/// Screen semi-invariant data of a lightlike hypersurface tangent to nu:
///
///   U = -phi N,  W = -phi xi,  u(X) = g(X, W),  w(X) = g(X, U),
///   phi X = phi~(X - u(X) U)   (the induced tensor, tangent valued).
///
/// Holds a reference to the model, which must outlive it.
class SsiStructure {
 public:
  explicit SsiStructure(const Model& model);

  const Model& model() const { return *model_; }
  const VectorField& u_field() const { return u_; }
  const VectorField& w_field() const { return w_; }
  const VectorField& nu() const { return nu_; }
  /// phi~ applied to xi and N, before the sign flip.
  const VectorField& phi_xi() const { return phi_xi_; }
  const VectorField& phi_n() const { return phi_n_; }

  double u(const Site& site, const Eigen::VectorXd& x) const;
  Dual u(const Site& site, const VectorXdual& x) const;
  double w(const Site& site, const Eigen::VectorXd& x) const;

  /// phi~ at the site's image, with partials.
  const MatrixXdual& ambient_phi(const Site& site) const;
  Eigen::VectorXd phi(const Site& site, const Eigen::VectorXd& x) const;
  VectorXdual phi(const Site& site, const VectorXdual& x) const;
  /// Induced phi of a field, as a field.
  VectorField phi_of(const VectorField& x) const;

  /// Basis (columns) of L0: tangent vectors g-orthogonal to N, U, W and nu,
  /// taken as the SVD null space of those constraints on the declared frame.
  /// Deterministic for a given frame. Empty for 5-dim ambients.
  Eigen::MatrixXd l0_basis(const Site& site) const;

 private:
  const Model* model_;
  VectorField nu_, phi_xi_, phi_n_, u_, w_;
};

/// Checks the screen semi-invariant hypothesis at `points` seeded samples and
/// throws NotScreenSemiInvariant naming the point and residual on failure.
/// Requires a contact structure and a hypersurface; nu must be tangent.
SsiStructure build_ssi(const Model& model, double tolerance = 1e-8, int points = 20,
                       std::uint64_t seed = 20240901);

}  // namespace statgeo
