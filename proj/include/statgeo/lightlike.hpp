#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "statgeo/connection.hpp"
#include "statgeo/geometry.hpp"

namespace statgeo {

/// Parametrized hypersurface with an analytic tangent frame and screen
/// decomposition. All fields are ambient components over hypersurface
/// coordinates.
struct Hypersurface {
  Domain domain;
  std::vector<VectorField> frame;
  VectorField xi;
  VectorField transversal;
  std::vector<VectorField> screen;

  /// Frame of TM used by the suites: xi followed by the screen frame.
  std::vector<VectorField> adapted_frame() const;
};

class LightlikeError : public std::runtime_error {
 public:
  LightlikeError(const std::string& what, Eigen::VectorXd singular_values = {})
      : std::runtime_error(what), singular_values_(std::move(singular_values)) {}
  const Eigen::VectorXd& singular_values() const { return singular_values_; }

 private:
  Eigen::VectorXd singular_values_;
};

/// Induced metric is nondegenerate.
class NotLightlike : public LightlikeError {
  using LightlikeError::LightlikeError;
};

/// Induced metric has nullity two or more.
class DegeneracyTooHigh : public LightlikeError {
  using LightlikeError::LightlikeError;
};

/// Screen Gram matrix is singular, or the transversal constraints have no
/// real solution.
class TransversalError : public LightlikeError {
  using LightlikeError::LightlikeError;
};

/// Columns are the ambient components of the given fields.
Eigen::MatrixXd frame_matrix(const Site& site, const std::vector<VectorField>& fields);

/// Gram matrix g(F_a, F_b) of a frame.
Eigen::MatrixXd induced_metric(const Site& site, const Metric& g, const std::vector<VectorField>& frame);

struct Radical {
  Eigen::VectorXd generator;        // ambient components
  Eigen::VectorXd singular_values;  // of the induced metric, descending
};

/// Null direction of the induced metric. Scaled to g(generator, n) = 1 when
/// `n` is non-null, otherwise to unit Euclidean norm with the first nonzero
/// component positive. Throws NotLightlike or DegeneracyTooHigh.
Radical radical(const Site& site, const Metric& g, const std::vector<VectorField>& frame,
                const Eigen::VectorXd* n = nullptr, double threshold = 1e-8);

/// The unique null N with g(N, xi) = 1 and g(N, W_a) = 0 for the columns of
/// `screen`. Throws TransversalError.
Eigen::VectorXd solve_transversal(const Site& site, const Metric& g, const Eigen::VectorXd& xi,
                                  const Eigen::MatrixXd& screen, double threshold = kDegeneracyThreshold);

/// |sin| of the angle between two vectors in the Euclidean coordinate sense.
double sine_between(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Gauss-Weingarten package of one ambient connection along a lightlike
/// hypersurface with screen decomposition (xi, N).
///
///   D~_X Y = D_X Y + B(X,Y) N          B(X,Y) = g(D~_X Y, xi)
///   D~_X N = -A_N X + tau(X) N         tau(X) = g(D~_X N, xi)
///   D_X PY = nabla_X PY + C(X,PY) xi   C(X,PY) = theta(D_X PY)
///   D_X xi = -Abar_xi X + theta(D_X xi) xi
///
/// theta(X) = g(X, N), P X = X - theta(X) xi.
class InducedObjects {
 public:
  InducedObjects(const Metric& g, Connection ambient, VectorField xi, VectorField n)
      : g_(&g), ambient_(std::move(ambient)), xi_(std::move(xi)), n_(std::move(n)) {}

  const Connection& ambient() const { return ambient_; }
  const VectorField& xi() const { return xi_; }
  const VectorField& transversal() const { return n_; }

  double theta(const Site& site, const Eigen::VectorXd& x) const;
  Dual theta(const Site& site, const VectorXdual& x) const;
  Eigen::VectorXd project(const Site& site, const Eigen::VectorXd& x) const;
  VectorXdual project(const Site& site, const VectorXdual& x) const;

  struct Gauss {
    Eigen::VectorXd induced;  // D_X Y
    double second_form = 0;   // B(X,Y)
    Eigen::VectorXd ambient;  // D~_X Y
  };
  Gauss gauss(const Site& site, const Eigen::VectorXd& x, const VectorXdual& y) const;

  struct Weingarten {
    Eigen::VectorXd shape;    // A_V X
    double form = 0;          // tau_V(X), the N-component of D~_X V
    Eigen::VectorXd ambient;  // D~_X V
  };
  /// Decomposition of D~_X N.
  Weingarten weingarten(const Site& site, const Eigen::VectorXd& x) const;
  /// Same decomposition for an arbitrary field V: D~_X V = -A_V X + tau_V(X) N.
  Weingarten shape(const Site& site, const Eigen::VectorXd& x, const VectorXdual& v) const;

  struct ScreenPart {
    Eigen::VectorXd connection;  // nabla_X PY
    double form = 0;             // C(X,PY)
  };
  ScreenPart screen(const Site& site, const Eigen::VectorXd& x, const VectorXdual& y) const;

  struct RadicalPart {
    Eigen::VectorXd shape;  // Abar_xi X
    double form = 0;        // theta(D_X xi)
  };
  RadicalPart radical(const Site& site, const Eigen::VectorXd& x) const;

 private:
  const Metric* g_;
  Connection ambient_;
  VectorField xi_;
  VectorField n_;
};

}  // namespace statgeo
