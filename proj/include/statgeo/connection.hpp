#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "statgeo/geometry.hpp"

namespace statgeo {

/// Coordinate coefficients indexed as gamma[k](i, j) for Gamma^k_ij.
using Christoffel = std::vector<Eigen::MatrixXd>;

/// Raised when |det g| falls below the degeneracy threshold.
class SingularMetric : public std::runtime_error {
 public:
  explicit SingularMetric(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kDegeneracyThreshold = 1e-10;

/// Field of (1,2)-coefficients on the ambient chart, evaluated per point.
/// Shared by affine connections and difference tensors.
class CoefficientField {
 public:
  using Evaluator = std::function<Christoffel(const Eigen::VectorXd& x)>;

  CoefficientField() = default;
  CoefficientField(int dimension, Evaluator f, std::string name = {})
      : impl_(std::make_shared<const Impl>(Impl{dimension, std::move(f), std::move(name)})) {}

  int dimension() const { return impl_->dimension; }
  const std::string& name() const { return impl_->name; }
  Christoffel evaluate(const Eigen::VectorXd& x) const { return impl_->f(x); }
  /// Coefficients at the site's ambient image, memoised per site. The memo
  /// holds the implementation alive so its address is never reused as a key.
  const Christoffel& at(const Site& site) const {
    return site.memo<Memo>(impl_.get(), [&] { return Memo{impl_, impl_->f(site.ambient())}; }).coefficients;
  }
  /// Contraction C^k_ij x^i y^j.
  Eigen::VectorXd contract(const Site& site, const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  explicit operator bool() const { return static_cast<bool>(impl_); }

 private:
  struct Impl {
    int dimension;
    Evaluator f;
    std::string name;
  };
  struct Memo {
    std::shared_ptr<const Impl> owner;
    Christoffel coefficients;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Affine connection D with (D_X Y)^k = X(Y^k) + Gamma^k_ij X^i Y^j.
using Connection = CoefficientField;

/// K = D - nabla, K(X,Y)^k = K^k_ij X^i Y^j.
using DifferenceTensor = CoefficientField;

/// Coefficients given as n^3 expressions ordered [k][i][j].
CoefficientField coefficients_from_exprs(int n, std::vector<Expr> entries, std::string name = {});

/// Sparse expression entries; all others vanish.
struct CoefficientEntry {
  int k = 0;
  int i = 0;
  int j = 0;
  Expr value;
};
CoefficientField coefficients_from_entries(int n, std::vector<CoefficientEntry> entries, std::string name = {});

/// Levi-Civita connection of g via the Koszul formula, with metric
/// derivatives from dual-number evaluation. Throws SingularMetric.
Connection levi_civita(const Metric& g, double threshold = kDegeneracyThreshold);

/// Unique D* with Z g(X,Y) = g(D_Z X, Y) + g(X, D*_Z Y). Throws SingularMetric.
Connection dual_connection(const Connection& d, const Metric& g, double threshold = kDegeneracyThreshold);

/// D - nabla.
DifferenceTensor difference_tensor(const Connection& d, const Connection& nabla);

/// nabla + K.
Connection connection_from_difference(const Connection& nabla, const DifferenceTensor& k);

/// 2 nabla - D, the connection whose mean with D is nabla.
Connection mean_complement(const Connection& d, const Connection& nabla);

/// Largest coefficient difference at x.
double coefficient_distance(const Christoffel& a, const Christoffel& b);

/// D_X Y for tangent X (ambient components) and Y with domain partials.
Eigen::VectorXd covariant_derivative(const Site& site, const Connection& d, const Eigen::VectorXd& x,
                                     const VectorXdual& y);
Eigen::VectorXd covariant_derivative(const Site& site, const Connection& d, const VectorField& x,
                                     const VectorField& y);

/// T(X,Y) = D_X Y - D_Y X - [X,Y].
Eigen::VectorXd torsion(const Site& site, const Connection& d, const VectorField& x, const VectorField& y);

/// (D_X g)(Y,Z) = X g(Y,Z) - g(D_X Y, Z) - g(Y, D_X Z).
double metric_defect(const Site& site, const Connection& d, const Metric& g, const VectorField& x,
                     const VectorField& y, const VectorField& z);

/// (D_X g)(Y,Z) - (D_Y g)(X,Z) - g(T(X,Y), Z).
double codazzi_defect(const Site& site, const Connection& d, const Metric& g, const VectorField& x,
                      const VectorField& y, const VectorField& z);

/// Z g(X,Y) - g(D_Z X, Y) - g(X, D*_Z Y).
double duality_defect(const Site& site, const Connection& d, const Connection& dstar, const Metric& g,
                      const VectorField& x, const VectorField& y, const VectorField& z);

}  // namespace statgeo
