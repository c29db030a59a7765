#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/QR>

#include "statgeo/dual.hpp"
#include "statgeo/expr.hpp"

namespace statgeo {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Single global chart. A point is admitted iff it lies in the box and every
/// exclusion expression is strictly positive there.
struct Chart {
  std::vector<std::string> names;
  std::vector<Interval> box;
  std::vector<Expr> exclusions;

  int dimension() const { return static_cast<int>(names.size()); }
  bool admits(const Eigen::VectorXd& p) const;
};

/// Uniform in [0,1) from the top 53 bits; identical on every platform.
double unit_uniform(std::uint64_t bits);

/// `count` admitted points drawn uniformly from the chart box by rejection.
/// Throws std::runtime_error when the admitted fraction is too small.
std::vector<Eigen::VectorXd> sample_points(const Chart& chart, int count, std::uint64_t seed);

/// Dense matrix of expressions, evaluated entrywise.
class ExprMatrix {
 public:
  ExprMatrix() = default;
  ExprMatrix(int rows, int cols) : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows * cols)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Expr& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Expr& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }

  template <typename Derived>
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> at(
      const Eigen::MatrixBase<Derived>& x) const {
    using Scalar = typename Derived::Scalar;
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> p = x;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(rows_, cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).at(p);
    }
    return out;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Expr> entries_;
};

/// Column of expressions: vector field or one-form components.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> evaluate_all(
    const std::vector<Expr>& components, const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> p = x;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(static_cast<Eigen::Index>(components.size()));
  for (std::size_t i = 0; i < components.size(); ++i) out[static_cast<Eigen::Index>(i)] = components[i].at(p);
  return out;
}

/// Semi-Riemannian metric g_ij on the ambient chart.
using Metric = ExprMatrix;

/// (1,1)-tensor T^i_j on the ambient chart; T(X)^i = T^i_j X^j.
using Tensor11 = ExprMatrix;

/// Bilinear pairing X^T g Y for any scalar type.
template <typename G, typename X, typename Y>
auto inner(const Eigen::MatrixBase<G>& g, const Eigen::MatrixBase<X>& x, const Eigen::MatrixBase<Y>& y) {
  return (x.transpose() * g * y).value();
}

/// Where fields live: either the ambient chart itself, or a parametrized
/// hypersurface whose embedding gives ambient coordinates as expressions in
/// its own coordinates.
struct Domain {
  Chart chart;
  std::vector<Expr> embedding;
  int ambient_dimension = 0;

  bool is_ambient() const { return embedding.empty(); }
  static Domain ambient(Chart chart);
};

/// One evaluation point of a domain together with per-point caches.
///
/// Dual numbers seeded here carry partials with respect to the domain
/// coordinates. Ambient vectors are expressed in ambient components and are
/// lifted to domain coordinates through the embedding Jacobian.
class Site {
 public:
  Site(const Domain& domain, const Eigen::VectorXd& coords);

  const Domain& domain() const { return *domain_; }
  int dimension() const { return static_cast<int>(coords_.size()); }
  int ambient_dimension() const { return static_cast<int>(ambient_.size()); }
  const Eigen::VectorXd& coords() const { return coords_; }
  const VectorXdual& seeded() const { return seeded_; }
  /// Ambient image with partials along the domain coordinates.
  const VectorXdual& image() const { return image_; }
  const Eigen::VectorXd& ambient() const { return ambient_; }
  const Eigen::MatrixXd& jacobian() const { return jacobian_; }

  /// Domain components of an ambient tangent vector (least squares).
  Eigen::VectorXd lift(const Eigen::VectorXd& x) const;
  /// Euclidean norm of the part of x outside the image of the Jacobian.
  double tangency_residual(const Eigen::VectorXd& x) const;

  /// Per-point memo keyed by object identity.
  template <typename T, typename F>
  const T& memo(const void* key, F&& compute) const {
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, std::make_shared<T>(compute())).first;
    }
    return *static_cast<const T*>(it->second.get());
  }

 private:
  const Domain* domain_;
  Eigen::VectorXd coords_;
  VectorXdual seeded_;
  VectorXdual image_;
  Eigen::VectorXd ambient_;
  Eigen::MatrixXd jacobian_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
  mutable std::map<const void*, std::shared_ptr<void>> cache_;
};

/// Partials of a dual scalar with respect to the site's domain coordinates.
Eigen::VectorXd gradient(const Site& site, const Dual& s);

/// Directional derivative X(s) = sum_a Xhat^a d_a s.
double directional_derivative(const Site& site, const Eigen::VectorXd& x, const Dual& s);

/// Componentwise directional derivative X(Y^k).
Eigen::VectorXd directional_derivative(const Site& site, const Eigen::VectorXd& x, const VectorXdual& y);

using ScalarField = std::function<Dual(const Site&)>;

/// Vector field in ambient components, evaluated with partials along the
/// domain coordinates.
class VectorField {
 public:
  using Evaluator = std::function<VectorXdual(const Site&)>;

  VectorField() = default;
  explicit VectorField(Evaluator f) : f_(std::move(f)) {}

  /// Components given as expressions in the domain coordinates.
  static VectorField from_domain(std::vector<Expr> components);
  /// Components given as expressions in the ambient coordinates.
  static VectorField from_ambient(std::vector<Expr> components);
  /// Coordinate field d_i of the ambient chart.
  static VectorField coordinate(int i, int ambient_dimension);
  static VectorField zero(int ambient_dimension);

  VectorXdual operator()(const Site& site) const { return f_(site); }
  Eigen::VectorXd value(const Site& site) const { return values(f_(site)); }
  explicit operator bool() const { return static_cast<bool>(f_); }

 private:
  Evaluator f_;
};

VectorField operator+(const VectorField& x, const VectorField& y);
VectorField operator-(const VectorField& x, const VectorField& y);
VectorField operator*(double c, const VectorField& x);
VectorField operator*(const ScalarField& f, const VectorField& x);

/// Tensor applied to a field, T(X) with T in ambient coordinates.
VectorField apply(const Tensor11& t, const VectorField& x);

/// Lie bracket [X,Y]^k = X(Y^k) - Y(X^k). Both fields must be tangent.
Eigen::VectorXd lie_bracket(const Site& site, const VectorField& x, const VectorField& y);

/// Metric evaluated at the site's ambient image, with domain partials.
const MatrixXdual& metric_at(const Site& site, const Metric& g);

/// g(X,Y) as a dual scalar.
Dual metric_apply(const Site& site, const Metric& g, const VectorXdual& x, const VectorXdual& y);
double metric_apply(const Site& site, const Metric& g, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// One-form in ambient coordinates applied to a vector.
Dual apply(const Site& site, const std::vector<Expr>& form, const VectorXdual& x);
double apply(const Site& site, const std::vector<Expr>& form, const Eigen::VectorXd& x);

/// Metric symmetry: max |g_ij - g_ji| at a point, with the worst (i,j).
struct SymmetryDefect {
  double residual = 0.0;
  int i = 0;
  int j = 0;
};
SymmetryDefect symmetry_defect(const Metric& g, const Eigen::VectorXd& x);

}  // namespace statgeo
