#pragma once

#include <cmath>
#include <ostream>

#include <Eigen/Core>

namespace statgeo {

/// Largest number of independent variables a Dual can carry. Fixtures are at
/// most six-dimensional; the slack keeps the gradient a fixed-size block.
inline constexpr int kMaxVariables = 8;

using Gradient = Eigen::Matrix<double, kMaxVariables, 1, Eigen::DontAlign>;

/// Forward-mode dual number: a value together with its first partial
/// derivatives with respect to up to kMaxVariables seeded coordinates.
struct Dual {
  double value = 0.0;
  Gradient partials = Gradient::Zero();

  Dual() = default;
  Dual(double v) : value(v) {}  // NOLINT(google-explicit-constructor)
  Dual(double v, const Gradient& d) : value(v), partials(d) {}

  /// Independent variable number `index` with value v.
  static Dual variable(double v, int index) {
    Dual out(v);
    out.partials[index] = 1.0;
    return out;
  }

  Dual& operator+=(const Dual& o) {
    value += o.value;
    partials += o.partials;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    value -= o.value;
    partials -= o.partials;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    partials = partials * o.value + o.partials * value;
    value *= o.value;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    value /= o.value;
    partials = (partials - o.partials * value) / o.value;
    return *this;
  }
};

inline Dual operator-(const Dual& a) { return Dual(-a.value, -a.partials); }
inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }

inline Dual operator+(Dual a, double b) { a.value += b; return a; }
inline Dual operator+(double a, Dual b) { b.value += a; return b; }
inline Dual operator-(Dual a, double b) { a.value -= b; return a; }
inline Dual operator-(double a, const Dual& b) { return Dual(a - b.value, -b.partials); }
inline Dual operator*(const Dual& a, double b) { return Dual(a.value * b, a.partials * b); }
inline Dual operator*(double a, const Dual& b) { return Dual(a * b.value, b.partials * a); }
inline Dual operator/(const Dual& a, double b) { return Dual(a.value / b, a.partials / b); }
inline Dual operator/(double a, const Dual& b) {
  const double q = a / b.value;
  return Dual(q, b.partials * (-q / b.value));
}

inline bool operator==(const Dual& a, const Dual& b) { return a.value == b.value; }
inline bool operator!=(const Dual& a, const Dual& b) { return a.value != b.value; }
inline bool operator<(const Dual& a, const Dual& b) { return a.value < b.value; }
inline bool operator>(const Dual& a, const Dual& b) { return a.value > b.value; }
inline bool operator<=(const Dual& a, const Dual& b) { return a.value <= b.value; }
inline bool operator>=(const Dual& a, const Dual& b) { return a.value >= b.value; }

inline Dual sqrt(const Dual& a) {
  const double root = std::sqrt(a.value);
  return Dual(root, a.partials * (0.5 / root));
}

inline Dual abs(const Dual& a) { return a.value < 0 ? -a : a; }

inline std::ostream& operator<<(std::ostream& os, const Dual& a) {
  return os << a.value;
}

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.value; }

}  // namespace statgeo

namespace Eigen {

template <>
struct NumTraits<statgeo::Dual> : NumTraits<double> {
  using Real = statgeo::Dual;
  using NonInteger = statgeo::Dual;
  using Nested = statgeo::Dual;
  using Literal = statgeo::Dual;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = statgeo::kMaxVariables + 1,
    AddCost = statgeo::kMaxVariables + 1,
    MulCost = 3 * statgeo::kMaxVariables + 1
  };
};

template <typename BinaryOp>
struct ScalarBinaryOpTraits<statgeo::Dual, double, BinaryOp> {
  using ReturnType = statgeo::Dual;
};

template <typename BinaryOp>
struct ScalarBinaryOpTraits<double, statgeo::Dual, BinaryOp> {
  using ReturnType = statgeo::Dual;
};

}  // namespace Eigen

namespace statgeo {

using VectorXdual = Eigen::Matrix<Dual, Eigen::Dynamic, 1>;
using MatrixXdual = Eigen::Matrix<Dual, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Derived>
Eigen::Matrix<double, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>
values(const Eigen::MatrixBase<Derived>& m) {
  return m.unaryExpr([](const Dual& d) { return d.value; });
}

/// Seeds every coordinate of `point` as an independent variable.
inline VectorXdual seed(const Eigen::VectorXd& point) {
  VectorXdual out(point.size());
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    out[i] = Dual::variable(point[i], static_cast<int>(i));
  }
  return out;
}

}  // namespace statgeo
