#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "statgeo/dual.hpp"

namespace statgeo {

/// Malformed expression text. `offset` is the byte offset of the problem.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Evaluation outside the validity region: zero divisor or non-positive
/// square-root argument.
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& message, std::string subexpression)
      : std::runtime_error(message + " in '" + subexpression + "'"),
        subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
};

/// Immutable closed-form scalar expression over chart coordinates.
///
/// Nodes are shared; copying an Expr is cheap. Evaluation is templated on the
/// scalar so the same tree yields plain values (double) or values with exact
/// first derivatives (Dual).
class Expr {
 public:
  enum class Kind { Constant, Variable, Negate, Add, Subtract, Multiply, Divide, Power, Sqrt };

  Expr() = default;  // the constant 0

  static Expr constant(double value);
  static Expr variable(int index, std::string name);
  static Expr power(const Expr& base, int exponent);
  static Expr sqrt(const Expr& argument);

  Kind kind() const;
  double constant_value() const;
  int variable_index() const;
  const std::string& variable_name() const;
  int exponent() const;
  /// Operand of unary nodes, left operand of binary nodes.
  const Expr& first() const;
  const Expr& second() const;

  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_constant(double value) const { return is_constant() && constant_value() == value; }

  /// Largest variable index referenced, or -1 for a closed constant.
  int max_variable_index() const;

  std::string to_string() const;

  template <typename Scalar>
  Scalar evaluate(std::span<const Scalar> point) const;

  /// Evaluates at a dense coordinate vector of any scalar type.
  template <typename Derived>
  auto at(const Eigen::MatrixBase<Derived>& point) const {
    using Scalar = typename Derived::Scalar;
    const auto& p = point.derived();
    return evaluate<Scalar>(std::span<const Scalar>(p.data(), static_cast<std::size_t>(p.size())));
  }

  friend Expr operator-(const Expr& a);
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Expr make_node(Kind kind, const Expr& a, const Expr& b);
  [[noreturn]] void throw_domain(const char* what) const;

  std::shared_ptr<const Node> node_;  // null encodes the constant 0
};

struct Expr::Node {
  Kind kind = Kind::Constant;
  double value = 0.0;
  int index = 0;  // variable index or integer exponent
  std::string name;
  Expr a;
  Expr b;
};

/// Parses `text` against the grammar documented in docs/grammar.md. Every
/// identifier other than `sqrt` must be one of `coordinates`; the position in
/// that list becomes the variable index.
Expr parse(std::string_view text, std::span<const std::string> coordinates);

/// Convenience for call sites holding a vector.
inline Expr parse(std::string_view text, const std::vector<std::string>& coordinates) {
  return parse(text, std::span<const std::string>(coordinates.data(), coordinates.size()));
}

/// Replaces every variable `i` with `replacements[i]`.
Expr substitute(const Expr& e, std::span<const Expr> replacements);

template <typename Scalar>
Scalar Expr::evaluate(std::span<const Scalar> point) const {
  if (!node_) return Scalar(0.0);
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Constant:
      return Scalar(n.value);
    case Kind::Variable:
      if (static_cast<std::size_t>(n.index) >= point.size()) {
        throw std::out_of_range("expression variable '" + n.name + "' has no coordinate value");
      }
      return point[static_cast<std::size_t>(n.index)];
    case Kind::Negate:
      return -n.a.evaluate(point);
    case Kind::Add:
      return n.a.evaluate(point) + n.b.evaluate(point);
    case Kind::Subtract:
      return n.a.evaluate(point) - n.b.evaluate(point);
    case Kind::Multiply:
      return n.a.evaluate(point) * n.b.evaluate(point);
    case Kind::Divide: {
      const Scalar den = n.b.evaluate(point);
      if (value_of(den) == 0.0) throw_domain("division by zero");
      return n.a.evaluate(point) / den;
    }
    case Kind::Power: {
      const Scalar base = n.a.evaluate(point);
      const int k = n.index;
      if (k < 0 && value_of(base) == 0.0) throw_domain("negative power of zero");
      Scalar out(1.0);
      for (int i = 0; i < (k < 0 ? -k : k); ++i) out = out * base;
      if (k < 0) out = Scalar(1.0) / out;
      return out;
    }
    case Kind::Sqrt: {
      const Scalar arg = n.a.evaluate(point);
      if (!(value_of(arg) > 0.0)) throw_domain("non-positive square-root argument");
      using std::sqrt;
      return sqrt(arg);
    }
  }
  return Scalar(0.0);
}

}  // namespace statgeo
