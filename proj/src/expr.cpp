#include "statgeo/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

namespace statgeo {

namespace {

constexpr int kMaxNesting = 200;

enum Precedence { kAdditive = 1, kMultiplicative = 2, kUnary = 3, kPower = 4, kAtom = 5 };

}  // namespace

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable(int index, std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->index = index;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::power(const Expr& base, int exponent) {
  if (exponent == 1) return base;
  if (base.is_constant() && (exponent >= 0 || base.constant_value() != 0.0)) {
    return constant(std::pow(base.constant_value(), exponent));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->index = exponent;
  n->a = base;
  return Expr(std::move(n));
}

Expr Expr::sqrt(const Expr& argument) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sqrt;
  n->a = argument;
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_ ? node_->kind : Kind::Constant; }
double Expr::constant_value() const { return node_ ? node_->value : 0.0; }
int Expr::variable_index() const { return node_ ? node_->index : 0; }
int Expr::exponent() const { return node_ ? node_->index : 0; }

const std::string& Expr::variable_name() const {
  static const std::string empty;
  return node_ ? node_->name : empty;
}

const Expr& Expr::first() const {
  static const Expr zero;
  return node_ ? node_->a : zero;
}

const Expr& Expr::second() const {
  static const Expr zero;
  return node_ ? node_->b : zero;
}

int Expr::max_variable_index() const {
  switch (kind()) {
    case Kind::Constant:
      return -1;
    case Kind::Variable:
      return variable_index();
    case Kind::Negate:
    case Kind::Power:
    case Kind::Sqrt:
      return first().max_variable_index();
    default:
      return std::max(first().max_variable_index(), second().max_variable_index());
  }
}

void Expr::throw_domain(const char* what) const { throw DomainError(what, to_string()); }

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.constant_value());
  if (a.kind() == Expr::Kind::Negate) return a.first();
  return Expr::make_node(Expr::Kind::Negate, a, Expr());
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() + b.constant_value());
  return Expr::make_node(Expr::Kind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() - b.constant_value());
  return Expr::make_node(Expr::Kind::Subtract, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr();
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() * b.constant_value());
  return Expr::make_node(Expr::Kind::Multiply, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_constant(1.0)) return a;
  if (a.is_constant() && b.is_constant() && b.constant_value() != 0.0) {
    return Expr::constant(a.constant_value() / b.constant_value());
  }
  return Expr::make_node(Expr::Kind::Divide, a, b);
}

namespace {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return e.constant_value() < 0 || std::signbit(e.constant_value()) ? kUnary : kAtom;
    case Expr::Kind::Variable:
    case Expr::Kind::Sqrt:
      return kAtom;
    case Expr::Kind::Negate:
      return kUnary;
    case Expr::Kind::Add:
    case Expr::Kind::Subtract:
      return kAdditive;
    case Expr::Kind::Multiply:
    case Expr::Kind::Divide:
      return kMultiplicative;
    case Expr::Kind::Power:
      return kPower;
  }
  return kAtom;
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool parens, std::string& out) {
  if (parens) out += '(';
  print(e, out);
  if (parens) out += ')';
}

void print(const Expr& e, std::string& out) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant:
      out += format_number(e.constant_value());
      return;
    case K::Variable:
      out += e.variable_name();
      return;
    case K::Sqrt:
      out += "sqrt(";
      print(e.first(), out);
      out += ')';
      return;
    case K::Negate:
      out += '-';
      print_wrapped(e.first(), precedence(e.first()) <= kUnary, out);
      return;
    case K::Power:
      print_wrapped(e.first(), precedence(e.first()) != kAtom, out);
      out += '^';
      out += std::to_string(e.exponent());
      return;
    default:
      break;
  }
  const int p = precedence(e);
  const char* op = e.kind() == K::Add        ? " + "
                   : e.kind() == K::Subtract ? " - "
                   : e.kind() == K::Multiply ? "*"
                                             : "/";
  print_wrapped(e.first(), precedence(e.first()) < p, out);
  out += op;
  const int rp = precedence(e.second());
  print_wrapped(e.second(), rp <= p || rp == kUnary, out);
}

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {}

  Expr run() {
    skip_space();
    if (pos_ == text_.size()) fail("empty expression");
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    throw ParseError(message, at);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ == text_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxNesting) parser.fail("expression nested too deeply");
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  Expr expression() {
    DepthGuard guard(*this);
    Expr e = term();
    for (;;) {
      if (accept('+')) {
        e = e + term();
      } else if (accept('-')) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) {
        e = e * unary();
      } else if (accept('/')) {
        e = e / unary();
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    DepthGuard guard(*this);
    if (accept('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail_at("expected integer exponent", start);
    int k = 0;
    auto res = std::from_chars(text_.data() + digits, text_.data() + pos_, k);
    if (res.ec != std::errc() || k > 64) fail_at("exponent out of range", start);
    return Expr::power(base, negative ? -k : k);
  }

  Expr primary() {
    skip_space();
    if (pos_ == text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - from;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) fail_at("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail_at("malformed number exponent", start);
    }
    double v = 0.0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_ || !std::isfinite(v)) {
      fail_at("number out of range", start);
    }
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "sqrt") {
      expect('(');
      Expr arg = expression();
      expect(')');
      return Expr::sqrt(arg);
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return Expr::variable(static_cast<int>(i), std::string(name));
    }
    fail_at("unknown coordinate '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

Expr Expr::make_node(Kind kind, const Expr& a, const Expr& b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->a = a;
  n->b = b;
  return Expr(std::move(n));
}

std::string Expr::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

Expr parse(std::string_view text, std::span<const std::string> coordinates) {
  return Parser(text, coordinates).run();
}

Expr substitute(const Expr& e, std::span<const Expr> replacements) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant:
      return e;
    case K::Variable: {
      const auto i = static_cast<std::size_t>(e.variable_index());
      if (i >= replacements.size()) throw std::out_of_range("substitute: no replacement for " + e.variable_name());
      return replacements[i];
    }
    case K::Negate:
      return -substitute(e.first(), replacements);
    case K::Add:
      return substitute(e.first(), replacements) + substitute(e.second(), replacements);
    case K::Subtract:
      return substitute(e.first(), replacements) - substitute(e.second(), replacements);
    case K::Multiply:
      return substitute(e.first(), replacements) * substitute(e.second(), replacements);
    case K::Divide:
      return substitute(e.first(), replacements) / substitute(e.second(), replacements);
    case K::Power:
      return Expr::power(substitute(e.first(), replacements), e.exponent());
    case K::Sqrt:
      return Expr::sqrt(substitute(e.first(), replacements));
  }
  return e;
}

}  // namespace statgeo
