#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "statgeo/expr.hpp"
#include "support/random_expr.hpp"

using statgeo::DomainError;
using statgeo::Dual;
using statgeo::Expr;
using statgeo::ParseError;
using statgeo::parse;

namespace {

const std::vector<std::string> kNames = {"x0", "x1", "x2", "x3"};

double eval(const Expr& e, std::vector<double> p) {
  return e.evaluate<double>(std::span<const double>(p.data(), p.size()));
}

Dual eval_dual(const Expr& e, std::vector<double> p) {
  Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
  return e.at(statgeo::seed(v));
}

}  // namespace

TEST(ExprParse, SqrtOfSumOfSquaresHasExpectedShape) {
  const Expr f = parse("sqrt(x2^2 + x3^2)", kNames);
  ASSERT_EQ(f.kind(), Expr::Kind::Sqrt);
  const Expr& sum = f.first();
  ASSERT_EQ(sum.kind(), Expr::Kind::Add);
  ASSERT_EQ(sum.first().kind(), Expr::Kind::Power);
  EXPECT_EQ(sum.first().exponent(), 2);
  EXPECT_EQ(sum.first().first().variable_name(), "x2");
  ASSERT_EQ(sum.second().kind(), Expr::Kind::Power);
  EXPECT_EQ(sum.second().first().variable_index(), 3);
}

TEST(ExprParse, ZeroIsConstant) {
  const Expr z = parse("0", kNames);
  EXPECT_TRUE(z.is_constant(0.0));
  EXPECT_EQ(eval(z, {0.3, -1, 2, 5}), 0.0);
}

TEST(ExprParse, CancellingPolynomialMatchesDirectEvaluation) {
  const Expr e = parse("x1*(x1+1) - x1^2 - x1", kNames);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const double x1 = statgeo::testing::uniform(rng, -10, 10);
    const double direct = x1 * (x1 + 1) - x1 * x1 - x1;
    EXPECT_NEAR(eval(e, {0, x1, 0, 0}), direct, 1e-12);
    EXPECT_NEAR(eval(e, {0, x1, 0, 0}), 0.0, 1e-12);
  }
}

TEST(ExprParse, PrecedenceAndAssociativity) {
  EXPECT_EQ(eval(parse("1 - 2 - 3", kNames), {}), -4.0);
  EXPECT_EQ(eval(parse("8 / 4 / 2", kNames), {}), 1.0);
  EXPECT_EQ(eval(parse("-x0^2", kNames), {3, 0, 0, 0}), -9.0);
  EXPECT_EQ(eval(parse("(-x0)^2", kNames), {3, 0, 0, 0}), 9.0);
  EXPECT_EQ(eval(parse("2*x0^-1", kNames), {4, 0, 0, 0}), 0.5);
  EXPECT_EQ(eval(parse("1.5e1 + .5", kNames), {}), 15.5);
  EXPECT_EQ(eval(parse("x0 - -x1", kNames), {1, 2, 0, 0}), 3.0);
}

TEST(ExprParse, SyntaxErrorsReportByteOffset) {
  auto offset_of = [](const std::string& text) -> std::size_t {
    try {
      parse(text, kNames);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::string::npos;
  };
  EXPECT_EQ(offset_of("x0 + * x1"), 5u);
  EXPECT_EQ(offset_of("(x0 + 1"), 7u);
  EXPECT_EQ(offset_of("x0 x1"), 3u);
  EXPECT_EQ(offset_of(""), 0u);
  EXPECT_EQ(offset_of("x0^1.5"), 4u);
  EXPECT_EQ(offset_of("sqrt x0"), 5u);
}

TEST(ExprParse, UnknownCoordinateIsNamed) {
  try {
    parse("x0 + y7", kNames);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 5u);
    EXPECT_NE(std::string(e.what()).find("unknown coordinate 'y7'"), std::string::npos);
  }
}

TEST(ExprEval, ExampleValues) {
  const Expr f = parse("sqrt(x2^2 + x3^2)", kNames);
  EXPECT_EQ(eval(f, {0, 0, 1, 0}), 1.0);
  EXPECT_EQ(eval(f, {0, 0, 3, 4}), 5.0);
  EXPECT_EQ(eval(parse("0", kNames), {1, 2, 3, 4}), 0.0);
}

TEST(ExprEval, DomainErrorNamesSubexpression) {
  const Expr e = parse("x0 + 1/(x1 - 1)", kNames);
  try {
    eval(e, {0, 1, 0, 0});
    FAIL() << "expected DomainError";
  } catch (const DomainError& err) {
    EXPECT_EQ(err.subexpression(), "1/(x1 - 1)");
  }
  const Expr r = parse("2*sqrt(x2^2 + x3^2)", kNames);
  try {
    eval(r, {0, 0, 0, 0});
    FAIL() << "expected DomainError";
  } catch (const DomainError& err) {
    EXPECT_EQ(err.subexpression(), "sqrt(x2^2 + x3^2)");
  }
  EXPECT_THROW(eval(parse("x0^-2", kNames), {0, 0, 0, 0}), DomainError);
}

TEST(ExprDual, ExamplePartials) {
  const Expr f = parse("sqrt(x2^2 + x3^2)", kNames);
  const Dual d = eval_dual(f, {0, 0, 1, 0});
  EXPECT_EQ(d.value, 1.0);
  EXPECT_NEAR(d.partials[2], 1.0, 1e-15);
  const Eigen::VectorXd p = (Eigen::VectorXd(4) << 0, 0, 1, 0).finished();
  EXPECT_NEAR(d.partials[2], statgeo::testing::central_difference(f, p, 2, 1.0), 1e-6);

  const Dual c = eval_dual(parse("7.25", kNames), {1, 2, 3, 4});
  EXPECT_TRUE(c.partials.isZero(0.0));

  const Dual prod = eval_dual(parse("x1*x2", kNames), {0, 2, 3, 0});
  EXPECT_EQ(prod.partials[1], 3.0);
  EXPECT_EQ(prod.partials[2], 2.0);
}

TEST(ExprDual, PrimalMatchesPlainEvaluation) {
  statgeo::testing::RandomExprGenerator gen(kNames, 11);
  for (int i = 0; i < 500; ++i) {
    const Expr e = gen.next();
    const Eigen::VectorXd p = gen.point();
    EXPECT_EQ(e.at(statgeo::seed(p)).value, e.at(p)) << e.to_string();
  }
}

TEST(ExprDual, MatchesFiniteDifferencesOn1000Cases) {
  const auto summary = statgeo::testing::ad_versus_fd(1000, 42);
  EXPECT_EQ(summary.cases, 1000);
  EXPECT_LT(summary.max_relative_error, 1e-6);
}

TEST(ExprPrint, CanonicalForms) {
  EXPECT_EQ(parse("sqrt(x2^2+x3^2)", kNames).to_string(), "sqrt(x2^2 + x3^2)");
  EXPECT_EQ(parse("x0-(x1-x2)", kNames).to_string(), "x0 - (x1 - x2)");
  EXPECT_EQ(parse("(x0-x1)-x2", kNames).to_string(), "x0 - x1 - x2");
  EXPECT_EQ(parse("x0*(-x1)", kNames).to_string(), "x0*(-x1)");
  EXPECT_EQ(parse("-(x0*x1)", kNames).to_string(), "-(x0*x1)");
  EXPECT_EQ(parse("(x0*x1)^3", kNames).to_string(), "(x0*x1)^3");
  EXPECT_EQ(parse("0.25*x0", kNames).to_string(), "0.25*x0");
  EXPECT_EQ(parse("x0 + (-2)", kNames).to_string(), "x0 + (-2)");
}

TEST(ExprPrint, RoundTripIsFixedPoint) {
  statgeo::testing::RandomExprGenerator gen(kNames, 3);
  for (int i = 0; i < 2000; ++i) {
    const std::string once = gen.next(5).to_string();
    const std::string twice = parse(once, kNames).to_string();
    const std::string thrice = parse(twice, kNames).to_string();
    ASSERT_EQ(twice, thrice) << once;
  }
}

TEST(ExprParse, FuzzedInputNeverCrashes) {
  statgeo::testing::RandomExprGenerator gen(kNames, 99);
  std::mt19937_64& rng = gen.rng();
  const std::string alphabet = "x0123+-*/^().e sqrtyz";
  int accepted = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string s = gen.next(3).to_string();
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < edits; ++k) {
      const std::size_t at = s.empty() ? 0 : rng() % (s.size() + 1);
      switch (rng() % 3) {
        case 0:
          s.insert(s.begin() + static_cast<std::ptrdiff_t>(at), alphabet[rng() % alphabet.size()]);
          break;
        case 1:
          if (at < s.size()) s.erase(at, 1);
          break;
        default:
          if (at < s.size()) s[at] = alphabet[rng() % alphabet.size()];
          break;
      }
    }
    try {
      const Expr e = parse(s, kNames);
      ++accepted;
      const std::string p = e.to_string();
      ASSERT_EQ(parse(p, kNames).to_string(), p) << s;
    } catch (const ParseError& err) {
      ASSERT_LE(err.offset(), s.size()) << s;
    }
  }
  EXPECT_GT(accepted, 0);
}

TEST(ExprParse, DeepNestingIsRejected) {
  EXPECT_THROW(parse(std::string(5000, '(') + "x0" + std::string(5000, ')'), kNames), ParseError);
  EXPECT_THROW(parse(std::string(5000, '-') + "x0", kNames), ParseError);
}

TEST(ExprSubstitute, ComposesWithReplacements) {
  const Expr e = parse("x0*x1 + sqrt(x0)", kNames);
  const std::vector<std::string> uv = {"u", "v"};
  const std::vector<Expr> repl = {parse("u^2 + 1", uv), parse("v - u", uv), Expr(), Expr()};
  const Expr s = statgeo::substitute(e, repl);
  const double u = 0.7, v = -1.2;
  EXPECT_NEAR(eval(s, {u, v}), (u * u + 1) * (v - u) + std::sqrt(u * u + 1), 1e-14);
}
