#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <Eigen/LU>

#include "statgeo/connection.hpp"
#include "support/builders.hpp"
#include "support/random_expr.hpp"

namespace statgeo {
namespace {

using testing::box_chart;
using testing::exprs_of;
using testing::matrix_of;

const std::vector<std::string> kFive{"x1", "x2", "y1", "y2", "z"};

// Christoffel symbols from finite differences of g, independent of the dual
// number path: 4th-order central stencil on double evaluations.
Christoffel fd_levi_civita(const Metric& g, const Eigen::VectorXd& x) {
  const int n = g.rows();
  const double h = 1e-3;
  std::vector<Eigen::MatrixXd> dg(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[l] = h;
    dg[static_cast<std::size_t>(l)] =
        (-g.at(Eigen::VectorXd(x + 2 * e)) + 8 * g.at(Eigen::VectorXd(x + e)) - 8 * g.at(Eigen::VectorXd(x - e)) +
         g.at(Eigen::VectorXd(x - 2 * e))) /
        (12 * h);
  }
  const Eigen::MatrixXd inv = g.at(x).inverse();
  Christoffel c(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l) {
          s += 0.5 * inv(k, l) *
               (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                dg[static_cast<std::size_t>(l)](i, j));
        }
        c[static_cast<std::size_t>(k)](i, j) = s;
      }
    }
  }
  return c;
}

std::vector<VectorField> polynomial_fields(const std::vector<std::string>& names) {
  return {
      VectorField::from_ambient(exprs_of(names, {"1", "x2", "0", "y1*z", "x1^2"})),
      VectorField::from_ambient(exprs_of(names, {"y2", "0.5", "x1*x2", "-1", "z"})),
      VectorField::from_ambient(exprs_of(names, {"x1 - y1", "z^2", "1", "0", "x2*y2"})),
      VectorField::coordinate(4, 5),
  };
}

TEST(LeviCivita, MatchesFiniteDifferenceKoszulOnTwistedMetric) {
  const Metric g = testing::twisted_metric(kFive);
  const Connection lc = levi_civita(g);
  const auto points = sample_points(box_chart(kFive), 50, 7);
  double worst = 0;
  for (const auto& p : points) worst = std::max(worst, coefficient_distance(lc.evaluate(p), fd_levi_civita(g, p)));
  EXPECT_LT(worst, 1e-7);
}

TEST(LeviCivita, PolarExample) {
  const std::vector<std::string> names{"r", "t"};
  const Metric g = matrix_of(names, {{"1", "0"}, {"0", "r^2"}});
  const Eigen::Vector2d p(2.0, 0.3);
  const Christoffel c = levi_civita(g).evaluate(p);
  EXPECT_NEAR(c[0](1, 1), -2.0, 1e-15);
  EXPECT_NEAR(c[1](0, 1), 0.5, 1e-15);
  EXPECT_NEAR(c[1](1, 0), 0.5, 1e-15);
  EXPECT_NEAR(c[0](0, 0), 0.0, 1e-15);
}

TEST(LeviCivita, SingularMetricNamesPoint) {
  const std::vector<std::string> names{"a", "b"};
  const Metric g = matrix_of(names, {{"a", "0"}, {"0", "1"}});
  try {
    levi_civita(g).evaluate(Eigen::Vector2d(0.0, 0.25));
    FAIL() << "expected SingularMetric";
  } catch (const SingularMetric& e) {
    EXPECT_NE(std::string(e.what()).find("(0, 0.25)"), std::string::npos) << e.what();
  }
}

TEST(LeviCivita, TorsionFreeAndMetricOnTwistedMetric) {
  const Metric g = testing::twisted_metric(kFive);
  const Connection lc = levi_civita(g);
  const Domain domain = Domain::ambient(box_chart(kFive));
  const auto fields = polynomial_fields(kFive);
  for (const auto& p : sample_points(domain.chart, 20, 3)) {
    const Site site(domain, p);
    for (const auto& x : fields) {
      for (const auto& y : fields) {
        EXPECT_LT(torsion(site, lc, x, y).norm(), 1e-10);
        for (const auto& z : fields) EXPECT_LT(std::abs(metric_defect(site, lc, g, x, y, z)), 1e-10);
      }
    }
  }
}

TEST(DualConnection, SelfDualLeviCivitaAndInvolution) {
  const Metric g = testing::twisted_metric(kFive);
  const Connection lc = levi_civita(g);
  // An arbitrary non-metric connection: LC plus a non-symmetric tensor.
  const Connection d = connection_from_difference(
      lc, coefficients_from_entries(5, {{0, 1, 2, parse("x1*y2", kFive)},
                                        {4, 4, 4, parse("1 + z", kFive)},
                                        {2, 3, 0, parse("-y1", kFive)}}));
  const Connection dstar = dual_connection(d, g);
  const Connection dstarstar = dual_connection(dstar, g);
  for (const auto& p : sample_points(box_chart(kFive), 30, 11)) {
    EXPECT_LT(coefficient_distance(dual_connection(lc, g).evaluate(p), lc.evaluate(p)), 1e-12);
    EXPECT_LT(coefficient_distance(dstarstar.evaluate(p), d.evaluate(p)), 1e-10);
  }
  const Domain domain = Domain::ambient(box_chart(kFive));
  const auto fields = polynomial_fields(kFive);
  for (const auto& p : sample_points(domain.chart, 10, 5)) {
    const Site site(domain, p);
    for (const auto& x : fields) {
      for (const auto& y : fields) {
        for (const auto& z : fields) EXPECT_LT(std::abs(duality_defect(site, d, dstar, g, x, y, z)), 1e-10);
      }
    }
  }
}

TEST(DualConnection, TotallySymmetricDifferenceFlipsSign) {
  // Flat metric, K = lambda g(X,nu) g(Y,nu) nu with nu = d_z: dual is nabla - K.
  const Metric g = matrix_of(kFive, {{"-1", "0", "0", "0", "0"},
                                     {"0", "1", "0", "0", "0"},
                                     {"0", "0", "-1", "0", "0"},
                                     {"0", "0", "0", "1", "0"},
                                     {"0", "0", "0", "0", "1"}});
  const Connection lc = levi_civita(g);
  const DifferenceTensor k = coefficients_from_entries(5, {{4, 4, 4, Expr::constant(0.7)}});
  const Connection d = connection_from_difference(lc, k);
  const Connection expected = connection_from_difference(lc, coefficients_from_entries(5, {{4, 4, 4, Expr::constant(-0.7)}}));
  for (const auto& p : sample_points(box_chart(kFive), 10, 1)) {
    EXPECT_LT(coefficient_distance(dual_connection(d, g).evaluate(p), expected.evaluate(p)), 1e-14);
    EXPECT_LT(coefficient_distance(mean_complement(d, lc).evaluate(p), expected.evaluate(p)), 1e-14);
  }
}

TEST(LieBracket, CoordinateExampleAndLeibniz) {
  const std::vector<std::string> names{"a", "b"};
  const Domain domain = Domain::ambient(box_chart(names));
  const VectorField x = VectorField::from_ambient(exprs_of(names, {"0", "a"}));
  const VectorField y = VectorField::coordinate(0, 2);
  const Site site(domain, Eigen::Vector2d(0.3, -0.4));
  // [a d_b, d_a] = -d_b
  EXPECT_LT((lie_bracket(site, x, y) - Eigen::Vector2d(0, -1)).norm(), 1e-15);

  const ScalarField f = [&](const Site& s) { return s.seeded()[0] * s.seeded()[1] + Dual(2.0); };
  const VectorField fy = f * y;
  const Eigen::VectorXd lhs = lie_bracket(site, x, fy);
  const double xf = directional_derivative(site, x.value(site), f(site));
  const Eigen::VectorXd rhs = xf * y.value(site) + f(site).value * lie_bracket(site, x, y);
  EXPECT_LT((lhs - rhs).norm(), 1e-14);
}

TEST(LieBracket, Antisymmetric) {
  const Domain domain = Domain::ambient(box_chart(kFive));
  const auto fields = polynomial_fields(kFive);
  for (const auto& p : sample_points(domain.chart, 20, 9)) {
    const Site site(domain, p);
    for (const auto& x : fields) {
      for (const auto& y : fields) EXPECT_LT((lie_bracket(site, x, y) + lie_bracket(site, y, x)).norm(), 1e-13);
    }
  }
}

TEST(LieBracket, TangentFieldsOnHypersurfaceStayTangent) {
  // Graph x0 = a*b over (a, b) inside R^3.
  const std::vector<std::string> hs{"a", "b"};
  Domain domain{box_chart(hs), exprs_of(hs, {"a*b", "a", "b"}), 3};
  const VectorField ea = VectorField::from_domain(exprs_of(hs, {"b", "1", "0"}));
  const VectorField eb = VectorField::from_domain(exprs_of(hs, {"a", "0", "1"}));
  const VectorField x = VectorField::from_domain(exprs_of(hs, {"b*a^2 + a", "a^2", "1"}));
  for (const auto& p : sample_points(domain.chart, 20, 2)) {
    const Site site(domain, p);
    EXPECT_LT(site.tangency_residual(ea.value(site)), 1e-14);
    EXPECT_LT(site.tangency_residual(x.value(site)), 1e-13);
    EXPECT_LT(site.tangency_residual(lie_bracket(site, x, eb)), 1e-12);
    EXPECT_LT(lie_bracket(site, ea, eb).norm(), 1e-14);
  }
}

TEST(MetricApply, SymmetricAndBilinear) {
  const Metric g = testing::twisted_metric(kFive);
  const Domain domain = Domain::ambient(box_chart(kFive));
  std::mt19937_64 rng(4);
  for (const auto& p : sample_points(domain.chart, 20, 13)) {
    const Site site(domain, p);
    Eigen::VectorXd x(5), y(5), z(5);
    for (int i = 0; i < 5; ++i) {
      x[i] = testing::uniform(rng, -1, 1);
      y[i] = testing::uniform(rng, -1, 1);
      z[i] = testing::uniform(rng, -1, 1);
    }
    const double a = testing::uniform(rng, -2, 2);
    EXPECT_NEAR(metric_apply(site, g, x, y), metric_apply(site, g, y, x), 1e-14);
    EXPECT_NEAR(metric_apply(site, g, Eigen::VectorXd(a * x + z), y),
                a * metric_apply(site, g, x, y) + metric_apply(site, g, z, y), 1e-13);
    EXPECT_EQ(symmetry_defect(g, p).residual, 0.0);
  }
}

TEST(Sampling, DeterministicAndHonoursExclusions) {
  Chart chart = box_chart({"u", "v"}, 2.0);
  chart.exclusions = exprs_of(chart.names, {"u^2 + v^2 - 0.5", "4 - u^2 - v^2"});
  const auto a = sample_points(chart, 200, 99);
  const auto b = sample_points(chart, 200, 99);
  ASSERT_EQ(a.size(), 200u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    const double r2 = a[i].squaredNorm();
    EXPECT_GT(r2, 0.5);
    EXPECT_LT(r2, 4.0);
  }
  EXPECT_NE(sample_points(chart, 1, 98)[0], a[0]);
  EXPECT_EQ(unit_uniform(~0ULL), 1.0 - 0x1.0p-53);
  EXPECT_EQ(unit_uniform(0), 0.0);
}

TEST(Sampling, EmptyRegionThrows) {
  Chart chart = box_chart({"u"});
  chart.exclusions = exprs_of(chart.names, {"-1"});
  EXPECT_THROW(sample_points(chart, 3, 1), std::runtime_error);
}

}  // namespace
}  // namespace statgeo
