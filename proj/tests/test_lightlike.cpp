#include <cmath>

#include <gtest/gtest.h>

#include <Eigen/LU>

#include "statgeo/lightlike.hpp"
#include "support/builders.hpp"

namespace statgeo {
namespace {

using testing::box_chart;
using testing::exprs_of;
using testing::matrix_of;

const std::vector<std::string> kAmbient{"x0", "x1", "x2", "x3"};
const std::vector<std::string> kHyper{"u1", "u2", "u3"};

Metric flat_r42() {
  return matrix_of(kAmbient, {{"-1", "0", "0", "0"}, {"0", "-1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}});
}

// x0 = x2 inside R^4_2 with coordinates (u1, u2, u3) -> (u2, u1, u2, u3).
Domain null_hyperplane() { return Domain{box_chart(kHyper), exprs_of(kHyper, {"u2", "u1", "u2", "u3"}), 4}; }

std::vector<VectorField> null_hyperplane_frame() {
  return {VectorField::coordinate(1, 4), VectorField::from_domain(exprs_of(kHyper, {"1", "0", "1", "0"})),
          VectorField::coordinate(3, 4)};
}

TEST(Radical, NullHyperplaneGenerator) {
  const Metric g = flat_r42();
  const Domain domain = null_hyperplane();
  const Site site(domain, Eigen::Vector3d(0.1, -0.2, 0.3));
  const Eigen::VectorXd n = Eigen::Vector4d(-0.5, 0, 0.5, 0);
  const Radical r = radical(site, g, null_hyperplane_frame(), &n);
  EXPECT_LT((r.generator - Eigen::Vector4d(1, 0, 1, 0)).norm(), 1e-14);
  const Radical unscaled = radical(site, g, null_hyperplane_frame());
  EXPECT_LT((unscaled.generator - Eigen::Vector4d(1, 0, 1, 0) / std::sqrt(2.0)).norm(), 1e-14);
  EXPECT_NEAR(induced_metric(site, g, null_hyperplane_frame()).determinant(), 0.0, 1e-15);
}

TEST(Radical, NondegenerateHypersurfaceIsRejected) {
  const Metric g = flat_r42();
  Domain domain{box_chart(kHyper), exprs_of(kHyper, {"0", "u1", "u2", "u3"}), 4};
  const Site site(domain, Eigen::Vector3d(0.1, 0.2, 0.3));
  const std::vector<VectorField> frame{VectorField::coordinate(1, 4), VectorField::coordinate(2, 4),
                                       VectorField::coordinate(3, 4)};
  try {
    radical(site, g, frame);
    FAIL() << "expected NotLightlike";
  } catch (const NotLightlike& e) {
    EXPECT_EQ(e.singular_values().size(), 3);
    EXPECT_NEAR(e.singular_values().minCoeff(), 1.0, 1e-15);
  }
}

TEST(Radical, TotallyNullPlaneHasNullityTwo) {
  const Metric g = flat_r42();
  const std::vector<std::string> names{"a", "b"};
  Domain domain{box_chart(names), exprs_of(names, {"a", "b", "a", "b"}), 4};
  const Site site(domain, Eigen::Vector2d(0.1, 0.2));
  const std::vector<VectorField> frame{VectorField::from_domain(exprs_of(names, {"1", "0", "1", "0"})),
                                       VectorField::from_domain(exprs_of(names, {"0", "1", "0", "1"}))};
  EXPECT_THROW(radical(site, g, frame), DegeneracyTooHigh);
}

TEST(Transversal, UniqueNullSolution) {
  const Metric g = flat_r42();
  const Domain domain = null_hyperplane();
  const Site site(domain, Eigen::Vector3d(0.4, 0.1, -0.7));
  Eigen::MatrixXd screen(4, 2);
  screen << 0, 0, 1, 0, 0, 0, 0, 1;
  const Eigen::VectorXd n = solve_transversal(site, g, Eigen::Vector4d(1, 0, 1, 0), screen);
  EXPECT_LT((n - Eigen::Vector4d(-0.5, 0, 0.5, 0)).norm(), 1e-14);
}

TEST(Transversal, ProperlyQuadraticCase) {
  // Radical (1,0,1,0) with a screen whose orthogonal complement is not spanned
  // by xi: the quadratic in t is genuinely second order.
  const Metric g = flat_r42();
  const Domain domain = null_hyperplane();
  const Site site(domain, Eigen::Vector3d(0, 0, 0));
  Eigen::MatrixXd screen(4, 2);
  screen << 0, 0, 1, 0, 0, 0, 0, 1;
  screen.col(0) += Eigen::Vector4d(1, 0, 1, 0);  // still spans a complement in TM
  const Eigen::VectorXd xi = Eigen::Vector4d(1, 0, 1, 0);
  const Eigen::VectorXd n = solve_transversal(site, g, xi, screen);
  const Eigen::MatrixXd gv = g.at(Eigen::Vector4d::Zero());
  EXPECT_NEAR(n.dot(gv * n), 0.0, 1e-14);
  EXPECT_NEAR(n.dot(gv * xi), 1.0, 1e-14);
  EXPECT_NEAR(n.dot(gv * screen.col(0)), 0.0, 1e-14);
  EXPECT_NEAR(n.dot(gv * screen.col(1)), 0.0, 1e-14);
}

TEST(Transversal, SingularScreenRejected) {
  const Metric g = flat_r42();
  const Domain domain = null_hyperplane();
  const Site site(domain, Eigen::Vector3d(0, 0, 0));
  Eigen::MatrixXd screen(4, 2);
  screen << 1, 0, 0, 1, 1, 0, 0, 0;  // contains the null generator
  EXPECT_THROW(solve_transversal(site, g, Eigen::Vector4d(1, 0, 1, 0), screen), TransversalError);
}

TEST(InducedObjects, FlatNullHyperplaneIsTotallyGeodesic) {
  const Metric g = flat_r42();
  const Connection lc = levi_civita(g);
  const Domain domain = null_hyperplane();
  const VectorField xi = VectorField::from_domain(exprs_of(kHyper, {"1", "0", "1", "0"}));
  const VectorField n = VectorField::from_domain(exprs_of(kHyper, {"-0.5", "0", "0.5", "0"}));
  const InducedObjects objects(g, lc, xi, n);
  const VectorField y = VectorField::from_domain(exprs_of(kHyper, {"u2*u3", "u1^2", "u2*u3", "u1 - u3"}));
  for (const auto& p : sample_points(domain.chart, 16, 21)) {
    const Site site(domain, p);
    for (int a = 0; a < 3; ++a) {
      const Eigen::VectorXd x = null_hyperplane_frame()[static_cast<std::size_t>(a)].value(site);
      const auto gauss = objects.gauss(site, x, y(site));
      EXPECT_NEAR(gauss.second_form, 0.0, 1e-14);
      EXPECT_LT(site.tangency_residual(gauss.induced), 1e-13);
      EXPECT_LT(objects.weingarten(site, x).shape.norm(), 1e-14);
      const auto screen = objects.screen(site, x, y(site));
      EXPECT_NEAR(objects.theta(site, screen.connection), 0.0, 1e-14);
      const auto rad = objects.radical(site, x);
      EXPECT_LT(rad.shape.norm(), 1e-14);
      EXPECT_NEAR(rad.form, 0.0, 1e-14);
    }
  }
}

TEST(InducedObjects, GaussDecompositionReassembles) {
  // Curved ambient along the same null hyperplane: D~_X Y = D_X Y + B N.
  const Metric g = matrix_of(kAmbient, {{"-1 - x1", "0", "x1/2", "0"},
                                        {"0", "-1", "0", "0"},
                                        {"x1/2", "0", "1", "0"},
                                        {"0", "0", "0", "1 + x3^2"}});
  const Connection lc = levi_civita(g);
  const Domain domain = null_hyperplane();
  const std::vector<VectorField> frame = null_hyperplane_frame();
  const VectorField y = VectorField::from_domain(exprs_of(kHyper, {"u2", "u1*u3", "u2", "1"}));
  for (const auto& p : sample_points(domain.chart, 16, 4)) {
    const Site site(domain, p);
    const Radical r = radical(site, g, frame);
    Eigen::MatrixXd screen(4, 2);
    screen.col(0) = frame[0].value(site);
    screen.col(1) = frame[2].value(site);
    const Eigen::VectorXd n = solve_transversal(site, g, r.generator, screen);
    const VectorField xi([v = r.generator](const Site&) { return VectorXdual(v.cast<Dual>()); });
    const VectorField nf([n](const Site&) { return VectorXdual(n.cast<Dual>()); });
    const InducedObjects objects(g, lc, xi, nf);
    const Eigen::VectorXd x = frame[1].value(site);
    const auto gauss = objects.gauss(site, x, y(site));
    EXPECT_LT((gauss.induced + gauss.second_form * n - gauss.ambient).norm(), 1e-13);
    EXPECT_LT(site.tangency_residual(gauss.induced), 1e-12);
    const auto w = objects.weingarten(site, x);
    EXPECT_LT((-w.shape + w.form * n - w.ambient).norm(), 1e-13);
    EXPECT_LT(site.tangency_residual(w.shape), 1e-12);
  }
}

}  // namespace
}  // namespace statgeo
