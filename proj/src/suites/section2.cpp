#include <algorithm>
#include <cmath>
#include <limits>

#include "support.hpp"

namespace statgeo::detail {

namespace {

constexpr const char* kHyp = "hypersurface";

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

// Null-frame contract of the declared hypersurface at one point.
void frame_rows(RowBook& book, const Model& model, const Site& site) {
  const Hypersurface& h = *model.hypersurface;
  const Metric& g = model.g;
  const Eigen::VectorXd& p = site.coords();
  const Eigen::VectorXd xi = h.xi.value(site);
  const Eigen::VectorXd nv = h.transversal.value(site);

  double null = std::max({std::abs(metric_apply(site, g, xi, xi)), std::abs(metric_apply(site, g, nv, nv)),
                          std::abs(metric_apply(site, g, xi, nv) - 1.0)});
  double tangency = site.tangency_residual(xi);
  for (const auto& w : h.screen) {
    const Eigen::VectorXd wv = w.value(site);
    null = std::max({null, std::abs(metric_apply(site, g, xi, wv)), std::abs(metric_apply(site, g, nv, wv))});
    tangency = std::max(tangency, site.tangency_residual(wv));
  }
  for (const auto& f : h.frame) tangency = std::max(tangency, site.tangency_residual(f.value(site)));
  book.row("section2.frame.null_conditions",
           "g(xi,xi) = g(N,N) = g(xi,W) = g(N,W) = 0, g(xi,N) = 1", kHyp)
      .add(null, p);
  book.row("section2.frame.frame_tangency", "frame, xi and screen fields are tangent", kHyp).add(tangency, p);

  auto& rank = book.row("section2.frame.radical_rank_deficiency", "nullity of the induced metric = 1", kHyp);
  auto& direction = book.row("section2.frame.radical_direction", "radical generator is collinear with xi", kHyp);
  try {
    const Radical r = radical(site, g, h.frame, &nv);
    rank.add(0.0, p);
    direction.add(sine_between(r.generator, xi), p);
  } catch (const LightlikeError& e) {
    const Eigen::VectorXd& sv = e.singular_values();
    int nullity = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) nullity += sv[i] < 1e-8 * std::max(1.0, sv[0]) ? 1 : 0;
    rank.add(std::abs(nullity - 1.0), p);
    direction.add(nan(), p);
  }

  auto& transversal = book.row("section2.frame.transversal_solution", "solved N = declared N", kHyp);
  try {
    transversal.add((solve_transversal(site, g, xi, frame_matrix(site, h.screen)) - nv).norm(), p);
  } catch (const LightlikeError&) {
    transversal.add(nan(), p);
  }
}

}  // namespace

void section2_suite(const Model& model, const RunConfig& config, CheckReport& report) {
  const Hypersurface& h = *model.hypersurface;
  const Metric& g = model.g;
  RowBook book(model, "section2", config.tolerance);
  const std::vector<VectorField> fields = tangent_fields(model, config.seed);
  const std::size_t n = fields.size();

  struct Named {
    std::string key;
    InducedObjects induced;
  };
  std::vector<Named> connections;
  connections.push_back({"levi_civita", InducedObjects(g, model.levi_civita, h.xi, h.transversal)});
  connections.push_back({"d", InducedObjects(g, model.d, h.xi, h.transversal)});
  connections.push_back({"dual", InducedObjects(g, model.dstar, h.xi, h.transversal)});

  for (const auto& p : sample_points(h.domain.chart, config.points, hypersurface_seed(config))) {
    const Site site(h.domain, p);
    const FieldValues f(site, fields);
    const Eigen::VectorXd& xi = f.value[0];
    const Eigen::VectorXd nv = h.transversal.value(site);
    std::vector<double> theta(n);
    std::vector<Eigen::VectorXd> screen_part(n);
    for (std::size_t i = 0; i < n; ++i) {
      theta[i] = metric_apply(site, g, f.value[i], nv);
      screen_part[i] = f.value[i] - theta[i] * xi;
    }
    std::vector<std::vector<Dual>> gram(n, std::vector<Dual>(n));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) gram[j][k] = metric_apply(site, g, f.dual[j], f.dual[k]);
    }

    for (const auto& [key, induced] : connections) {
      const InducedAtPoint ia(site, induced, f);
      const std::string pre = "section2." + key + ".";

      auto& metric = book.row(pre + "induced_metric_derivative",
                              "(D_X g)(Y,Z) = B(X,Y) theta(Z) + B(X,Z) theta(Y)", kHyp);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t k = 0; k < n; ++k) {
            const double r = directional_derivative(site, f.value[i], gram[j][k]) -
                             metric_apply(site, g, ia.d[i][j], f.value[k]) -
                             metric_apply(site, g, f.value[j], ia.d[i][k]) - ia.b[i][j] * theta[k] -
                             ia.b[i][k] * theta[j];
            metric.add(std::abs(r), p);
          }
        }
      }

      // A*_xi X := -D_X xi - tau(X) xi, the radical shape operator of the pair.
      std::vector<Eigen::VectorXd> radical_shape(n);
      for (std::size_t i = 0; i < n; ++i) radical_shape[i] = -ia.d_xi[i] - ia.tau[i] * xi;

      auto& screen = book.row(pre + "radical_shape_screen", "g(A*_xi X, PY) = B(X, PY)", kHyp);
      auto& on_radical = book.row(pre + "second_form_on_radical", "B(X, xi) = 0", kHyp);
      auto& shape_theta = book.row(pre + "radical_shape_theta", "g(A*_xi X, N) = 0", kHyp);
      auto& n_theta = book.row(pre + "transversal_shape_theta", "g(A_N X, N) = 0", kHyp);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          screen.add(std::abs(metric_apply(site, g, radical_shape[i], screen_part[j]) - ia.b_screen[i][j]), p);
        }
        on_radical.add(std::abs(ia.b_xi[i]), p);
        shape_theta.add(std::abs(metric_apply(site, g, radical_shape[i], nv)), p);
        n_theta.add(std::abs(metric_apply(site, g, ia.shape_n[i], nv)), p);
      }
      book.row(pre + "radical_shape_on_radical", "A*_xi xi = 0", kHyp).add(radical_shape[0].norm(), p);
      book.row(pre + "gauss_tangency", "D_X Y = D~_X Y - B(X,Y) N is tangent", kHyp).add(ia.gauss_tangency, p);
      book.row(pre + "weingarten_tangency", "A_N X = tau(X) N - D~_X N is tangent", kHyp)
          .add(ia.weingarten_tangency, p);
      if (key != "levi_civita") {
        book.row(pre + "distance_to_levi_civita", "max |Gamma - Gamma_LC| (hypothesis gauge)", kHyp,
                 Expectation::ReportOnly)
            .add(coefficient_distance(induced.ambient().at(site), model.levi_civita.at(site)), p);
      }
    }
    frame_rows(book, model, site);
    book.end_point();
  }

  // The identities are stated for the Levi-Civita connection; for D and D*
  // they are expected only when the connection coincides with it.
  for (const char* key : {"d", "dual"}) {
    const std::string pre = std::string("section2.") + key + ".";
    for (const char* id : {"induced_metric_derivative", "radical_shape_screen", "second_form_on_radical",
                           "radical_shape_theta", "transversal_shape_theta", "radical_shape_on_radical"}) {
      book.pass_if(pre + id, {pre + "distance_to_levi_civita"});
    }
  }
  book.emit(report);
}

}  // namespace statgeo::detail
