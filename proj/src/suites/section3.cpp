#include <algorithm>
#include <cmath>

#include "support.hpp"

namespace statgeo::detail {

namespace {

constexpr const char* kAmb = "ambient";
constexpr const char* kHyp = "hypersurface";

Christoffel mean(const Christoffel& a, const Christoffel& b) {
  Christoffel out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = 0.5 * (a[k] + b[k]);
  return out;
}

void ambient_rows(RowBook& book, const Model& model, const RunConfig& config) {
  const Metric& g = model.g;
  const std::vector<VectorField> fields = ambient_fields(model, config.seed);
  const Connection dual_of_dual = dual_connection(model.dstar, g);
  const Connection lc_dual = dual_connection(model.levi_civita, g);
  const Connection roundtrip = connection_from_difference(model.levi_civita, model.k);
  const std::string pre = "section3.ambient.";

  for (const auto& p : sample_points(model.ambient.chart, config.points, ambient_seed(config))) {
    const Site site(model.ambient, p);
    const FieldValues f(site, fields);
    const std::size_t n = f.size();
    const Christoffel& d = model.d.at(site);
    const Christoffel& lc = model.levi_civita.at(site);

    book.row(pre + "dual_involution", "(D*)* = D").add(coefficient_distance(dual_of_dual.at(site), d), p);
    book.row(pre + "levi_civita_self_dual", "(nabla)* = nabla").add(coefficient_distance(lc_dual.at(site), lc), p);
    book.row(pre + "mean_connection", "(D + D*)/2 = nabla")
        .add(coefficient_distance(mean(d, model.dstar.at(site)), lc), p);
    book.row(pre + "difference_roundtrip", "nabla + (D - nabla) = D")
        .add(coefficient_distance(roundtrip.at(site), d), p);

    auto& dual_law = book.row(pre + "dual_law", "Z g(X,Y) = g(D_Z X, Y) + g(X, D*_Z Y)");
    auto& codazzi = book.row(pre + "codazzi", "(D_X g)(Y,Z) - (D_Y g)(X,Z) = g(T(X,Y), Z)");
    auto& statistical = book.row(pre + "statistical", "T = 0 and (D_X g)(Y,Z) = (D_Y g)(X,Z)");
    auto& metric = book.row(pre + "metric_defect", "(D_X g)(Y,Z)", kAmb, Expectation::ReportOnly,
                            "nonzero for every connection other than nabla");
    auto& lc_metric = book.row(pre + "levi_civita_metric", "(nabla_X g)(Y,Z) = 0");
    auto& self_adjoint = book.row(pre + "difference_self_adjoint", "g(K(X,Y), Z) = g(Y, K(X,Z))");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Eigen::VectorXd kxy = model.k.contract(site, f.value[i], f.value[j]);
        for (std::size_t l = 0; l < n; ++l) {
          dual_law.add(std::abs(duality_defect(site, model.d, model.dstar, g, fields[j], fields[l], fields[i])), p);
          const double c = std::abs(codazzi_defect(site, model.d, g, fields[i], fields[j], fields[l]));
          codazzi.add(c, p);
          statistical.add(c, p);
          metric.add(std::abs(metric_defect(site, model.d, g, fields[i], fields[j], fields[l])), p);
          lc_metric.add(std::abs(metric_defect(site, model.levi_civita, g, fields[i], fields[j], fields[l])), p);
          const Eigen::VectorXd kxz = model.k.contract(site, f.value[i], f.value[l]);
          self_adjoint.add(std::abs(metric_apply(site, g, kxy, f.value[l]) - metric_apply(site, g, f.value[j], kxz)),
                           p);
        }
      }
    }

    auto& torsion_row = book.row(pre + "torsion", "T^D(X,Y) = 0");
    auto& dual_torsion = book.row(pre + "dual_torsion", "T^{D*}(X,Y) = 0");
    auto& lc_torsion = book.row(pre + "levi_civita_torsion", "T^nabla(X,Y) = 0");
    auto& symmetric = book.row(pre + "difference_symmetric", "K(X,Y) = K(Y,X)");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double t = torsion(site, model.d, fields[i], fields[j]).norm();
        torsion_row.add(t, p);
        statistical.add(t, p);
        dual_torsion.add(torsion(site, model.dstar, fields[i], fields[j]).norm(), p);
        lc_torsion.add(torsion(site, model.levi_civita, fields[i], fields[j]).norm(), p);
        symmetric.add((model.k.contract(site, f.value[i], f.value[j]) -
                       model.k.contract(site, f.value[j], f.value[i]))
                          .norm(),
                      p);
      }
    }
    book.end_point();
  }

  book.pass_if(pre + "dual_torsion", {pre + "statistical"});
  book.pass_if(pre + "mean_connection", {pre + "torsion", pre + "dual_torsion"});
  book.pass_if(pre + "difference_symmetric", {pre + "torsion"});
  book.pass_if(pre + "difference_self_adjoint", {pre + "statistical"});
}

void hypersurface_rows(RowBook& book, const Model& model, const RunConfig& config) {
  const Hypersurface& h = *model.hypersurface;
  const Metric& g = model.g;
  const std::vector<VectorField> fields = tangent_fields(model, config.seed);
  const std::size_t n = fields.size();
  const InducedObjects primal(g, model.d, h.xi, h.transversal);
  const InducedObjects dual(g, model.dstar, h.xi, h.transversal);
  const std::string pre = "section3.hypersurface.";

  for (const auto& p : sample_points(h.domain.chart, config.points, hypersurface_seed(config))) {
    const Site site(h.domain, p);
    const FieldValues f(site, fields);
    const InducedAtPoint a(site, primal, f);
    const InducedAtPoint s(site, dual, f);
    const Eigen::VectorXd& xi = f.value[0];
    const Eigen::VectorXd nv = h.transversal.value(site);
    std::vector<double> theta(n);
    std::vector<Eigen::VectorXd> screen_part(n);
    for (std::size_t i = 0; i < n; ++i) {
      theta[i] = metric_apply(site, g, f.value[i], nv);
      screen_part[i] = f.value[i] - theta[i] * xi;
    }

    auto& forms = book.row(pre + "duality_with_forms",
                           "X g(Y,Z) = g(D_X Y, Z) + g(Y, D*_X Z) + B(X,Y) theta(Z) + B*(X,Z) theta(Y)", kHyp);
    auto& defect = book.row(pre + "duality_defect", "X g(Y,Z) - g(D_X Y, Z) - g(Y, D*_X Z)", kHyp,
                            Expectation::ReportOnly, "induced connections need not be dual");
    auto& sum = book.row(pre + "metric_sum",
                         "(D_X g)(Y,Z) + (D*_X g)(Y,Z) = B(X,Y) theta(Z) + B(X,Z) theta(Y) + B*(X,Y) theta(Z) + "
                         "B*(X,Z) theta(Y)",
                         kHyp);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Dual gyz = metric_apply(site, g, f.dual[j], f.dual[k]);
        for (std::size_t i = 0; i < n; ++i) {
          const double xg = directional_derivative(site, f.value[i], gyz);
          const double dual_part = xg - metric_apply(site, g, a.d[i][j], f.value[k]) -
                                   metric_apply(site, g, f.value[j], s.d[i][k]);
          defect.add(std::abs(dual_part), p);
          forms.add(std::abs(dual_part - a.b[i][j] * theta[k] - s.b[i][k] * theta[j]), p);
          const double dg = xg - metric_apply(site, g, a.d[i][j], f.value[k]) -
                            metric_apply(site, g, f.value[j], a.d[i][k]);
          const double dsg = xg - metric_apply(site, g, s.d[i][j], f.value[k]) -
                             metric_apply(site, g, f.value[j], s.d[i][k]);
          sum.add(std::abs(dg + dsg - a.b[i][j] * theta[k] - a.b[i][k] * theta[j] - s.b[i][j] * theta[k] -
                           s.b[i][k] * theta[j]),
                  p);
        }
      }
    }

    auto& torsion_row = book.row(pre + "torsion", "T^D~(X,Y) = 0 along M", kHyp);
    auto& dual_torsion = book.row(pre + "dual_torsion", "T^D~*(X,Y) = 0 along M", kHyp);
    auto& induced_torsion = book.row(pre + "induced_torsion", "T^D(X,Y) = 0", kHyp);
    auto& induced_dual_torsion = book.row(pre + "induced_dual_torsion", "T^{D*}(X,Y) = 0", kHyp);
    auto& symmetric = book.row(pre + "second_form_symmetric", "B(X,Y) = B(Y,X)", kHyp);
    auto& dual_symmetric = book.row(pre + "dual_second_form_symmetric", "B*(X,Y) = B*(Y,X)", kHyp);
    auto& screen = book.row(pre + "screen_form_via_dual_shape", "C(X,PY) = g(A*_N X, PY)", kHyp);
    auto& dual_screen = book.row(pre + "dual_screen_form_via_shape", "C*(X,PY) = g(A_N X, PY)", kHyp);
    auto& seven = book.row(pre + "second_form_via_dual_radical_shape",
                           "B(X,Y) = g(Abar*_xi X, Y) - B*(X,xi) theta(Y)", kHyp);
    auto& eight = book.row(pre + "dual_second_form_via_radical_shape",
                           "B*(X,Y) = g(Abar_xi X, Y) - B(X,xi) theta(Y)", kHyp);
    auto& seven_printed = book.row(pre + "second_form_via_dual_radical_shape.printed_sign",
                                   "B(X,Y) = g(Abar*_xi X, Y) + B*(X,xi) theta(Y)", kHyp);
    auto& eight_printed = book.row(pre + "dual_second_form_via_radical_shape.printed_sign",
                                   "B*(X,Y) = g(Abar_xi X, Y) + B(X,xi) theta(Y)", kHyp);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Eigen::VectorXd bracket = lie_bracket(site, fields[i], fields[j]);
        const Eigen::VectorXd t = a.d[i][j] - a.d[j][i] - bracket;
        const Eigen::VectorXd ts = s.d[i][j] - s.d[j][i] - bracket;
        induced_torsion.add(t.norm(), p);
        induced_dual_torsion.add(ts.norm(), p);
        torsion_row.add((t + (a.b[i][j] - a.b[j][i]) * nv).norm(), p);
        dual_torsion.add((ts + (s.b[i][j] - s.b[j][i]) * nv).norm(), p);
        symmetric.add(std::abs(a.b[i][j] - a.b[j][i]), p);
        dual_symmetric.add(std::abs(s.b[i][j] - s.b[j][i]), p);
        screen.add(std::abs(a.c[i][j] - metric_apply(site, g, s.shape_n[i], screen_part[j])), p);
        dual_screen.add(std::abs(s.c[i][j] - metric_apply(site, g, a.shape_n[i], screen_part[j])), p);
        const double g7 = metric_apply(site, g, s.radical_shape[i], f.value[j]);
        const double g8 = metric_apply(site, g, a.radical_shape[i], f.value[j]);
        seven.add(std::abs(a.b[i][j] - g7 + s.b_xi[i] * theta[j]), p);
        eight.add(std::abs(s.b[i][j] - g8 + a.b_xi[i] * theta[j]), p);
        seven_printed.add(std::abs(a.b[i][j] - g7 - s.b_xi[i] * theta[j]), p);
        eight_printed.add(std::abs(s.b[i][j] - g8 - a.b_xi[i] * theta[j]), p);
      }
    }

    auto& b_sum = book.row(pre + "radical_second_form_sum", "B(X,xi) + B*(X,xi) = 0", kHyp);
    auto& shape_sum = book.row(pre + "transversal_shape_sum", "g(A_N X + A*_N X, N) = 0", kHyp);
    auto& b_xi = book.row(pre + "second_form_on_radical", "|B(X,xi)| (hypothesis gauge)", kHyp,
                          Expectation::ReportOnly);
    auto& bs_xi = book.row(pre + "dual_second_form_on_radical", "|B*(X,xi)| (hypothesis gauge)", kHyp,
                           Expectation::ReportOnly);
    auto& tau_gap = book.row(pre + "tau_difference", "|tau(X) - tau*(X)| (hypothesis gauge)", kHyp,
                             Expectation::ReportOnly);
    auto& form = book.row(pre + "radical_form", "theta(D_X xi) = -tau(X)", kHyp);
    auto& dual_form = book.row(pre + "radical_form_dual", "theta(D*_X xi) = -tau*(X)", kHyp);
    auto& mixed = book.row(pre + "radical_form_mixed", "theta(D_X xi) = -tau*(X)", kHyp);
    auto& mixed_dual = book.row(pre + "radical_form_mixed_dual", "theta(D*_X xi) = -tau(X)", kHyp);
    for (std::size_t i = 0; i < n; ++i) {
      b_sum.add(std::abs(a.b_xi[i] + s.b_xi[i]), p);
      shape_sum.add(std::abs(metric_apply(site, g, Eigen::VectorXd(a.shape_n[i] + s.shape_n[i]), nv)), p);
      b_xi.add(std::abs(a.b_xi[i]), p);
      bs_xi.add(std::abs(s.b_xi[i]), p);
      tau_gap.add(std::abs(a.tau[i] - s.tau[i]), p);
      form.add(std::abs(a.radical_theta[i] + a.tau[i]), p);
      dual_form.add(std::abs(s.radical_theta[i] + s.tau[i]), p);
      mixed.add(std::abs(a.radical_theta[i] + s.tau[i]), p);
      mixed_dual.add(std::abs(s.radical_theta[i] + a.tau[i]), p);
    }
    book.row(pre + "radical_shape_sum", "Abar*_xi xi + Abar_xi xi = 0", kHyp)
        .add((s.radical_shape[0] + a.radical_shape[0]).norm(), p);
    book.end_point();
  }

  book.pass_if(pre + "torsion", {"section3.ambient.torsion"});
  book.pass_if(pre + "dual_torsion", {"section3.ambient.dual_torsion"});
  book.pass_if(pre + "induced_torsion", {pre + "torsion"});
  book.pass_if(pre + "induced_dual_torsion", {pre + "dual_torsion"});
  book.pass_if(pre + "second_form_symmetric", {pre + "torsion"});
  book.pass_if(pre + "dual_second_form_symmetric", {pre + "dual_torsion"});
  book.pass_if(pre + "radical_shape_sum", {pre + "second_form_symmetric", pre + "dual_second_form_symmetric"});
  book.pass_if(pre + "radical_form", {pre + "tau_difference"});
  book.pass_if(pre + "radical_form_dual", {pre + "tau_difference"});
  book.pass_if(pre + "second_form_via_dual_radical_shape.printed_sign", {pre + "dual_second_form_on_radical"});
  book.pass_if(pre + "dual_second_form_via_radical_shape.printed_sign", {pre + "second_form_on_radical"});
}

}  // namespace

void section3_suite(const Model& model, const RunConfig& config, CheckReport& report) {
  RowBook book(model, "section3", config.tolerance);
  ambient_rows(book, model, config);
  if (model.hypersurface) hypersurface_rows(book, model, config);
  book.emit(report);
}

}  // namespace statgeo::detail
