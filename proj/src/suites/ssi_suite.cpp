#include <algorithm>
#include <cmath>

#include "statgeo/ssi.hpp"
#include "support.hpp"

namespace statgeo::detail {

namespace {

constexpr const char* kHyp = "hypersurface";
constexpr auto kReport = Expectation::ReportOnly;

const std::vector<std::string> kGates{"ssi.ambient.theorem42", "ssi.ambient.acm"};
const std::vector<std::string> kTorsionGates{"ssi.ambient.theorem42", "ssi.ambient.acm", "ssi.ambient.torsion"};

// The ambient package gauges. The identities below are derived from the
// Sasakian statistical conditions, so they are expected only where these hold.
void gate_rows(RowBook& book, const Model& model, const RunConfig& config) {
  const ContactStructure& cs = *model.contact;
  const int n = model.ambient.ambient_dimension;
  std::vector<VectorField> frame;
  for (int i = 0; i < n; ++i) frame.push_back(VectorField::coordinate(i, n));
  for (const auto& p : sample_points(model.ambient.chart, config.points, ambient_seed(config))) {
    const Site site(model.ambient, p);
    auto& theorem = book.row("ssi.ambient.theorem42", "ambient D_X phi Y - phi D*_X Y = g(X,Y) nu - g(Y,nu) X, "
                                                      "D_X nu = -phi X + g(D_X nu, nu) nu and dual form (gauge)",
                             "ambient", kReport);
    auto& acm = book.row("ssi.ambient.acm", "ambient almost contact metric relations (gauge)", "ambient", kReport);
    auto& torsion_row = book.row("ssi.ambient.torsion", "max(|T^D|, |T^{D*}|) (gauge)", "ambient", kReport);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const auto& x = frame[static_cast<std::size_t>(i)];
        const auto& y = frame[static_cast<std::size_t>(j)];
        const Theorem42Residuals th = theorem42_residuals(site, cs, model.g, model.d, model.dstar, x, y);
        theorem.add(std::max({th.th1, th.th2, th.th3}), p);
        const AcmResiduals r = acm_residuals(site, cs, model.g, x.value(site), y.value(site));
        acm.add(std::max({r.phi_nu, std::abs(r.eta_phi), std::abs(r.eta_nu), r.phi_squared, std::abs(r.metric_nu),
                          std::abs(r.compatibility)}),
                p);
        torsion_row.add(std::max(torsion(site, model.d, x, y).norm(), torsion(site, model.dstar, x, y).norm()), p);
      }
    }
    book.end_point();
  }
}

// Site-local helpers shared by the hypersurface rows.
struct Local {
  const Site& site;
  const Metric& g;
  const SsiStructure& ssi;

  double metric(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return metric_apply(site, g, x, y); }
  Eigen::VectorXd phi(const Eigen::VectorXd& x) const { return ssi.phi(site, x); }
  double u(const Eigen::VectorXd& x) const { return ssi.u(site, x); }
};

}  // namespace

void ssi_suite(const Model& model, const RunConfig& config, CheckReport& report) {
  const SsiStructure ssi = build_ssi(model);
  const Hypersurface& h = *model.hypersurface;
  const Metric& g = model.g;
  RowBook book(model, "ssi", config.tolerance);
  gate_rows(book, model, config);

  const InducedObjects primal(g, model.d, h.xi, h.transversal);
  const InducedObjects dual(g, model.dstar, h.xi, h.transversal);

  // Tangent fields: adapted frame, random combinations, then nu, U, W.
  std::vector<VectorField> fields = tangent_fields(model, config.seed);
  const std::size_t base = fields.size();
  const std::size_t i_nu = base, i_u = base + 1;
  fields.push_back(ssi.nu());
  fields.push_back(ssi.u_field());
  fields.push_back(ssi.w_field());
  const std::size_t n = fields.size();

  // L + <nu>: tangent fields with the U-component removed (u(X) = 0).
  std::vector<VectorField> l_fields;
  for (std::size_t i = 0; i < base; ++i) {
    const VectorField f = fields[i];
    l_fields.emplace_back([&ssi, f](const Site& site) {
      const VectorXdual v = f(site);
      return VectorXdual(v - ssi.u_field()(site) * ssi.u(site, v));
    });
  }
  l_fields.push_back(ssi.nu());
  l_fields.push_back(ssi.w_field());
  // L' + <nu>: spanned by U and nu.
  std::vector<VectorField> lp_fields{ssi.u_field(), ssi.nu()};
  {
    auto rng = field_rng(config.seed, 0x55a1);
    for (int r = 0; r < 2; ++r) {
      const ScalarField a = scalar_field(random_polynomial(h.domain.chart.names, rng));
      const ScalarField b = scalar_field(random_polynomial(h.domain.chart.names, rng));
      lp_fields.push_back(a * ssi.u_field() + b * ssi.nu());
    }
  }

  for (const auto& p : sample_points(h.domain.chart, config.points, hypersurface_seed(config))) {
    const Site site(h.domain, p);
    const Local at{site, g, ssi};
    const FieldValues f(site, fields);
    const InducedAtPoint a(site, primal, f);
    const InducedAtPoint s(site, dual, f);
    const Eigen::VectorXd& xi = f.value[0];
    const Eigen::VectorXd nv = h.transversal.value(site);
    const Eigen::VectorXd& nu = f.value[i_nu];
    const Eigen::VectorXd& uv = f.value[i_u];
    const Eigen::VectorXd& wv = f.value[i_u + 1];
    const VectorXdual u_dual = ssi.u_field()(site);
    const VectorXdual nu_dual = ssi.nu()(site);
    const Eigen::MatrixXd phi_tilde = values(ssi.ambient_phi(site));

    std::vector<VectorXdual> phi_dual(n);
    std::vector<Eigen::VectorXd> phi_v(n);
    std::vector<double> u(n), w(n), gnu(n);
    for (std::size_t j = 0; j < n; ++j) {
      phi_dual[j] = ssi.phi(site, f.dual[j]);
      phi_v[j] = values(phi_dual[j]);
      u[j] = at.u(f.value[j]);
      w[j] = ssi.w(site, f.value[j]);
      gnu[j] = at.metric(f.value[j], nu);
    }

    // Structure of the screen semi-invariant hypersurface.
    {
      const Eigen::VectorXd pxi = ssi.phi_xi().value(site);
      const Eigen::VectorXd pn = ssi.phi_n().value(site);
      book.row("ssi.structure.uw_pairing", "g(U,W) = 1", kHyp).add(std::abs(at.metric(uv, wv) - 1.0), p);
      book.row("ssi.structure.phi_xi_in_screen", "phi xi lies in S(TM)", kHyp)
          .add(site.tangency_residual(pxi) + std::abs(at.metric(pxi, nv)), p);
      book.row("ssi.structure.phi_n_in_screen", "phi N lies in S(TM)", kHyp)
          .add(site.tangency_residual(pn) + std::abs(at.metric(pn, nv)), p);
      book.row("ssi.structure.nu_tangent", "nu is tangent to M", kHyp).add(site.tangency_residual(nu), p);
      book.row("ssi.structure.nu_xi", "g(xi, nu) = 0", kHyp).add(std::abs(at.metric(xi, nu)), p);
      book.row("ssi.structure.nu_n", "g(N, nu) = 0", kHyp).add(std::abs(at.metric(nv, nu)), p);
      auto& l0 = book.row("ssi.structure.l0_invariance", "phi L0 = L0", kHyp);
      const Eigen::MatrixXd basis = ssi.l0_basis(site);
      l0.add(0.0, p);
      for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        const Eigen::VectorXd v = phi_tilde * basis.col(c);
        l0.add(site.tangency_residual(v) + std::abs(at.metric(v, nv)) + std::abs(at.metric(v, uv)) +
                   std::abs(at.metric(v, wv)) + std::abs(at.metric(v, nu)),
               p);
      }
    }

    // Induced f-structure.
    {
      auto& reassembly = book.row("ssi.f_structure.reassembly", "phi~ X = phi X + u(X) N", kHyp);
      auto& squared = book.row("ssi.f_structure.phi_squared", "phi^2 X = -X + g(X,nu) nu + u(X) U", kHyp);
      auto& cubed = book.row("ssi.f_structure.phi_cubed", "phi^3 X + phi X = 0", kHyp);
      auto& tangent = book.row("ssi.f_structure.phi_tangent", "phi X is tangent", kHyp);
      auto& orthogonal = book.row("ssi.f_structure.phi_nu_orthogonal", "g(phi X, nu) = 0", kHyp);
      auto& defect = book.row("ssi.f_structure.almost_contact_defect", "|phi^2 X + X - g(X,nu) nu| (witness)", kHyp,
                              kReport, "nonzero values show that phi is not an almost contact structure");
      auto& metric = book.row("ssi.f_structure.metric",
                              "g(phi X, phi Y) = g(X,Y) - g(X,nu) g(Y,nu) - u(X) w(Y) - u(Y) w(X)", kHyp);
      for (std::size_t i = 0; i < n; ++i) {
        const Eigen::VectorXd& x = f.value[i];
        const Eigen::VectorXd phi2 = at.phi(phi_v[i]);
        reassembly.add((phi_tilde * x - phi_v[i] - u[i] * nv).norm(), p);
        squared.add((phi2 + x - gnu[i] * nu - u[i] * uv).norm(), p);
        defect.add((phi2 + x - gnu[i] * nu).norm(), p);
        cubed.add((at.phi(phi2) + phi_v[i]).norm(), p);
        tangent.add(site.tangency_residual(phi_v[i]), p);
        orthogonal.add(std::abs(at.metric(phi_v[i], nu)), p);
        for (std::size_t j = 0; j < n; ++j) {
          metric.add(std::abs(at.metric(phi_v[i], phi_v[j]) - at.metric(x, f.value[j]) + gnu[i] * gnu[j] +
                              u[i] * w[j] + u[j] * w[i]),
                     p);
        }
      }
      book.row("ssi.f_structure.phi_nu", "phi nu = 0", kHyp).add(at.phi(nu).norm(), p);
    }

    // Radical and structure-vector relations.
    {
      const Eigen::VectorXd pxi = ssi.phi_xi().value(site);
      const Eigen::VectorXd pn = ssi.phi_n().value(site);
      book.row("ssi.prop.phi_xi_xi", "g(phi xi, xi) = 0", kHyp).add(std::abs(at.metric(pxi, xi)), p);
      book.row("ssi.prop.phi_xi_n", "g(phi xi, N) + g(A*_N xi, nu) = 0", kHyp)
          .add(std::abs(at.metric(pxi, nv) + at.metric(s.shape_n[0], nu)), p);
      book.row("ssi.prop.phi_xi_phi_n", "g(phi xi, phi N) = 1", kHyp).add(std::abs(at.metric(pxi, pn) - 1.0), p);
      book.row("ssi.prop.second_form_xi_nu", "B(xi, nu) = 0", kHyp).add(std::abs(a.b[0][i_nu]), p);
      book.row("ssi.prop.second_form_nu_nu", "B(nu, nu) = 0", kHyp).add(std::abs(a.b[i_nu][i_nu]), p);
      book.row("ssi.prop.dual_second_form_xi_nu", "B*(xi, nu) = 0", kHyp).add(std::abs(s.b[0][i_nu]), p);
      book.row("ssi.prop.dual_second_form_nu_nu", "B*(nu, nu) = 0", kHyp).add(std::abs(s.b[i_nu][i_nu]), p);
    }

    // Gauss-Weingarten identities of the induced f-structure.
    {
      auto& v52 = book.row("ssi.lemma52.vector",
                           "D_X phi Y - phi D*_X Y = u(Y) A_N X - B*(X,Y) U + g(X,Y) nu - g(nu,Y) X", kHyp);
      auto& s52 = book.row("ssi.lemma52.scalar", "X(u(Y)) - u(D*_X Y) = -B(X, phi Y) - u(Y) tau(X)", kHyp);
      auto& v53 = book.row("ssi.lemma53.vector",
                           "D*_X phi Y - phi D_X Y = u(Y) A*_N X - B(X,Y) U + g(X,Y) nu - g(nu,Y) X", kHyp);
      auto& s53 = book.row("ssi.lemma53.scalar", "X(u(Y)) - u(D_X Y) = -B*(X, phi Y) - u(Y) tau*(X)", kHyp);
      for (std::size_t i = 0; i < n; ++i) {
        const Eigen::VectorXd& x = f.value[i];
        for (std::size_t j = 0; j < n; ++j) {
          const auto gp = primal.gauss(site, x, phi_dual[j]);
          const auto gd = dual.gauss(site, x, phi_dual[j]);
          const double xu = directional_derivative(site, x, ssi.u(site, f.dual[j]));
          const double gxy = at.metric(x, f.value[j]);
          v52.add((gp.induced - at.phi(s.d[i][j]) - u[j] * a.shape_n[i] + s.b[i][j] * uv - gxy * nu + gnu[j] * x)
                      .norm(),
                  p);
          s52.add(std::abs(xu - at.u(s.d[i][j]) + gp.second_form + u[j] * a.tau[i]), p);
          v53.add((gd.induced - at.phi(a.d[i][j]) - u[j] * s.shape_n[i] + a.b[i][j] * uv - gxy * nu + gnu[j] * x)
                      .norm(),
                  p);
          s53.add(std::abs(xu - at.u(a.d[i][j]) + gd.second_form + u[j] * s.tau[i]), p);
        }
      }
    }

    // Gauges of the conditional statements.
    std::vector<Eigen::VectorXd> phi_dstar_u(n), phi_d_u(n);
    {
      const std::size_t i_w = i_u + 1;
      auto gauge = [&](const std::string& id, const std::string& reference) -> RowAccumulator& {
        return book.row("ssi.gauge." + id, reference + " (hypothesis gauge)", kHyp, kReport);
      };
      auto& sdu = gauge("screen_dual_parallel_u", "|nabla*_X U| = |P(D*_X U)|");
      auto& spu = gauge("screen_parallel_u", "|nabla_X U| = |P(D_X U)|");
      auto& sdw = gauge("screen_dual_parallel_w", "|nabla*_X W| = |P(D*_X W)|");
      auto& spw = gauge("screen_parallel_w", "|nabla_X W| = |P(D_X W)|");
      auto& idu = gauge("induced_dual_parallel_u", "|D*_X U|");
      auto& ipu = gauge("induced_parallel_u", "|D_X U|");
      auto& idw = gauge("induced_dual_parallel_w", "|D*_X W|");
      auto& ipw = gauge("induced_parallel_w", "|D_X W|");
      auto& bg = gauge("second_form", "|B(X,Y)|");
      auto& bsg = gauge("dual_second_form", "|B*(X,Y)|");
      for (std::size_t i = 0; i < n; ++i) {
        sdu.add(primal.project(site, s.d[i][i_u]).norm(), p);
        spu.add(primal.project(site, a.d[i][i_u]).norm(), p);
        sdw.add(primal.project(site, s.d[i][i_w]).norm(), p);
        spw.add(primal.project(site, a.d[i][i_w]).norm(), p);
        idu.add(s.d[i][i_u].norm(), p);
        ipu.add(a.d[i][i_u].norm(), p);
        idw.add(s.d[i][i_w].norm(), p);
        ipw.add(a.d[i][i_w].norm(), p);
        for (std::size_t j = 0; j < n; ++j) {
          bg.add(std::abs(a.b[i][j]), p);
          bsg.add(std::abs(s.b[i][j]), p);
        }
        phi_dstar_u[i] = at.phi(s.d[i][i_u]);
        phi_d_u[i] = at.phi(a.d[i][i_u]);
      }
    }

    // Characterizations on L (u(Y) = 0, g(Y,nu) = 0) and with Y = U, and the
    // totally geodesic conclusions obtained by dropping the second forms.
    {
      auto& c29 = book.row("ssi.characterization.tangent",
                           "D_X phi Y - phi D*_X Y = -B*(X,Y) U + g(X,Y) nu, Y in L", kHyp);
      auto& c30 = book.row("ssi.characterization.dual_tangent",
                           "D*_X phi Y - phi D_X Y = -B(X,Y) U + g(X,Y) nu, Y in L", kHyp);
      auto& c31 = book.row("ssi.characterization.transversal_shape",
                           "A_N X = -phi D*_X U + B*(X,U) U - g(X,U) nu", kHyp);
      auto& c32 = book.row("ssi.characterization.dual_transversal_shape",
                           "A*_N X = -phi D_X U + B(X,U) U - g(X,U) nu", kHyp);
      const std::string tg = "ssi.geodesic.";
      auto& g1 = book.row(tg + "tangent", "D_X phi Y - phi D*_X Y = g(X,Y) nu, Y in L (B* = 0)", kHyp);
      auto& g1p = book.row(tg + "tangent.as_printed", "D_X phi Y - phi D*_X Y = g(X,Y) nu, Y in L (B = 0)", kHyp,
                           kReport);
      auto& g2 = book.row(tg + "transversal_shape", "A_N X = -phi D*_X U - g(X,U) nu (B* = 0)", kHyp);
      auto& g2p = book.row(tg + "transversal_shape.as_printed", "A_N X = -phi D*_X U - g(X,U) nu (B = 0)", kHyp,
                           kReport);
      auto& g3 = book.row(tg + "dual_tangent", "D*_X phi Y - phi D_X Y = g(X,Y) nu, Y in L (B = 0)", kHyp);
      auto& g3p = book.row(tg + "dual_tangent.as_printed", "D*_X phi Y - phi D_X Y = g(X,Y) nu, Y in L (B* = 0)",
                           kHyp, kReport);
      auto& g4 = book.row(tg + "dual_transversal_shape", "A*_N X = -phi D_X U - g(X,U) nu (B = 0)", kHyp);
      auto& g4p = book.row(tg + "dual_transversal_shape.as_printed", "A*_N X = -phi D_X U - g(X,U) nu (B* = 0)",
                           kHyp, kReport);

      std::vector<VectorXdual> yl(n), phi_yl(n);
      for (std::size_t j = 0; j < n; ++j) {
        yl[j] = f.dual[j] - u_dual * ssi.u(site, f.dual[j]) - nu_dual * metric_apply(site, g, f.dual[j], nu_dual);
        phi_yl[j] = ssi.phi(site, yl[j]);
      }
      for (std::size_t i = 0; i < n; ++i) {
        const Eigen::VectorXd& x = f.value[i];
        for (std::size_t j = 0; j < n; ++j) {
          const Eigen::VectorXd ylv = values(yl[j]);
          const double gxy = at.metric(x, ylv);
          const auto dy = primal.gauss(site, x, yl[j]);
          const auto dsy = dual.gauss(site, x, yl[j]);
          const Eigen::VectorXd lhs = primal.gauss(site, x, phi_yl[j]).induced - at.phi(dsy.induced) - gxy * nu;
          const Eigen::VectorXd lhs_dual = dual.gauss(site, x, phi_yl[j]).induced - at.phi(dy.induced) - gxy * nu;
          c29.add((lhs + dsy.second_form * uv).norm(), p);
          c30.add((lhs_dual + dy.second_form * uv).norm(), p);
          g1.add(lhs.norm(), p);
          g1p.add(lhs.norm(), p);
          g3.add(lhs_dual.norm(), p);
          g3p.add(lhs_dual.norm(), p);
        }
        const double gxu = at.metric(x, uv);
        const Eigen::VectorXd t = a.shape_n[i] + phi_dstar_u[i] + gxu * nu;
        const Eigen::VectorXd ts = s.shape_n[i] + phi_d_u[i] + gxu * nu;
        c31.add((t - s.b[i][i_u] * uv).norm(), p);
        c32.add((ts - a.b[i][i_u] * uv).norm(), p);
        g2.add(t.norm(), p);
        g2p.add(t.norm(), p);
        g4.add(ts.norm(), p);
        g4p.add(ts.norm(), p);
      }
    }

    // Parallel U and W.
    {
      auto decomposition_defect = [&](const Eigen::VectorXd& v) {
        return (v - at.u(v) * uv - at.metric(v, nu) * nu).norm();
      };
      const std::string pu = "ssi.parallel_u.";
      const std::string pw = "ssi.parallel_w.";
      auto& an = book.row(pu + "transversal_shape", "A_N X = u(A_N X) U + g(A_N X, nu) nu", kHyp);
      auto& anp = book.row(pu + "transversal_shape.as_printed", "A_N X = u(A_N X) U + g(A_N X, nu) nu", kHyp, kReport);
      auto& tau = book.row(pu + "tau", "tau(X) = 0", kHyp);
      auto& asn = book.row(pu + "dual_transversal_shape", "A*_N X = u(A*_N X) U + g(A*_N X, nu) nu", kHyp);
      auto& asnp = book.row(pu + "dual_transversal_shape.as_printed", "A*_N X = u(A*_N X) U + g(A*_N X, nu) nu",
                            kHyp, kReport);
      auto& taus = book.row(pu + "dual_tau", "tau*(X) = 0", kHyp);
      auto& ras = book.row(pw + "dual_radical_shape", "Abar*_xi X = g(Abar*_xi X, nu) nu + u(Abar*_xi X) U", kHyp);
      auto& rasp = book.row(pw + "dual_radical_shape.as_printed",
                            "Abar*_xi X = g(Abar*_xi X, nu) nu + u(Abar*_xi X) U", kHyp, kReport);
      auto& wtau = book.row(pw + "tau", "tau(X) = 0", kHyp);
      auto& wtaup = book.row(pw + "dual_tau.as_printed", "tau*(X) = 0", kHyp, kReport);
      auto& ra = book.row(pw + "radical_shape", "Abar_xi X = g(Abar_xi X, nu) nu + u(Abar_xi X) U", kHyp);
      auto& rap = book.row(pw + "radical_shape.as_printed", "Abar_xi X = g(Abar_xi X, nu) nu + u(Abar_xi X) U",
                           kHyp, kReport);
      auto& wtaus = book.row(pw + "dual_tau", "tau*(X) = 0", kHyp);
      auto& wtausp = book.row(pw + "tau.as_printed", "tau(X) = 0", kHyp, kReport);
      for (std::size_t i = 0; i < n; ++i) {
        const double dn = decomposition_defect(a.shape_n[i]);
        const double dsn = decomposition_defect(s.shape_n[i]);
        an.add(dn, p);
        anp.add(dn, p);
        tau.add(std::abs(a.tau[i]), p);
        asn.add(dsn, p);
        asnp.add(dsn, p);
        taus.add(std::abs(s.tau[i]), p);
        const double dras = decomposition_defect(s.radical_shape[i]);
        const double dra = decomposition_defect(a.radical_shape[i]);
        ras.add(dras, p);
        rasp.add(dras, p);
        ra.add(dra, p);
        rap.add(dra, p);
        wtau.add(std::abs(a.tau[i]), p);
        wtausp.add(std::abs(a.tau[i]), p);
        wtaus.add(std::abs(s.tau[i]), p);
        wtaup.add(std::abs(s.tau[i]), p);
      }
    }

    // Integrability of L + <nu>.
    {
      const FieldValues fl(site, l_fields);
      const std::size_t m = fl.size();
      const std::string il = "ssi.integrability.l.";
      auto& membership = book.row(il + "membership", "u(X) = 0 on the sampled fields", kHyp);
      auto& bracket_u = book.row(il + "bracket_u", "|u([X,Y])|", kHyp, kReport);
      auto& via_bs = book.row(il + "via_dual_second_form", "u([X,Y]) = B*(X, phi Y) - B*(Y, phi X)", kHyp);
      auto& via_b = book.row(il + "via_second_form", "u([X,Y]) = B(X, phi Y) - B(Y, phi X)", kHyp);
      auto& pat_bs = book.row(il + "pattern_dual_second_form",
                              "u([X,Y]) = 0 <=> B*(X, phi Y) = B*(phi X, Y) (disagreements)", kHyp);
      auto& pat_b =
          book.row(il + "pattern_second_form", "u([X,Y]) = 0 <=> B(X, phi Y) = B(phi X, Y) (disagreements)", kHyp);
      auto& induced = book.row(il + "bracket_via_induced", "u([X,Y]) = u(D_X Y) - u(D_Y X)", kHyp);
      auto& induced_printed = book.row(il + "bracket_via_induced.printed_sign", "u([X,Y]) = -u(D_X Y) + u(D_Y X)",
                                       kHyp, kReport);
      std::vector<VectorXdual> phi_l(m);
      for (std::size_t j = 0; j < m; ++j) {
        phi_l[j] = ssi.phi(site, fl.dual[j]);
        membership.add(std::abs(at.u(fl.value[j])), p);
      }
      std::vector<std::vector<double>> b(m, std::vector<double>(m)), bs(m, std::vector<double>(m));
      std::vector<std::vector<double>> ud(m, std::vector<double>(m));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          b[i][j] = primal.gauss(site, fl.value[i], phi_l[j]).second_form;  // B(X_i, phi X_j)
          bs[i][j] = dual.gauss(site, fl.value[i], phi_l[j]).second_form;
          ud[i][j] = at.u(primal.gauss(site, fl.value[i], fl.dual[j]).induced);
        }
      }
      const double tol = book.tolerance();
      for (std::size_t i = 0; i < m; ++i) {
        const VectorXdual phi_x = phi_l[i];
        for (std::size_t j = 0; j < m; ++j) {
          const double ub = at.u(lie_bracket(site, l_fields[i], l_fields[j]));
          bracket_u.add(std::abs(ub), p);
          via_bs.add(std::abs(ub - (bs[i][j] - bs[j][i])), p);
          via_b.add(std::abs(ub - (b[i][j] - b[j][i])), p);
          // B(phi X, Y) evaluated directly, not through the symmetry of B.
          const double bs_phi = dual.gauss(site, values(phi_x), fl.dual[j]).second_form;
          const double b_phi = primal.gauss(site, values(phi_x), fl.dual[j]).second_form;
          const bool integrable = std::abs(ub) < tol;
          pat_bs.add(integrable == (std::abs(bs[i][j] - bs_phi) < tol) ? 0.0 : 1.0, p);
          pat_b.add(integrable == (std::abs(b[i][j] - b_phi) < tol) ? 0.0 : 1.0, p);
          induced.add(std::abs(ub - ud[i][j] + ud[j][i]), p);
          induced_printed.add(std::abs(ub + ud[i][j] - ud[j][i]), p);
        }
      }
    }

    // Integrability of L' + <nu>.
    {
      const FieldValues fp(site, lp_fields);
      const std::size_t m = fp.size();
      const std::string ip = "ssi.integrability.l_prime.";
      auto& membership = book.row(ip + "membership", "phi X = 0 on the sampled fields", kHyp);
      auto& bracket = book.row(ip + "phi_bracket", "|phi [X,Y]|", kHyp, kReport);
      auto& via_a = book.row(ip + "via_shape",
                             "phi [X,Y] = A_{phi~X} Y - A_{phi~Y} X + g(Y,nu) X - g(X,nu) Y", kHyp);
      auto& via_as = book.row(ip + "via_dual_shape",
                              "phi [X,Y] = A*_{phi~X} Y - A*_{phi~Y} X + g(Y,nu) X - g(X,nu) Y", kHyp);
      auto& pat_a = book.row(ip + "pattern_shape",
                             "phi [X,Y] = 0 <=> A_{phi~X} Y - A_{phi~Y} X = g(X,nu) Y - g(Y,nu) X (disagreements)",
                             kHyp);
      auto& pat_as = book.row(
          ip + "pattern_dual_shape",
          "phi [X,Y] = 0 <=> A*_{phi~X} Y - A*_{phi~Y} X = g(X,nu) Y - g(Y,nu) X (disagreements)", kHyp);
      const MatrixXdual& phi_amb = ssi.ambient_phi(site);
      std::vector<VectorXdual> phit(m);
      for (std::size_t j = 0; j < m; ++j) {
        phit[j] = phi_amb * fp.dual[j];
        membership.add(at.phi(fp.value[j]).norm(), p);
      }
      const double tol = book.tolerance();
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const Eigen::VectorXd& x = fp.value[i];
          const Eigen::VectorXd& y = fp.value[j];
          const Eigen::VectorXd pb = at.phi(lie_bracket(site, lp_fields[i], lp_fields[j]));
          const Eigen::VectorXd tail = at.metric(y, nu) * x - at.metric(x, nu) * y;
          const Eigen::VectorXd rhs =
              primal.shape(site, y, phit[i]).shape - primal.shape(site, x, phit[j]).shape + tail;
          const Eigen::VectorXd rhs_dual =
              dual.shape(site, y, phit[i]).shape - dual.shape(site, x, phit[j]).shape + tail;
          bracket.add(pb.norm(), p);
          via_a.add((pb - rhs).norm(), p);
          via_as.add((pb - rhs_dual).norm(), p);
          const bool integrable = pb.norm() < tol;
          pat_a.add(integrable == (rhs.norm() < tol) ? 0.0 : 1.0, p);
          pat_as.add(integrable == (rhs_dual.norm() < tol) ? 0.0 : 1.0, p);
        }
      }
    }
    book.end_point();
  }

  for (const char* id : {"reassembly", "phi_squared", "phi_cubed", "phi_tangent", "phi_nu_orthogonal", "metric",
                         "phi_nu"}) {
    book.pass_if(std::string("ssi.f_structure.") + id, {"ssi.ambient.acm"});
  }
  for (const char* id :
       {"ssi.prop.phi_xi_xi", "ssi.prop.phi_xi_n", "ssi.prop.phi_xi_phi_n", "ssi.prop.second_form_xi_nu",
        "ssi.prop.second_form_nu_nu", "ssi.prop.dual_second_form_xi_nu", "ssi.prop.dual_second_form_nu_nu",
        "ssi.lemma52.vector", "ssi.lemma52.scalar", "ssi.lemma53.vector", "ssi.lemma53.scalar",
        "ssi.characterization.tangent", "ssi.characterization.dual_tangent",
        "ssi.characterization.transversal_shape", "ssi.characterization.dual_transversal_shape",
        "ssi.geodesic.tangent", "ssi.geodesic.transversal_shape", "ssi.geodesic.dual_tangent",
        "ssi.geodesic.dual_transversal_shape", "ssi.parallel_u.transversal_shape", "ssi.parallel_u.tau",
        "ssi.parallel_u.dual_transversal_shape", "ssi.parallel_u.dual_tau", "ssi.parallel_w.dual_radical_shape",
        "ssi.parallel_w.tau", "ssi.parallel_w.radical_shape", "ssi.parallel_w.dual_tau"}) {
    book.pass_if(id, kGates);
  }
  for (const char* id :
       {"ssi.integrability.l.via_dual_second_form", "ssi.integrability.l.via_second_form",
        "ssi.integrability.l.pattern_dual_second_form", "ssi.integrability.l.pattern_second_form",
        "ssi.integrability.l.bracket_via_induced", "ssi.integrability.l_prime.via_shape",
        "ssi.integrability.l_prime.via_dual_shape", "ssi.integrability.l_prime.pattern_shape",
        "ssi.integrability.l_prime.pattern_dual_shape"}) {
    book.pass_if(id, kTorsionGates);
  }

  // Conclusions are withheld unless their hypothesis gauge holds. The gauge
  // used is the one the derivation needs; the printed hypothesis is kept as
  // a report-only row.
  const std::string gauge = "ssi.gauge.";
  book.require_gauges("ssi.geodesic.tangent", {gauge + "dual_second_form"});
  book.require_gauges("ssi.geodesic.transversal_shape", {gauge + "dual_second_form"});
  book.require_gauges("ssi.geodesic.dual_tangent", {gauge + "second_form"});
  book.require_gauges("ssi.geodesic.dual_transversal_shape", {gauge + "second_form"});
  book.require_gauges("ssi.geodesic.tangent.as_printed", {gauge + "second_form"});
  book.require_gauges("ssi.geodesic.transversal_shape.as_printed", {gauge + "second_form"});
  book.require_gauges("ssi.geodesic.dual_tangent.as_printed", {gauge + "dual_second_form"});
  book.require_gauges("ssi.geodesic.dual_transversal_shape.as_printed", {gauge + "dual_second_form"});

  book.require_gauges("ssi.parallel_u.transversal_shape", {gauge + "induced_dual_parallel_u"});
  book.require_gauges("ssi.parallel_u.transversal_shape.as_printed", {gauge + "screen_dual_parallel_u"});
  book.require_gauges("ssi.parallel_u.tau", {gauge + "screen_dual_parallel_u"});
  book.require_gauges("ssi.parallel_u.dual_transversal_shape", {gauge + "induced_parallel_u"});
  book.require_gauges("ssi.parallel_u.dual_transversal_shape.as_printed", {gauge + "screen_parallel_u"});
  book.require_gauges("ssi.parallel_u.dual_tau", {gauge + "screen_parallel_u"});

  book.require_gauges("ssi.parallel_w.dual_radical_shape", {gauge + "induced_parallel_w"});
  book.require_gauges("ssi.parallel_w.tau", {gauge + "induced_parallel_w"});
  book.require_gauges("ssi.parallel_w.dual_radical_shape.as_printed", {gauge + "screen_dual_parallel_w"});
  book.require_gauges("ssi.parallel_w.dual_tau.as_printed", {gauge + "screen_dual_parallel_w"});
  book.require_gauges("ssi.parallel_w.radical_shape", {gauge + "induced_dual_parallel_w"});
  book.require_gauges("ssi.parallel_w.dual_tau", {gauge + "induced_dual_parallel_w"});
  book.require_gauges("ssi.parallel_w.radical_shape.as_printed", {gauge + "screen_parallel_w"});
  book.require_gauges("ssi.parallel_w.tau.as_printed", {gauge + "screen_parallel_w"});

  book.emit(report);
}

}  // namespace statgeo::detail
