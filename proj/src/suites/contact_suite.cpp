#include <algorithm>
#include <cmath>

#include "support.hpp"

namespace statgeo::detail {

void contact_suite(const Model& model, const RunConfig& config, CheckReport& report) {
  const ContactStructure& cs = *model.contact;
  const Metric& g = model.g;
  RowBook book(model, "contact", config.tolerance);
  const std::vector<VectorField> fields = ambient_fields(model, config.seed);
  const std::size_t n = fields.size();

  for (const auto& p : sample_points(model.ambient.chart, config.points, ambient_seed(config))) {
    const Site site(model.ambient, p);
    const FieldValues f(site, fields);

    auto& acm = book.row("contact.acm", "almost contact metric relations (all six)");
    auto& phi_nu = book.row("contact.acm.phi_nu", "phi nu = 0");
    auto& eta_phi = book.row("contact.acm.eta_phi", "eta(phi X) = 0");
    auto& eta_nu = book.row("contact.acm.eta_nu", "eta(nu) = epsilon");
    auto& phi_squared = book.row("contact.acm.phi_squared", "phi^2 X = -X + eta(X) nu");
    auto& metric_nu = book.row("contact.acm.metric_nu", "g(X, nu) = epsilon eta(X)");
    auto& compatibility = book.row("contact.acm.compatibility", "g(phi X, phi Y) = g(X,Y) - epsilon eta(X) eta(Y)");
    auto& f_structure = book.row("contact.f_structure", "phi^3 + phi = 0");
    auto& sasaki_phi = book.row("contact.sasakian.phi_derivative", "(nabla_X phi) Y = g(X,Y) nu - epsilon eta(Y) X");
    auto& sasaki_nu = book.row("contact.sasakian.nu_derivative", "nabla_X nu = -phi X");
    auto& torsion_row = book.row("contact.statistical.torsion", "T^D(X,Y) = 0");
    auto& codazzi = book.row("contact.statistical.codazzi", "(D_X g)(Y,Z) = (D_Y g)(X,Z)");
    auto& statistical = book.row("contact.statistical", "(D, g) is a statistical structure");
    auto& k_row = book.row("contact.sasaki_statistical.k_condition", "K(X, phi Y) = -phi K(X,Y)");
    auto& sasaki_statistical =
        book.row("contact.sasaki_statistical", "Sasakian, (D, g) statistical and K(X, phi Y) = -phi K(X,Y)");
    auto& th1 = book.row("contact.theorem42.th1", "D_X phi Y - phi D*_X Y = g(X,Y) nu - g(Y,nu) X");
    auto& th2 = book.row("contact.theorem42.th2", "D_X nu = -phi X + g(D_X nu, nu) nu");
    auto& th3 = book.row("contact.theorem42.th3", "D*_X phi Y - phi D_X Y = g(X,Y) nu - g(Y,nu) X");
    auto& theorem = book.row("contact.theorem42", "both Sasakian statistical conditions and the dual form");

    for (std::size_t i = 0; i < n; ++i) {
      f_structure.add(f_structure_residual(site, cs, f.value[i]), p);
      for (std::size_t j = 0; j < n; ++j) {
        const AcmResiduals r = acm_residuals(site, cs, g, f.value[i], f.value[j]);
        const double parts[] = {r.phi_nu, std::abs(r.eta_phi), std::abs(r.eta_nu), r.phi_squared,
                                std::abs(r.metric_nu), std::abs(r.compatibility)};
        phi_nu.add(parts[0], p);
        eta_phi.add(parts[1], p);
        eta_nu.add(parts[2], p);
        phi_squared.add(parts[3], p);
        metric_nu.add(parts[4], p);
        compatibility.add(parts[5], p);
        acm.add(*std::max_element(std::begin(parts), std::end(parts)), p);

        const SasakianResiduals s = sasakian_residuals(site, cs, g, model.levi_civita, fields[i], fields[j]);
        sasaki_phi.add(s.phi_derivative, p);
        sasaki_nu.add(s.nu_derivative, p);
        const double t = torsion(site, model.d, fields[i], fields[j]).norm();
        torsion_row.add(t, p);
        const double k = k_condition_residual(site, cs, model.k, f.value[i], f.value[j]);
        k_row.add(k, p);
        double c = 0;
        for (std::size_t l = 0; l < n; ++l) {
          c = std::max(c, std::abs(codazzi_defect(site, model.d, g, fields[i], fields[j], fields[l])));
        }
        codazzi.add(c, p);
        statistical.add(std::max(t, c), p);
        sasaki_statistical.add(std::max({s.phi_derivative, s.nu_derivative, t, c, k}), p);

        const Theorem42Residuals th = theorem42_residuals(site, cs, g, model.d, model.dstar, fields[i], fields[j]);
        th1.add(th.th1, p);
        th2.add(th.th2, p);
        th3.add(th.th3, p);
        theorem.add(std::max({th.th1, th.th2, th.th3}), p);
      }
    }
    book.end_point();
  }

  // The characterization presupposes a statistical almost contact metric
  // manifold; its two sides are compared as pass flags at the run tolerance.
  const bool lhs = book.within("contact.sasaki_statistical");
  const bool rhs = book.within("contact.theorem42");
  book.row("contact.theorem42_equivalence", "Sasakian statistical <=> theorem42 conditions (pass flags agree)")
      .add(lhs == rhs ? 0.0 : 1.0, Eigen::VectorXd());
  book.end_point();
  book.require_gauges("contact.theorem42_equivalence", {"contact.acm", "contact.statistical"});
  book.pass_if("contact.f_structure", {"contact.acm"});
  book.emit(report);
}

}  // namespace statgeo::detail
