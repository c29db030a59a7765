#include "statgeo/ssi.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace statgeo {

namespace {

const VectorXdual& field_at(const Site& site, const VectorField& f) {
  return site.memo<VectorXdual>(&f, [&] { return f(site); });
}

}  // namespace

SsiStructure::SsiStructure(const Model& model) : model_(&model) {
  const ContactStructure& cs = *model.contact;
  const Hypersurface& h = *model.hypersurface;
  nu_ = cs.nu_field();
  phi_xi_ = cs.phi_of(h.xi);
  phi_n_ = cs.phi_of(h.transversal);
  u_ = -1.0 * phi_n_;
  w_ = -1.0 * phi_xi_;
}

double SsiStructure::u(const Site& site, const Eigen::VectorXd& x) const {
  return metric_apply(site, model_->g, x, values(field_at(site, w_)));
}

Dual SsiStructure::u(const Site& site, const VectorXdual& x) const {
  return metric_apply(site, model_->g, x, field_at(site, w_));
}

double SsiStructure::w(const Site& site, const Eigen::VectorXd& x) const {
  return metric_apply(site, model_->g, x, values(field_at(site, u_)));
}

const MatrixXdual& SsiStructure::ambient_phi(const Site& site) const {
  const Tensor11& phi = model_->contact->phi;
  // Same key and type as apply(phi, .), so the two share one evaluation.
  return site.memo<MatrixXdual>(&phi, [&] { return phi.at(site.image()); });
}

Eigen::VectorXd SsiStructure::phi(const Site& site, const Eigen::VectorXd& x) const {
  const Eigen::VectorXd uv = values(field_at(site, u_));
  return values(ambient_phi(site)) * (x - u(site, x) * uv);
}

VectorXdual SsiStructure::phi(const Site& site, const VectorXdual& x) const {
  const VectorXdual& uv = field_at(site, u_);
  return ambient_phi(site) * (x - uv * u(site, x));
}

VectorField SsiStructure::phi_of(const VectorField& x) const {
  return VectorField([this, x](const Site& site) { return phi(site, x(site)); });
}

Eigen::MatrixXd SsiStructure::l0_basis(const Site& site) const {
  const Hypersurface& h = *model_->hypersurface;
  const Eigen::MatrixXd frame = frame_matrix(site, h.frame);
  Eigen::MatrixXd constraints(4, frame.rows());
  constraints.row(0) = h.transversal.value(site).transpose();
  constraints.row(1) = values(field_at(site, u_)).transpose();
  constraints.row(2) = values(field_at(site, w_)).transpose();
  constraints.row(3) = values(field_at(site, nu_)).transpose();
  const Eigen::MatrixXd gv = values(metric_at(site, model_->g));
  const Eigen::MatrixXd m = constraints * gv * frame;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::Index rank = (svd.singularValues().array() > 1e-10 * std::max(1.0, svd.singularValues()[0])).count();
  const Eigen::Index k = frame.cols() - rank;
  return frame * svd.matrixV().rightCols(k);
}

SsiStructure build_ssi(const Model& model, double tolerance, int points, std::uint64_t seed) {
  if (!model.contact) throw NotScreenSemiInvariant("fixture '" + model.name() + "' has no contact structure");
  if (!model.hypersurface) throw NotScreenSemiInvariant("fixture '" + model.name() + "' has no hypersurface");
  SsiStructure ssi(model);
  const Hypersurface& h = *model.hypersurface;
  for (const auto& p : sample_points(h.domain.chart, points, seed)) {
    const Site site(h.domain, p);
    const InducedObjects lc(model.g, model.levi_civita, h.xi, h.transversal);
    const auto require = [&](double r, const char* what) {
      if (!(r < tolerance)) {
        std::ostringstream os;
        os << "fixture '" << model.name() << "': " << what << " at point (";
        for (Eigen::Index i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
        os << ") (residual " << r << ")";
        throw NotScreenSemiInvariant(os.str());
      }
    };
    require(site.tangency_residual(ssi.nu().value(site)), "nu is not tangent");
    const Eigen::VectorXd px = ssi.phi_xi().value(site);
    const Eigen::VectorXd pn = ssi.phi_n().value(site);
    require(site.tangency_residual(px) + std::abs(lc.theta(site, px)), "phi xi is not in the screen");
    require(site.tangency_residual(pn) + std::abs(lc.theta(site, pn)), "phi N is not in the screen");
  }
  return ssi;
}

}  // namespace statgeo
