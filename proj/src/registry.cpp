#include <functional>
#include <utility>

#include "statgeo/fixtures.hpp"

namespace statgeo {

namespace {

using Rows = std::vector<std::vector<std::string>>;

ChartSpec cube(std::vector<std::string> names, double half_width, std::vector<std::string> exclusions = {}) {
  ChartSpec c;
  c.box.assign(names.size(), Interval{-half_width, half_width});
  c.coordinates = std::move(names);
  c.exclusions = std::move(exclusions);
  return c;
}

Rows diagonal(const std::vector<std::string>& d) {
  Rows m(d.size(), std::vector<std::string>(d.size(), "0"));
  for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return m;
}

/// e (x) e + D, the shape of every contact metric below.
Rows form_square_plus_diagonal(const std::vector<std::string>& e, const std::vector<std::string>& d) {
  Rows m(e.size(), std::vector<std::string>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      std::string v = "(" + e[i] + ")*(" + e[j] + ")";
      if (i == j) v += " + (" + d[i] + ")";
      m[i][j] = v;
    }
  }
  return m;
}

/// K(X, Y) = coefficient * e(X) e(Y) nu.
RankOneSpec along(std::string coefficient, const std::vector<std::string>& e, const std::vector<std::string>& nu) {
  return RankOneSpec{std::move(coefficient), e, e, nu};
}

const std::vector<std::string> kContactCoords = {"x1", "x2", "y1", "y2", "z"};

void report_only(FixtureSpec& f, const std::string& id, std::string note) {
  f.expectations[id] = ExpectationOverride{Expectation::ReportOnly, std::move(note)};
}

// ---- lightlike graph in R^4_2 ------------------------------------------------

FixtureSpec ex3_graph() {
  FixtureSpec f;
  f.name = "ex3_graph";
  f.description =
      "Lightlike graph x0 = x1 + sqrt(2) sqrt(x2^2 + x3^2) in R^4_2 with signature (-,-,+,+); "
      "statistical pair given by the Levi-Civita connection plus a rank-one K.";
  f.ambient = ChartSpec{{"x0", "x1", "x2", "x3"},
                        {{-4, 4}, {-1, 1}, {-2, 2}, {-2, 2}},
                        {"x2^2 + x3^2 - 0.01"}};
  f.metric = diagonal({"-1", "-1", "1", "1"});
  f.connection.kind = "difference";
  const std::vector<std::string> a = {"0", "0", "-x3/(x2^2 + x3^2)", "x2/(x2^2 + x3^2)"};
  f.connection.terms.push_back({"1", a, a, {"0", "0", "-x2", "x3"}});

  const std::string r = "sqrt(x2^2 + x3^2)";
  const std::string q = "(4*(x2^2 + x3^2))";
  HypersurfaceSpec h;
  h.chart = ChartSpec{{"x1", "x2", "x3"}, {{-1, 1}, {-2, 2}, {-2, 2}}, {"x2^2 + x3^2 - 0.01", "4 - x2^2 - x3^2"}};
  h.embedding = {"x1 + sqrt(2)*" + r, "x1", "x2", "x3"};
  h.xi = {r, "-" + r, "sqrt(2)*x2", "sqrt(2)*x3"};
  h.transversal = {"-" + r + "/" + q, r + "/" + q, "sqrt(2)*x2/" + q, "sqrt(2)*x3/" + q};
  h.screen = {{"1", "1", "0", "0"}, {"0", "0", "-x3", "x2"}};
  h.frame = {h.xi, h.screen[0], h.screen[1]};
  f.hypersurface = h;

  const std::string derived = "the derived K is not self-adjoint for g; the residual is reported, not asserted";
  report_only(f, "section3.ambient.difference_self_adjoint", derived);
  report_only(f, "section3.ambient.codazzi", derived);
  report_only(f, "section3.ambient.statistical", derived);
  return f;
}

// ---- flat contact R^5_2 ----------------------------------------------------------

FixtureSpec ex4_flat_contact() {
  FixtureSpec f;
  f.name = "ex4_flat_contact";
  f.description = "Flat R^5_2 with signature (-,+,-,+,+), eta = dz, nu = d/dz and K = g(X,nu) g(Y,nu) nu.";
  f.ambient = cube(kContactCoords, 1.0);
  f.metric = diagonal({"-1", "1", "-1", "1", "1"});
  const std::vector<std::string> dz = {"0", "0", "0", "0", "1"};
  f.connection.kind = "difference";
  f.connection.terms.push_back(along("1", dz, dz));
  ContactSpec c;
  c.phi_columns = {{"0", "0", "-1", "0", "0"},
                   {"0", "0", "0", "-1", "0"},
                   {"1", "0", "0", "0", "0"},
                   {"0", "1", "0", "0", "0"},
                   {"0", "0", "0", "0", "0"}};
  c.nu = dz;
  c.eta = dz;
  f.contact = c;
  const std::string flat = "nu is parallel for the flat metric, so nabla_X nu + phi X = phi X";
  report_only(f, "contact.sasakian.nu_derivative", flat);
  report_only(f, "contact.sasakian.phi_derivative", "phi is constant for the flat metric, so (nabla_X phi)Y = 0");
  for (const char* id : {"contact.sasaki_statistical", "contact.theorem42", "contact.theorem42.th1",
                         "contact.theorem42.th2", "contact.theorem42.th3"}) {
    report_only(f, id, "the flat structure is not Sasakian");
  }
  return f;
}

FixtureSpec hyp_x1y2() {
  FixtureSpec f = ex4_flat_contact();
  f.name = "hyp_x1y2";
  f.description = "Lightlike hyperplane x1 = y2 of ex4_flat_contact with xi = d/dx1 + d/dy2.";
  HypersurfaceSpec h;
  h.chart = cube({"x1", "x2", "y1", "z"}, 1.0);
  h.embedding = {"x1", "x2", "y1", "x1", "z"};
  h.xi = {"1", "0", "0", "1", "0"};
  h.transversal = {"-1/2", "0", "0", "1/2", "0"};
  h.screen = {{"0", "1", "0", "0", "0"}, {"0", "0", "1", "0", "0"}, {"0", "0", "0", "0", "1"}};
  h.frame = {h.xi, h.screen[0], h.screen[1], h.screen[2]};
  f.hypersurface = h;
  return f;
}

// ---- twisted contact metric ----------------------------------------------------------

FixtureSpec ex4_twisted() {
  FixtureSpec f;
  f.name = "ex4_twisted";
  f.description =
      "R^5 with eta = dz - y1 dx1 - x1 dy1, metric eta (x) eta + diag(-1,-1,1,1,0), the phi table as printed "
      "and K = lambda g(X,nu) g(Y,nu) nu.";
  f.parameters["lambda"] = 1.0;
  f.ambient = cube(kContactCoords, 1.0);
  const std::vector<std::string> eta = {"-y1", "0", "-x1", "0", "1"};
  const std::vector<std::string> nu = {"0", "0", "0", "0", "1"};
  f.metric = form_square_plus_diagonal(eta, {"-1", "-1", "1", "1", "0"});
  f.connection.kind = "difference";
  f.connection.terms.push_back(along("lambda", eta, nu));
  ContactSpec c;
  c.phi_columns = {{"0", "-1", "0", "0", "0"},
                   {"1", "0", "0", "0", "y1"},
                   {"0", "0", "0", "-1", "0"},
                   {"0", "0", "1", "0", "x1"},
                   {"0", "0", "0", "0", "0"}};
  c.nu = nu;
  c.eta = eta;
  f.contact = c;
  // As printed, d(eta) pairs x1 with y1 while phi pairs x1 with x2.
  for (const char* id : {"contact.sasakian.phi_derivative", "contact.sasakian.nu_derivative",
                         "contact.sasaki_statistical", "contact.theorem42", "contact.theorem42.th1",
                         "contact.theorem42.th2", "contact.theorem42.th3"}) {
    report_only(f, id, "phi and eta as printed are not Sasakian; see ex4_twisted_emended");
  }
  return f;
}

FixtureSpec hyp_x2y2() {
  FixtureSpec f = ex4_twisted();
  f.name = "hyp_x2y2";
  f.description = "Lightlike hypersurface x2 = y2 of ex4_twisted with frame U1..U4 and xi = U2.";
  HypersurfaceSpec h;
  h.chart = cube({"x1", "x2", "y1", "z"}, 1.0);
  h.embedding = {"x1", "x2", "y1", "x2", "z"};
  const std::vector<std::string> u1 = {"1", "0", "0", "0", "0"};
  const std::vector<std::string> u2 = {"0", "1", "0", "1", "0"};
  const std::vector<std::string> u3 = {"0", "0", "1", "0", "0"};
  const std::vector<std::string> u4 = {"0", "0", "0", "0", "1"};
  h.frame = {u1, u2, u3, u4};
  h.xi = u2;
  h.transversal = {"0", "-1/2", "0", "1/2", "0"};
  h.screen = {u1, u3, u4};
  f.hypersurface = h;
  return f;
}

FixtureSpec ex4_twisted_emended() {
  FixtureSpec f;
  f.name = "ex4_twisted_emended";
  f.description =
      "Corrected variant of ex4_twisted: a contact form and phi that pair each x with its own y, "
      "with metric e (x) e + diag(-1,-1,1,1,0)/4, nu = 2 d/dz, and the lightlike hypersurface x2 = y2.";
  f.parameters["lambda"] = 1.0;
  f.ambient = cube(kContactCoords, 1.0);
  const std::vector<std::string> e = {"x2/2", "0", "-y2/2", "0", "1/2"};
  const std::vector<std::string> nu = {"0", "0", "0", "0", "2"};
  f.metric = form_square_plus_diagonal(e, {"-1/4", "-1/4", "1/4", "1/4", "0"});
  f.connection.kind = "difference";
  f.connection.terms.push_back(along("lambda", e, nu));
  ContactSpec c;
  c.phi_columns = {{"0", "-1", "0", "0", "0"},
                   {"1", "0", "0", "0", "-x2"},
                   {"0", "0", "0", "-1", "0"},
                   {"0", "0", "1", "0", "y2"},
                   {"0", "0", "0", "0", "0"}};
  c.nu = nu;
  c.eta = e;
  f.contact = c;
  HypersurfaceSpec h;
  h.chart = cube({"x1", "x2", "y1", "z"}, 1.0);
  h.embedding = {"x1", "x2", "y1", "x2", "z"};
  h.xi = {"0", "1", "0", "1", "0"};
  h.transversal = {"0", "-2", "0", "2", "0"};
  h.screen = {{"1", "0", "0", "0", "0"}, {"0", "0", "1", "0", "0"}, {"0", "0", "0", "0", "1"}};
  h.frame = {h.screen[0], h.xi, h.screen[1], h.screen[2]};
  f.hypersurface = h;
  f.changelog = {
      "contact form: dz - y1 dx1 - x1 dy1 replaced by (dz + x2 dx1 - y2 dy1)/2 so that d(eta) pairs x1 with x2 "
      "and y1 with y2, matching the phi table",
      "metric: eta (x) eta + diag(-1,-1,1,1,0) replaced by e (x) e + diag(-1,-1,1,1,0)/4, the normalisation "
      "under which d(eta) = g(., phi .) holds",
      "Reeb field: d/dz replaced by 2 d/dz so that eta(nu) = 1",
      "phi: the z-components of phi(d/dx2) and phi(d/dy2) set to -x2 and y2 so that eta(phi X) = 0",
      "K: lambda eta (x) eta (x) nu with the new eta and nu",
      "added the hypersurface x2 = y2 with xi = d/dx2 + d/dy2 and N = 2(d/dy2 - d/dx2)",
  };
  return f;
}

// ---- controls -------------------------------------------------------------------------

FixtureSpec ctrl_sasaki() {
  FixtureSpec f;
  f.name = "ctrl_sasaki";
  f.description =
      "Standard Sasakian structure on R^5: eta = (dz - y1 dx1 - y2 dx2)/2, g = eta (x) eta + (sum dx^2 + dy^2)/4, "
      "nu = 2 d/dz, promoted to statistical by K = lambda g(X,nu) g(Y,nu) nu.";
  f.parameters["lambda"] = 0.5;
  f.ambient = cube(kContactCoords, 1.0);
  const std::vector<std::string> e = {"-y1/2", "-y2/2", "0", "0", "1/2"};
  const std::vector<std::string> nu = {"0", "0", "0", "0", "2"};
  f.metric = form_square_plus_diagonal(e, {"1/4", "1/4", "1/4", "1/4", "0"});
  f.connection.kind = "difference";
  f.connection.terms.push_back(along("lambda", e, nu));
  ContactSpec c;
  c.phi_columns = {{"0", "0", "-1", "0", "0"},
                   {"0", "0", "0", "-1", "0"},
                   {"1", "0", "0", "0", "y1"},
                   {"0", "1", "0", "0", "y2"},
                   {"0", "0", "0", "0", "0"}};
  c.nu = nu;
  c.eta = e;
  f.contact = c;
  return f;
}

FixtureSpec ctrl_sasaki_perturbed() {
  FixtureSpec f = ctrl_sasaki();
  f.name = "ctrl_sasaki_perturbed";
  f.description = "Negative control: ctrl_sasaki with the extra term 0.1 g(X,d/dx1) g(Y,d/dx1) nu in K.";
  const std::vector<std::string> a = {"y1^2/4 + 1/4", "y1*y2/4", "0", "0", "-y1/4"};
  f.connection.terms.push_back({"0.1", a, a, {"0", "0", "0", "0", "2"}});
  const std::string note = "negative control: the perturbation breaks the K condition";
  report_only(f, "contact.sasaki_statistical", note);
  report_only(f, "contact.sasaki_statistical.k_condition", note);
  report_only(f, "contact.theorem42", note);
  report_only(f, "contact.theorem42.th1", note);
  report_only(f, "contact.theorem42.th3", note);
  const std::string codazzi = "negative control: the perturbed K is not self-adjoint, so D is not Codazzi";
  for (const char* id : {"contact.statistical", "contact.statistical.codazzi", "section3.ambient.codazzi",
                         "section3.ambient.statistical"}) {
    report_only(f, id, codazzi);
  }
  return f;
}

FixtureSpec ctrl_sasaki_indef() {
  FixtureSpec f;
  f.name = "ctrl_sasaki_indef";
  f.description =
      "Indefinite Sasakian structure on R^5_2: e = (dz + y1 dx1 - y2 dx2)/2, g = e (x) e + diag(-1,1,-1,1,0)/4, "
      "nu = 2 d/dz spacelike, K = lambda g(X,nu) g(Y,nu) nu, with the lightlike hyperplane x2 = x1.";
  f.parameters["lambda"] = 0.5;
  f.ambient = cube(kContactCoords, 1.0);
  const std::vector<std::string> e = {"y1/2", "-y2/2", "0", "0", "1/2"};
  const std::vector<std::string> nu = {"0", "0", "0", "0", "2"};
  f.metric = form_square_plus_diagonal(e, {"-1/4", "1/4", "-1/4", "1/4", "0"});
  f.connection.kind = "difference";
  f.connection.terms.push_back(along("lambda", e, nu));
  ContactSpec c;
  c.phi_columns = {{"0", "0", "-1", "0", "0"},
                   {"0", "0", "0", "-1", "0"},
                   {"1", "0", "0", "0", "-y1"},
                   {"0", "1", "0", "0", "y2"},
                   {"0", "0", "0", "0", "0"}};
  c.nu = nu;
  c.eta = e;
  f.contact = c;
  HypersurfaceSpec h;
  h.chart = cube({"x1", "y1", "y2", "z"}, 1.0);
  h.embedding = {"x1", "x1", "y1", "y2", "z"};
  h.xi = {"1", "1", "0", "0", "-(y1 - y2)"};
  h.transversal = {"-2", "2", "0", "0", "2*(y1 + y2)"};
  h.screen = {{"0", "0", "1", "0", "0"}, {"0", "0", "0", "1", "0"}, {"0", "0", "0", "0", "1"}};
  h.frame = {h.xi, h.screen[0], h.screen[1], h.screen[2]};
  f.hypersurface = h;
  return f;
}

FixtureSpec ctrl_totally_geodesic() {
  FixtureSpec f;
  f.name = "ctrl_totally_geodesic";
  f.description = "Null hyperplane x0 = x2 in flat R^4_2 with the Levi-Civita connection; B vanishes identically.";
  f.ambient = cube({"x0", "x1", "x2", "x3"}, 1.0);
  f.metric = diagonal({"-1", "-1", "1", "1"});
  HypersurfaceSpec h;
  h.chart = cube({"u1", "u2", "u3"}, 1.0);
  h.embedding = {"u2", "u1", "u2", "u3"};
  h.xi = {"1", "0", "1", "0"};
  h.transversal = {"-1/2", "0", "1/2", "0"};
  h.screen = {{"0", "1", "0", "0"}, {"0", "0", "0", "1"}};
  h.frame = {h.screen[0], h.xi, h.screen[1]};
  f.hypersurface = h;
  return f;
}

using Builder = std::function<FixtureSpec()>;

const std::vector<std::pair<std::string, Builder>>& registry() {
  static const std::vector<std::pair<std::string, Builder>> entries = {
      {"ctrl_sasaki", ctrl_sasaki},
      {"ctrl_sasaki_indef", ctrl_sasaki_indef},
      {"ctrl_sasaki_perturbed", ctrl_sasaki_perturbed},
      {"ctrl_totally_geodesic", ctrl_totally_geodesic},
      {"ex3_graph", ex3_graph},
      {"ex4_flat_contact", ex4_flat_contact},
      {"ex4_twisted", ex4_twisted},
      {"ex4_twisted_emended", ex4_twisted_emended},
      {"hyp_x1y2", hyp_x1y2},
      {"hyp_x2y2", hyp_x2y2},
  };
  return entries;
}

}  // namespace

std::vector<std::string> registry_names() {
  std::vector<std::string> out;
  for (const auto& [name, build] : registry()) out.push_back(name);
  return out;
}

FixtureSpec registry_fixture(const std::string& name) {
  for (const auto& [n, build] : registry()) {
    if (n == name) return build();
  }
  std::string list;
  for (const auto& n : registry_names()) list += (list.empty() ? "" : ", ") + n;
  throw FixtureError("unknown fixture '" + name + "'; available: " + list);
}

}  // namespace statgeo
