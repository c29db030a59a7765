#include "statgeo/suites.hpp"

#include <algorithm>

#include "statgeo/ssi.hpp"
#include "support.hpp"

namespace statgeo {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"section2", "section3", "contact", "ssi"};
  return names;
}

bool suite_applies(const Model& model, const std::string& suite) {
  if (suite == "section2") return model.hypersurface.has_value();
  if (suite == "section3") return true;
  if (suite == "contact") return model.contact.has_value();
  if (suite == "ssi") return model.contact.has_value() && model.hypersurface.has_value();
  return false;
}

namespace {

std::string missing(const Model& model, const std::string& suite) {
  if (suite == "section2") return "it has no hypersurface";
  if (suite == "contact") return "it has no contact structure";
  if (!model.contact) return "it has no contact structure";
  return "it has no hypersurface";
}

SampleSet samples(const std::string& domain, const Chart& chart, int points, std::uint64_t seed) {
  return {domain, chart.names, sample_points(chart, points, seed)};
}

}  // namespace

CheckReport run_suites(const Model& model, const RunConfig& config) {
  const auto& names = suite_names();
  if (config.suite != "all" && std::find(names.begin(), names.end(), config.suite) == names.end()) {
    throw ConfigError("unknown suite '" + config.suite + "'; expected section2, section3, contact, ssi or all");
  }
  if (config.points < 1) throw ConfigError("--points must be positive");
  if (!(config.tolerance > 0)) throw ConfigError("--tol must be positive");
  if (config.suite != "all" && !suite_applies(model, config.suite)) {
    throw ConfigError("suite '" + config.suite + "' does not apply to fixture '" + model.name() + "': " +
                      missing(model, config.suite));
  }

  CheckReport report;
  report.fixture = model.name();
  report.config = config;
  bool ambient = false;
  bool hypersurface = false;
  for (const auto& suite : names) {
    if (config.suite != "all" && config.suite != suite) continue;
    if (!suite_applies(model, suite)) continue;
    if (suite == "section2") {
      detail::section2_suite(model, config, report);
      hypersurface = true;
    } else if (suite == "section3") {
      detail::section3_suite(model, config, report);
      ambient = true;
      hypersurface = hypersurface || model.hypersurface.has_value();
    } else if (suite == "contact") {
      detail::contact_suite(model, config, report);
      ambient = true;
    } else {
      try {
        detail::ssi_suite(model, config, report);
      } catch (const NotScreenSemiInvariant& e) {
        throw ConfigError(std::string("suite 'ssi' does not apply: ") + e.what());
      }
      ambient = hypersurface = true;
    }
  }
  if (ambient) report.samples.push_back(samples("ambient", model.ambient.chart, config.points, config.seed));
  if (hypersurface) {
    report.samples.push_back(
        samples("hypersurface", model.hypersurface->domain.chart, config.points, detail::hypersurface_seed(config)));
  }
  report.finalize();
  return report;
}

}  // namespace statgeo
