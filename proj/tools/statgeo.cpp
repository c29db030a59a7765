// Command-line runner: loads a fixture, runs the check suites and writes a
// report. Exit codes: 0 all pass-expected rows pass, 2 some fail, 1 load or
// configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "statgeo/fixtures.hpp"
#include "statgeo/suites.hpp"

namespace {

using namespace statgeo;

constexpr int kExitFailures = 2;
constexpr int kExitError = 1;

std::map<std::string, double> parse_overrides(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects name=value, got '" + item + "'");
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw ConfigError("--param " + item + ": value is not a number");
    out[item.substr(0, eq)] = v;
  }
  return out;
}

FixtureSpec fixture_with_overrides(const std::string& name, const std::vector<std::string>& params) {
  FixtureSpec spec = resolve_fixture(name);
  for (const auto& [key, value] : parse_overrides(params)) {
    auto it = spec.parameters.find(key);
    if (it == spec.parameters.end()) {
      throw ConfigError("fixture '" + spec.name + "' has no parameter '" + key + "'");
    }
    it->second = value;
  }
  return spec;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual checks for statistical manifolds and their lightlike hypersurfaces"};
  app.require_subcommand(1);

  std::string fixture;
  RunConfig config;
  std::string format = "json";
  std::string out;
  std::vector<std::string> params;

  auto* run = app.add_subcommand("run", "run check suites on a fixture");
  run->add_option("--fixture", fixture, "registry name or fixture file")->required();
  run->add_option("--suite", config.suite, "section2, section3, contact, ssi or all")->capture_default_str();
  run->add_option("--points", config.points, "sample points per domain")->capture_default_str();
  run->add_option("--tol", config.tolerance, "identity tolerance")->capture_default_str();
  run->add_option("--seed", config.seed, "sampling seed")->capture_default_str();
  run->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  run->add_option("--out", out, "report path (default stdout)");
  run->add_option("--param", params, "override a fixture parameter, name=value")->take_all();

  auto* list = app.add_subcommand("list", "list registry fixtures and suites");

  std::string export_fixture;
  std::string export_out;
  std::vector<std::string> export_params;
  auto* exp = app.add_subcommand("export", "write a fixture in the file format");
  exp->add_option("--fixture", export_fixture, "registry name or fixture file")->required();
  exp->add_option("--out", export_out, "output path (default stdout)");
  exp->add_option("--param", export_params, "override a fixture parameter, name=value")->take_all();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (list->parsed()) {
      for (const auto& name : registry_names()) {
        const FixtureSpec spec = registry_fixture(name);
        std::string applicable;
        const auto model = compile(spec);
        for (const auto& suite : suite_names()) {
          if (suite_applies(*model, suite)) applicable += (applicable.empty() ? "" : ",") + suite;
        }
        std::cout << name << "  [" << applicable << "]  " << spec.description << "\n";
      }
      return 0;
    }
    if (exp->parsed()) {
      write_output(serialize_fixture(fixture_with_overrides(export_fixture, export_params)), export_out);
      return 0;
    }

    const auto model = load_fixture(fixture_with_overrides(fixture, params));
    const CheckReport report = run_suites(*model, config);
    write_output(format == "json" ? to_json(report) : to_text(report), out);
    const auto failed = report.failures();
    for (const CheckRow* row : failed) {
      std::fprintf(stderr, "FAIL %s %s %s max residual %s (tol %g)\n", report.fixture.c_str(), row->suite.c_str(),
                   row->id.c_str(), format_residual(row->max_residual).c_str(), row->tolerance);
    }
    return failed.empty() ? 0 : kExitFailures;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
  } catch (const FixtureError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: fixture '%s': %s\n", fixture.c_str(), e.what());
  }
  return kExitError;
}
