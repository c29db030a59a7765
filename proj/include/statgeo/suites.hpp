#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "statgeo/fixtures.hpp"
#include "statgeo/report.hpp"

namespace statgeo {

/// Bad suite name, bad flags, or a suite that does not apply to the fixture.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// section2: Levi-Civita lightlike identities and null-frame invariants.
/// section3: dual-pair identities, ambient and along the hypersurface.
/// contact:  almost contact, Sasakian and Sasakian statistical checks.
/// ssi:      screen semi-invariant structure on the hypersurface.
const std::vector<std::string>& suite_names();

/// Whether the fixture carries the objects a suite needs.
bool suite_applies(const Model& model, const std::string& suite);

/// Runs one suite, or every applicable suite for "all". Throws ConfigError
/// when an explicitly requested suite does not apply.
CheckReport run_suites(const Model& model, const RunConfig& config);

}  // namespace statgeo
