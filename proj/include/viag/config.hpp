#pragma once

#include <span>
#include <string>

#include "viag/experiments.hpp"

namespace viag::io {

/// Parses the flat key-value configuration format:
///
///   # comment
///   lambda_p = 852 nm
///   kappa = 173e3 Hz 2pi_times
///   Delta_p = 0.25 Gca
///
/// Values are numbers with an optional unit suffix (nm, um, Hz, Gca for units
/// of the resolved Gamma_ca) and an optional 2pi_times token. Bare rates are
/// rad/s, bare lengths meters. Unknown keys, unparsable numbers, unit
/// mismatches and physically invalid values raise ConfigError with line and
/// column. `overrides` are "key=value" strings applied after the file text
/// (resolution order: defaults < file < overrides).
experiments::ScenarioConfig parse_config(
    const std::string& text, std::span<const std::string> overrides = {});

/// Canonical key-value rendering of a resolved config, in internal units.
/// parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const experiments::ScenarioConfig& config);

}  // namespace viag::io
