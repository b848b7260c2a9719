#pragma once

#include <filesystem>
#include <string>

#include "viag/experiments.hpp"
#include "viag/oracle.hpp"

namespace viag::io {

/// '#'-prefixed metadata header, one CSV header row, then data rows.
std::string format_table(const experiments::ScenarioResult& result);
void write_table(const experiments::ScenarioResult& result,
                 const std::filesystem::path& path);

/// Validation report as a table: one record per grid point with method
/// values and deviations; summary in the metadata header.
experiments::ScenarioResult validation_table(
    const oracle::ValidationReport& report);

}  // namespace viag::io
