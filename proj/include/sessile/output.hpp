#pragma once

#include <string>
#include <vector>

#include "sessile/config.hpp"
#include "sessile/dynamics.hpp"
#include "sessile/equilibrium.hpp"

namespace sessile {

// %.17g
std::string format_number(double v);

std::string equilibrium_csv(const EquilibriumShape& shape);
std::string summary_csv(const EquilibriumShape& shape);
std::string timeseries_csv(const std::vector<DiagnosticsRow>& rows);
// Reference-domain node coordinates with velocity and pressure; pressure at
// edge midpoints is the mean of the two edge vertices.
std::string field_csv(const Mesh& mesh, const FlowField& flow);

// Creates the directory (and parents) if needed. Throws IoError.
void ensure_directory(const std::string& dir);
// Writes the whole file or throws IoError.
void write_file(const std::string& path, const std::string& content);
std::string join_path(const std::string& dir, const std::string& name);

}  // namespace sessile
