#pragma once

#include <string>
#include <vector>

#include "fnfpad/illumcues.hpp"
#include "fnfpad/image.hpp"

namespace fnfpad {

// Self-contained SVG snippets for the report figures. Numeric content is
// embedded verbatim in data-value attributes so documents stay diffable.

/// One shaded cell per block; fill intensity equals the block value.
std::string svg_block_map(const BlockGrid& grid, const std::string& title);

/// 3x3 shaded matrix, cell fill scaled from [-1,1] (or [0,max] for MI).
std::string svg_matrix_heatmap(const Matrix3& m, const std::string& title);

/// Polyline of a profile (radial spectrum or ridge profile); an optional
/// horizontal marker line, e.g. the ridge/valley threshold.
std::string svg_profile(const std::vector<double>& values, const std::string& title,
                        const double* marker = nullptr);

}  // namespace fnfpad
