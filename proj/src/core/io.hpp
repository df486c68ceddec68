// Deterministic artifact emission: CSV grids, ASCII PGM heatmaps and text
// reports, all written atomically (temp file + rename) with byte-stable
// formatting.

#pragma once

#include <string>

#include "core/grid.hpp"
#include "core/scan.hpp"

namespace kfid {

// "%.9g": nine significant digits, '.' decimal point, no locale.
std::string format_value(double v);

// Header "kx,ky,value"; rows k_x-fastest with k_y ascending; LF endings.
// Sentinels appear as the literal "-1".
void write_grid_csv(const Grid2D& grid, const std::string& path);
std::string grid_csv_text(const Grid2D& grid);

// ASCII PGM ("P2"), maxval 255, v -> round-half-up(255 v), sentinel -> 0,
// rows k_y descending (image convention). Values must lie in [0,1] or be the
// sentinel.
void write_pgm(const Grid2D& grid, const std::string& path);
std::string pgm_text(const Grid2D& grid);

// Header "kx,ky,s,gap"; events in report order.
void write_segment_csv(const SegmentReport& report, const std::string& path);
std::string segment_csv_text(const SegmentReport& report);

void write_text(const std::string& text, const std::string& path);

}  // namespace kfid
