#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "eswp/grid.hpp"
#include "eswp/potentials.hpp"

namespace eswp {

/// Everything needed to reproduce a run. Parsed from key = value text.
struct RunConfig {
  SimParams sim;
  std::size_t nx = Grid::kProductionPoints;
  std::size_t nz = Grid::kProductionPoints;
  double dx = Grid::kProductionSpacing;
  double dz = Grid::kProductionSpacing;
  double x_min = Grid::kProductionXMin;
  double z_min_dom = Grid::kProductionZMin;
  double atoms = 3.0;
  std::string output_dir = "out";
  std::size_t series_stride = 100;
  std::string preset;

  Grid grid() const { return Grid(nx, nz, dx, dz, x_min, z_min_dom); }

  bool operator==(const RunConfig&) const = default;
};

/// Parses UTF-8 "key = value" lines; '#' starts a comment. Presets
/// (fig2, fig3, fig4, fig5) are applied first regardless of their position,
/// then explicit keys override them. Unless given explicitly, G defaults to
/// 0.086 * N and confine_x to (eta == 0). Throws ConfigError carrying the
/// offending line number.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::filesystem::path& path);

/// Emits every key explicitly; parse_config(print_config(c)) == c.
std::string print_config(const RunConfig& config);

/// Modulation depth for a figure preset name; throws for unknown names.
double preset_eta(std::string_view name);

}  // namespace eswp
