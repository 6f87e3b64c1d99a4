#pragma once

#include <filesystem>
#include <string>

#include "eswp/observables.hpp"

namespace eswp {

inline constexpr const char* kSeriesHeader = "t,mean_z,mean_x,sigma_x,energy,norm,edge_density";

/// One row per recorded sample, every value printed with 17 significant digits.
void write_series(const TimeSeries& series, const std::filesystem::path& path);
std::string format_series(const TimeSeries& series);
TimeSeries read_series(const std::filesystem::path& path);

}  // namespace eswp
