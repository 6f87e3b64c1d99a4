#include "eswp/series_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "eswp/errors.hpp"

namespace eswp {

std::string format_series(const TimeSeries& s) {
  std::string out = std::string(kSeriesHeader) + "\n";
  char buf[512];
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t[i],
                  s.mean_z[i], s.mean_x[i], s.sigma_x[i], s.energy[i], s.norm[i],
                  s.edge_density[i]);
    out += buf;
  }
  return out;
}

void write_series(const TimeSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("series: cannot open " + path.string());
  out << format_series(series);
  if (!out) throw std::runtime_error("series: write failed for " + path.string());
}

TimeSeries read_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("series: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kSeriesHeader) {
    throw FormatError("series: unexpected header in " + path.string());
  }
  TimeSeries s;
  std::vector<double>* columns[] = {&s.t,    &s.mean_z, &s.mean_x,      &s.sigma_x,
                                    &s.energy, &s.norm, &s.edge_density};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    for (auto* col : columns) {
      if (!std::getline(row, cell, ',')) throw FormatError("series: short row in " + path.string());
      col->push_back(std::strtod(cell.c_str(), nullptr));
    }
  }
  return s;
}

}  // namespace eswp
