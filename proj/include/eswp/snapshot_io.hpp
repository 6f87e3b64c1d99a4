#pragma once

#include <cstdint>
#include <filesystem>

#include "eswp/wave_field.hpp"

namespace eswp {

/// Binary layout, all little-endian:
///   "ESWP" magic, u32 version, u32 nx, u32 nz,
///   f64 dx, f64 dz, f64 x_min, f64 z_min_dom, f64 time,
///   nx * nz pairs of (f64 re, f64 im), z outer.
inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 4 + 3 * 4 + 5 * 8;

void write_density_snapshot(const WaveField& psi, const std::filesystem::path& path);
WaveField read_density_snapshot(const std::filesystem::path& path);

/// |psi|^2 as "x,z,density" rows for plotting. Lossy.
void write_density_csv(const WaveField& psi, const std::filesystem::path& path);

}  // namespace eswp
