#include "eswp/snapshot_io.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <vector>

#include "eswp/errors.hpp"

namespace eswp {

namespace {

constexpr std::array<char, 4> kMagic = {'E', 'S', 'W', 'P'};

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  const U bits = std::bit_cast<U>(value);
  for (std::size_t b = 0; b < sizeof(U); ++b) {
    out.push_back(static_cast<unsigned char>((bits >> (8 * b)) & 0xFFu));
  }
}

template <typename T>
T get_le(const unsigned char* p) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) bits |= static_cast<U>(p[b]) << (8 * b);
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_density_snapshot(const WaveField& psi, const std::filesystem::path& path) {
  const Grid& g = psi.grid;
  if (g.nx() > std::numeric_limits<std::uint32_t>::max() ||
      g.nz() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("snapshot: grid too large for the format");
  }
  std::vector<unsigned char> bytes;
  bytes.reserve(kSnapshotHeaderBytes + 16 * g.size());
  bytes.insert(bytes.end(), kMagic.begin(), kMagic.end());
  put_le<std::uint32_t>(bytes, kSnapshotVersion);
  put_le<std::uint32_t>(bytes, static_cast<std::uint32_t>(g.nx()));
  put_le<std::uint32_t>(bytes, static_cast<std::uint32_t>(g.nz()));
  put_le<double>(bytes, g.dx());
  put_le<double>(bytes, g.dz());
  put_le<double>(bytes, g.x_min());
  put_le<double>(bytes, g.z_min_dom());
  put_le<double>(bytes, psi.time);
  for (const auto& a : psi.amps) {
    put_le<double>(bytes, a.real());
    put_le<double>(bytes, a.imag());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("snapshot: cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("snapshot: write failed for " + path.string());
}

WaveField read_density_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("snapshot: cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < kSnapshotHeaderBytes) {
    throw FormatError("snapshot: truncated header in " + path.string());
  }
  if (std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
    throw FormatError("snapshot: bad magic in " + path.string());
  }
  const unsigned char* p = bytes.data() + 4;
  const auto version = get_le<std::uint32_t>(p);
  if (version != kSnapshotVersion) {
    throw FormatError("snapshot: unsupported format version " + std::to_string(version));
  }
  const auto nx = get_le<std::uint32_t>(p + 4);
  const auto nz = get_le<std::uint32_t>(p + 8);
  const double dx = get_le<double>(p + 12);
  const double dz = get_le<double>(p + 20);
  const double x_min = get_le<double>(p + 28);
  const double z_min = get_le<double>(p + 36);
  const double time = get_le<double>(p + 44);
  const std::size_t count = static_cast<std::size_t>(nx) * nz;
  if (bytes.size() != kSnapshotHeaderBytes + 16 * count) {
    throw FormatError("snapshot: payload size does not match header in " + path.string());
  }
  Grid grid = [&] {
    try {
      return Grid(nx, nz, dx, dz, x_min, z_min);
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("snapshot: invalid grid in header: ") + e.what());
    }
  }();
  WaveField psi(std::move(grid), time);
  const unsigned char* data = bytes.data() + kSnapshotHeaderBytes;
  for (std::size_t n = 0; n < count; ++n) {
    psi.amps[n] = {get_le<double>(data + 16 * n), get_le<double>(data + 16 * n + 8)};
  }
  return psi;
}

void write_density_csv(const WaveField& psi, const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("csv: cannot open " + path.string());
  std::fprintf(f, "x,z,density\n");
  const Grid& g = psi.grid;
  for (std::size_t j = 0; j < g.nz(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i)
      std::fprintf(f, "%.8g,%.8g,%.8g\n", g.x(i), g.z(j), std::norm(psi.at(i, j)));
  if (std::fclose(f) != 0) throw std::runtime_error("csv: write failed for " + path.string());
}

}  // namespace eswp
