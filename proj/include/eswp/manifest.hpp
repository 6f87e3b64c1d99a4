#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace eswp {

struct FileRecord {
  std::string path;  ///< relative to the run directory
  std::uintmax_t bytes = 0;
  std::string sha256;
};

/// Provenance record written as manifest.json next to a run's outputs.
struct RunManifest {
  std::string command;
  std::string config_text;
  std::string version;
  std::map<std::string, double> phase_seconds;
  std::map<std::string, double> diagnostics;
  std::vector<FileRecord> files;
};

/// Version string compiled into the library.
std::string code_version();

std::string sha256_file(const std::filesystem::path& path);

/// Adds every regular file under dir (except manifest.json) to the inventory,
/// sorted by path, with size and checksum.
void collect_files(RunManifest& manifest, const std::filesystem::path& dir);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& dir);
RunManifest read_manifest(const std::filesystem::path& dir);

/// Paths whose checksum or size no longer match, plus files missing from the
/// inventory. Empty means the directory verifies.
std::vector<std::string> verify_manifest(const std::filesystem::path& dir);

}  // namespace eswp
