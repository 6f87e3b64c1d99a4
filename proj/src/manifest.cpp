#include "eswp/manifest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <memory>
#include <set>
#include <stdexcept>

#include "json.hpp"

#ifndef ESWP_VERSION
#define ESWP_VERSION "unknown"
#endif

namespace eswp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kManifestName = "manifest.json";

}  // namespace

std::string code_version() { return ESWP_VERSION; }

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("sha256: cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest init failed");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    const auto got = in.gcount();
    if (got > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(got));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

void collect_files(RunManifest& manifest, const fs::path& dir) {
  std::vector<FileRecord> records;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), dir).generic_string();
    if (rel == kManifestName) continue;
    records.push_back({rel, entry.file_size(), sha256_file(entry.path())});
  }
  std::sort(records.begin(), records.end(),
            [](const FileRecord& a, const FileRecord& b) { return a.path < b.path; });
  manifest.files = std::move(records);
}

void write_manifest(const RunManifest& m, const fs::path& dir) {
  json j;
  j["command"] = m.command;
  j["config"] = m.config_text;
  j["version"] = m.version;
  j["phase_seconds"] = m.phase_seconds;
  j["diagnostics"] = m.diagnostics;
  j["files"] = json::array();
  for (const auto& f : m.files) {
    j["files"].push_back({{"path", f.path}, {"bytes", f.bytes}, {"sha256", f.sha256}});
  }
  std::ofstream out(dir / kManifestName, std::ios::trunc);
  if (!out) throw std::runtime_error("manifest: cannot write in " + dir.string());
  out << j.dump(2) << "\n";
}

RunManifest read_manifest(const fs::path& dir) {
  std::ifstream in(dir / kManifestName);
  if (!in) throw std::runtime_error("manifest: missing in " + dir.string());
  const json j = json::parse(in);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.config_text = j.at("config").get<std::string>();
  m.version = j.at("version").get<std::string>();
  // JSON has no NaN; non-finite values are written as null.
  auto numbers = [](const nlohmann::json& obj) {
    std::map<std::string, double> out;
    for (const auto& [key, value] : obj.items()) {
      out[key] = value.is_null() ? std::numeric_limits<double>::quiet_NaN() : value.get<double>();
    }
    return out;
  };
  m.phase_seconds = numbers(j.at("phase_seconds"));
  m.diagnostics = numbers(j.at("diagnostics"));
  for (const auto& f : j.at("files")) {
    m.files.push_back({f.at("path").get<std::string>(), f.at("bytes").get<std::uintmax_t>(),
                       f.at("sha256").get<std::string>()});
  }
  return m;
}

std::vector<std::string> verify_manifest(const fs::path& dir) {
  const RunManifest m = read_manifest(dir);
  std::vector<std::string> problems;
  std::set<std::string> listed;
  for (const auto& f : m.files) {
    listed.insert(f.path);
    const fs::path p = dir / f.path;
    if (!fs::exists(p)) {
      problems.push_back(f.path + ": missing");
    } else if (fs::file_size(p) != f.bytes || sha256_file(p) != f.sha256) {
      problems.push_back(f.path + ": checksum mismatch");
    }
  }
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), dir).generic_string();
    if (rel != kManifestName && !listed.count(rel)) problems.push_back(rel + ": not in inventory");
  }
  return problems;
}

}  // namespace eswp
