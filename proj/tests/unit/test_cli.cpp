#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "eswp/cli.hpp"
#include "eswp/manifest.hpp"
#include "eswp/snapshot_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "eswp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = eswp::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct Workspace {
  fs::path root = fs::temp_directory_path() / "eswp_test_cli";
  Workspace() {
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Workspace() { fs::remove_all(root); }

  fs::path config(const std::string& name, const std::string& extra = "",
                  const std::string& t_end = "1.2") const {
    const auto path = root / name;
    std::ofstream out(path);
    out << "preset = fig2\nnx = 32\nnz = 32\ndx = 0.5\ndz = 0.5\nx_min = -8\nz0 = 8\n"
           "dt = 0.01\nsnapshot_dt = 0.1\nimag_dt = 0.005\ngs_tol = 1e-8\nseries_stride = 5\n"
        << "t_end = " << t_end << "\n"
        << "output_dir = " << (root / "out").string() << "\n"
        << extra;
    return path;
  }
};

std::size_t count_snapshots(const fs::path& dir) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().extension() == ".eswp";
  return n;
}

}  // namespace

TEST_CASE("run writes one snapshot per interval plus series and manifest") {
  Workspace ws;
  const auto r = run({"run", ws.config("a.cfg").string(), "--csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("snapshots=12") != std::string::npos);
  const auto out = ws.root / "out";
  CHECK(count_snapshots(out) == 12);
  CHECK(fs::exists(out / "snapshot_t000.100.eswp"));
  CHECK(fs::exists(out / "snapshot_t001.200.eswp"));
  CHECK(fs::exists(out / "snapshot_t001.200.csv"));
  CHECK(fs::exists(out / "series.csv"));
  CHECK(eswp::verify_manifest(out).empty());
  CHECK(eswp::read_manifest(out).config_text.find("preset = fig2") != std::string::npos);
}

TEST_CASE("output override and groundstate") {
  Workspace ws;
  const auto dir = ws.root / "gs";
  const auto r = run({"groundstate", ws.config("a.cfg").string(), "-o", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("energy=") != std::string::npos);
  CHECK(fs::exists(dir / "groundstate.eswp"));
  CHECK(eswp::verify_manifest(dir).empty());
}

TEST_CASE("sweep writes per-case directories and a summary") {
  Workspace ws;
  const auto r = run({"sweep", ws.config("a.cfg", "", "0.2").string(), "--eta", "0,0.5"});
  CHECK(r.code == 0);
  const auto out = ws.root / "out";
  CHECK(count_snapshots(out / "eta_0") == 2);
  CHECK(count_snapshots(out / "eta_0.5") == 2);
  std::ifstream in(out / "sweep_summary.csv");
  std::string header, row;
  std::getline(in, header);
  CHECK(header.rfind("eta,width_slope", 0) == 0);
  std::size_t rows = 0;
  while (std::getline(in, row)) ++rows;
  CHECK(rows == 2);
}

TEST_CASE("diffract on a plane-wave snapshot reports a single order") {
  Workspace ws;
  const auto g = eswp::make_grid(64, 32, 0.25, 0.5, -8.0, -2.0);
  const double q = g.qx(8);  // 2 pi * 8 / 16 = pi
  const auto psi = eswp::normalize(eswp::sample_field(
      g, [&](double x, double) { return std::polar(1.0, q * x); }));
  const auto path = ws.root / "plane.eswp";
  eswp::write_density_snapshot(psi, path);
  const auto r = run({"diffract", path.string(), "--phi-in", "60"});
  CHECK(r.code == 0);
  CHECK(r.out.find("momentum peaks (1)") != std::string::npos);
  CHECK(r.out.find("bragg orders") != std::string::npos);
}

TEST_CASE("params prints the conversion report") {
  Workspace ws;
  const auto r = run({"params", ws.config("a.cfg").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("kappa_per_m") != std::string::npos);
}

TEST_CASE("failures exit nonzero with a one-line cause") {
  Workspace ws;
  SUBCASE("bad config") {
    const auto r = run({"run", ws.config("bad.cfg", "bogus = 1\n").string()});
    CHECK(r.code != 0);
    CHECK(r.err.rfind("error: line 15", 0) == 0);
    CHECK(r.err.find('\n') == r.err.size() - 1);
  }
  SUBCASE("missing config") {
    CHECK(run({"run", (ws.root / "missing.cfg").string()}).code != 0);
  }
  SUBCASE("corrupt snapshot") {
    std::ofstream(ws.root / "junk.eswp") << "nope";
    const auto r = run({"diffract", (ws.root / "junk.eswp").string()});
    CHECK(r.code != 0);
    CHECK(r.err.rfind("error: ", 0) == 0);
  }
  SUBCASE("unknown subcommand") {
    CHECK(run({"launch"}).code != 0);
    CHECK(run({}).code != 0);
  }
}
