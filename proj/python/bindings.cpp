#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "eswp/config.hpp"
#include "eswp/diffraction.hpp"
#include "eswp/errors.hpp"
#include "eswp/manifest.hpp"
#include "eswp/observables.hpp"
#include "eswp/propagator.hpp"
#include "eswp/runner.hpp"
#include "eswp/snapshot_io.hpp"

namespace py = pybind11;
using namespace eswp;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Fields cross the boundary as (nz, nx) arrays, z outer like the C++ storage.
template <typename T>
py::array_t<T> to_array(const Grid& g, const std::vector<T>& values) {
  py::array_t<T> out({static_cast<py::ssize_t>(g.nz()), static_cast<py::ssize_t>(g.nx())});
  std::memcpy(out.mutable_data(), values.data(), values.size() * sizeof(T));
  return out;
}

template <typename T, typename A>
std::vector<T> from_array(const Grid& g, const A& a) {
  if (a.ndim() != 2 || static_cast<std::size_t>(a.shape(0)) != g.nz() ||
      static_cast<std::size_t>(a.shape(1)) != g.nx()) {
    throw std::invalid_argument("array shape must be (nz, nx) of the grid");
  }
  return std::vector<T>(a.data(), a.data() + a.size());
}

py::dict series_dict(const TimeSeries& s) {
  py::dict d;
  d["t"] = s.t;
  d["mean_z"] = s.mean_z;
  d["mean_x"] = s.mean_x;
  d["sigma_x"] = s.sigma_x;
  d["energy"] = s.energy;
  d["norm"] = s.norm;
  d["edge_density"] = s.edge_density;
  return d;
}

}  // namespace

PYBIND11_MODULE(_eswp, m) {
  m.doc() = "Condensate bouncing on an evanescent standing-wave mirror";
  m.attr("__version__") = code_version();

  py::register_exception<StepError>(m, "StepError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  py::class_<Grid>(m, "Grid")
      .def(py::init<std::size_t, std::size_t, double, double, double, double>(), py::arg("nx"),
           py::arg("nz"), py::arg("dx"), py::arg("dz"), py::arg("x_min"), py::arg("z_min_dom"))
      .def_static("production", &Grid::production)
      .def_property_readonly("nx", &Grid::nx)
      .def_property_readonly("nz", &Grid::nz)
      .def_property_readonly("dx", &Grid::dx)
      .def_property_readonly("dz", &Grid::dz)
      .def_property_readonly("x_min", &Grid::x_min)
      .def_property_readonly("z_min_dom", &Grid::z_min_dom)
      .def_property_readonly("lx", &Grid::lx)
      .def_property_readonly("lz", &Grid::lz)
      .def_property_readonly("x", [](const Grid& g) {
        py::array_t<double> out(static_cast<py::ssize_t>(g.nx()));
        auto v = out.mutable_unchecked<1>();
        for (std::size_t i = 0; i < g.nx(); ++i) v(static_cast<py::ssize_t>(i)) = g.x(i);
        return out;
      })
      .def_property_readonly("z", [](const Grid& g) {
        py::array_t<double> out(static_cast<py::ssize_t>(g.nz()));
        auto v = out.mutable_unchecked<1>();
        for (std::size_t j = 0; j < g.nz(); ++j) v(static_cast<py::ssize_t>(j)) = g.z(j);
        return out;
      })
      .def("__eq__", [](const Grid& a, const Grid& b) { return a == b; })
      .def("__repr__", [](const Grid& g) {
        return "Grid(nx=" + std::to_string(g.nx()) + ", nz=" + std::to_string(g.nz()) + ")";
      });

  py::class_<SimParams>(m, "SimParams")
      .def(py::init<>())
      .def_readwrite("k", &SimParams::k)
      .def_readwrite("G", &SimParams::G)
      .def_readwrite("V0", &SimParams::V0)
      .def_readwrite("eta", &SimParams::eta)
      .def_readwrite("nu", &SimParams::nu)
      .def_readwrite("z0", &SimParams::z0)
      .def_readwrite("dt", &SimParams::dt)
      .def_readwrite("t_end", &SimParams::t_end)
      .def_readwrite("snapshot_dt", &SimParams::snapshot_dt)
      .def_readwrite("wall_height", &SimParams::wall_height)
      .def_readwrite("confine_x", &SimParams::confine_x)
      .def_readwrite("imag_dt", &SimParams::imag_dt)
      .def_readwrite("gs_tol", &SimParams::gs_tol)
      .def_readwrite("gs_max_iter", &SimParams::gs_max_iter)
      .def("validate", &SimParams::validate);

  py::class_<WaveField>(m, "WaveField")
      .def(py::init([](const Grid& g, const ComplexArray& amps, double time) {
             WaveField psi(g, time);
             psi.amps = from_array<cplx>(g, amps);
             return psi;
           }),
           py::arg("grid"), py::arg("amps"), py::arg("time") = 0.0)
      .def_readonly("grid", &WaveField::grid)
      .def_readwrite("time", &WaveField::time)
      .def_property(
          "amps", [](const WaveField& p) { return to_array(p.grid, p.amps); },
          [](WaveField& p, const ComplexArray& a) { p.amps = from_array<cplx>(p.grid, a); })
      .def_property_readonly("density", [](const WaveField& p) {
        std::vector<double> rho(p.amps.size());
        for (std::size_t n = 0; n < rho.size(); ++n) rho[n] = std::norm(p.amps[n]);
        return to_array(p.grid, rho);
      });

  py::class_<PotentialField>(m, "PotentialField")
      .def(py::init([](const Grid& g, const RealArray& v) {
             return PotentialField{g, from_array<double>(g, v)};
           }),
           py::arg("grid"), py::arg("values"))
      .def_readonly("grid", &PotentialField::grid)
      .def_property_readonly("values",
                             [](const PotentialField& v) { return to_array(v.grid, v.values); });

  m.def("gaussian_packet", &gaussian_packet, py::arg("grid"), py::arg("x0"), py::arg("z0"),
        py::arg("sigma"), py::arg("qx0") = 0.0);
  m.def("norm", &norm);
  m.def("normalize", &normalize);
  m.def("eswp_potential", &eswp_potential, py::arg("grid"), py::arg("params"));
  m.def("initial_trap_potential", &initial_trap_potential, py::arg("grid"), py::arg("z0"));
  m.def("constant_potential", &constant_potential, py::arg("grid"), py::arg("value"));
  m.def("interaction_for_atoms", &interaction_for_atoms);

  py::class_<MirrorMinimum>(m, "MirrorMinimum")
      .def_readonly("z_min", &MirrorMinimum::z_min)
      .def_readonly("omega_z", &MirrorMinimum::omega_z);
  m.def("eswp_minimum", &eswp_minimum, py::arg("V0"), py::arg("k") = 0.066);

  py::class_<ConversionEntry>(m, "ConversionEntry")
      .def_readonly("name", &ConversionEntry::name)
      .def_readonly("computed", &ConversionEntry::computed)
      .def_readonly("reference", &ConversionEntry::reference)
      .def_readonly("relative_deviation", &ConversionEntry::relative_deviation)
      .def_readonly("flagged", &ConversionEntry::flagged);
  py::class_<ConversionReport>(m, "ConversionReport")
      .def_readonly("kappa", &ConversionReport::kappa)
      .def_readonly("entries", &ConversionReport::entries)
      .def("to_text", &ConversionReport::to_text);
  m.def("derive_sim_params", [](double atoms) {
    PhysicalParams p;
    p.atoms = atoms;
    return derive_sim_params(p);
  }, py::arg("atoms") = 3.0);

  py::enum_<Mode>(m, "Mode")
      .value("RealTime", Mode::RealTime)
      .value("ImaginaryTime", Mode::ImaginaryTime);

  py::class_<Stepper>(m, "Stepper")
      .def(py::init<WaveField, PotentialField, SimParams, Mode>(), py::arg("psi"),
           py::arg("potential"), py::arg("params"), py::arg("mode") = Mode::RealTime)
      .def("step", &Stepper::step)
      .def("advance", &Stepper::advance, py::arg("n"), py::call_guard<py::gil_scoped_release>())
      .def_property_readonly("state", &Stepper::state)
      .def_property_readonly("step_index", &Stepper::step_index)
      .def("energy", &Stepper::energy);

  py::class_<GroundState>(m, "GroundState")
      .def_readonly("psi", &GroundState::psi)
      .def_readonly("energy", &GroundState::energy)
      .def_readonly("iterations", &GroundState::iterations)
      .def_readonly("residual", &GroundState::residual)
      .def_readonly("energies", &GroundState::energies)
      .def_readonly("warnings", &GroundState::warnings);
  m.def("ground_state", &ground_state, py::arg("grid"), py::arg("trap"), py::arg("params"),
        py::arg("seed"), py::call_guard<py::gil_scoped_release>());
  m.def("default_seed", &default_seed, py::arg("grid"), py::arg("z0"));

  py::class_<Snapshot>(m, "Snapshot")
      .def_readonly("time", &Snapshot::time)
      .def_readonly("psi", &Snapshot::psi);
  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("ground", &Trajectory::ground)
      .def_readonly("snapshots", &Trajectory::snapshots)
      .def_property_readonly("series", [](const Trajectory& t) { return series_dict(t.series); })
      .def_readonly("norm_drift", &Trajectory::norm_drift)
      .def_readonly("energy_drift", &Trajectory::energy_drift)
      .def_readonly("max_edge_density", &Trajectory::max_edge_density)
      .def_readonly("warnings", &Trajectory::warnings);
  m.def("run_release", [](const Grid& g, const SimParams& p, std::size_t stride) {
    ReleaseOptions opt;
    opt.series_stride = stride;
    py::gil_scoped_release release;
    return run_release(g, p, opt);
  }, py::arg("grid"), py::arg("params"), py::arg("series_stride") = 100);

  m.def("mean_x", &mean_x);
  m.def("mean_z", &mean_z);
  m.def("sigma_x", &sigma_x);
  m.def("sigma_z", &sigma_z);
  m.def("energy", &energy, py::arg("psi"), py::arg("potential"), py::arg("k"), py::arg("G"));
  m.def("momentum_marginal_qx", [](const WaveField& psi) {
    const auto marg = marginal_qx(momentum_density(psi));
    return py::make_tuple(marg.q, marg.density);
  });

  py::class_<BounceReport>(m, "BounceReport")
      .def_readonly("peak_times", &BounceReport::peak_times)
      .def_readonly("peak_heights", &BounceReport::peak_heights)
      .def_readonly("period_mean", &BounceReport::period_mean)
      .def_readonly("period_trend", &BounceReport::period_trend)
      .def_readonly("decay_per_bounce", &BounceReport::decay_per_bounce);
  m.def("bounce_report", [](std::vector<double> t, std::vector<double> z, double frac) {
    return bounce_report(std::span<const double>(t), std::span<const double>(z), frac);
  }, py::arg("t"), py::arg("z"), py::arg("prominence_frac") = 0.1);
  m.def("width_growth", [](std::vector<double> t, std::vector<double> sigma, double start) {
    return width_growth(std::span<const double>(t), std::span<const double>(sigma), start);
  }, py::arg("t"), py::arg("sigma"), py::arg("t_fit_start") = 10.0);

  py::class_<GratingGeometry>(m, "GratingGeometry")
      .def(py::init([](double d, double phi_in, double lambda_db, double E0) {
             GratingGeometry g{d, phi_in, lambda_db, E0};
             g.validate();
             return g;
           }),
           py::arg("d"), py::arg("phi_in"), py::arg("lambda_db"), py::arg("E0") = 0.0)
      .def_readonly("d", &GratingGeometry::d)
      .def_readonly("phi_in", &GratingGeometry::phi_in)
      .def_readonly("lambda_db", &GratingGeometry::lambda_db)
      .def_readonly("E0", &GratingGeometry::E0)
      .def_property_readonly("lambda_perp", &GratingGeometry::lambda_perp);
  py::class_<BraggOrder>(m, "BraggOrder")
      .def_readonly("n", &BraggOrder::n)
      .def_readonly("theta", &BraggOrder::theta)
      .def_readonly("azimuthal", &BraggOrder::azimuthal);
  py::class_<MomentumPeak>(m, "MomentumPeak")
      .def_readonly("q", &MomentumPeak::q)
      .def_readonly("weight", &MomentumPeak::weight);
  m.def("de_broglie_from_energy", &de_broglie_from_energy, py::arg("E0"), py::arg("k"));
  m.def("make_geometry", &make_geometry, py::arg("d"), py::arg("phi_in"), py::arg("E0"),
        py::arg("k"));
  m.def("bragg_orders", &bragg_orders, py::arg("geometry"), py::arg("n_max") = 8);
  m.def("azimuthal_splitting", &azimuthal_splitting);
  m.def("invert_period", &invert_period, py::arg("splitting"), py::arg("lambda_db"),
        py::arg("max_period") = std::numeric_limits<double>::infinity());
  m.def("extract_peaks", [](std::vector<double> q, std::vector<double> rho, double frac) {
    return extract_peaks(q, rho, frac);
  }, py::arg("q"), py::arg("density"), py::arg("threshold_frac") = 0.05);

  py::class_<LadderAssignment>(m, "LadderAssignment")
      .def_readonly("n", &LadderAssignment::n)
      .def_readonly("q", &LadderAssignment::q)
      .def_readonly("offset", &LadderAssignment::offset)
      .def_readonly("weight", &LadderAssignment::weight);
  py::class_<DiffractOptions>(m, "DiffractOptions")
      .def(py::init<>())
      .def_readwrite("phi_in_deg", &DiffractOptions::phi_in_deg)
      .def_readwrite("nu", &DiffractOptions::nu)
      .def_readwrite("k", &DiffractOptions::k)
      .def_readwrite("threshold_frac", &DiffractOptions::threshold_frac)
      .def_readwrite("n_max", &DiffractOptions::n_max);
  py::class_<DiffractionAnalysis>(m, "DiffractionAnalysis")
      .def_readonly("time", &DiffractionAnalysis::time)
      .def_readonly("kinetic_energy", &DiffractionAnalysis::kinetic_energy)
      .def_readonly("geometry", &DiffractionAnalysis::geometry)
      .def_readonly("peaks", &DiffractionAnalysis::peaks)
      .def_readonly("orders", &DiffractionAnalysis::orders)
      .def_readonly("splitting", &DiffractionAnalysis::splitting)
      .def_readonly("momentum_cell", &DiffractionAnalysis::momentum_cell)
      .def("to_text", &DiffractionAnalysis::to_text);
  m.def("analyze_diffraction", &analyze_diffraction, py::arg("psi"),
        py::arg("options") = DiffractOptions{});

  py::class_<RunConfig>(m, "RunConfig")
      .def_readwrite("sim", &RunConfig::sim)
      .def_readwrite("nx", &RunConfig::nx)
      .def_readwrite("nz", &RunConfig::nz)
      .def_readwrite("dx", &RunConfig::dx)
      .def_readwrite("dz", &RunConfig::dz)
      .def_readwrite("x_min", &RunConfig::x_min)
      .def_readwrite("z_min_dom", &RunConfig::z_min_dom)
      .def_readwrite("atoms", &RunConfig::atoms)
      .def_readwrite("output_dir", &RunConfig::output_dir)
      .def_readwrite("series_stride", &RunConfig::series_stride)
      .def_readonly("preset", &RunConfig::preset)
      .def("grid", &RunConfig::grid);
  m.def("parse_config", [](const std::string& text) { return parse_config(text); });
  m.def("load_config", &load_config);
  m.def("print_config", &print_config);

  py::class_<ReleaseSummary>(m, "ReleaseSummary")
      .def_readonly("dir", &ReleaseSummary::dir)
      .def_readonly("eta", &ReleaseSummary::eta)
      .def_readonly("snapshots", &ReleaseSummary::snapshots)
      .def_readonly("ground_energy", &ReleaseSummary::ground_energy)
      .def_readonly("norm_drift", &ReleaseSummary::norm_drift)
      .def_readonly("energy_drift", &ReleaseSummary::energy_drift)
      .def_readonly("max_edge_density", &ReleaseSummary::max_edge_density)
      .def_readonly("width_slope", &ReleaseSummary::width_slope)
      .def_readonly("bounce", &ReleaseSummary::bounce)
      .def_readonly("warnings", &ReleaseSummary::warnings);
  m.def("run_release_to_dir", [](const RunConfig& cfg, const std::filesystem::path& dir, bool csv) {
    py::gil_scoped_release release;
    return run_release_to_dir(cfg, dir, std::nullopt, csv, "python");
  }, py::arg("config"), py::arg("dir"), py::arg("write_csv") = false);

  m.def("write_density_snapshot", &write_density_snapshot, py::arg("psi"), py::arg("path"));
  m.def("read_density_snapshot", &read_density_snapshot, py::arg("path"));
}
