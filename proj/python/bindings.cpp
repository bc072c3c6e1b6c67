// Python bindings. Fields cross the boundary as complex128 numpy arrays
// shaped like the grid (spectral data in FFT order).

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>
#include <pybind11/complex.h>

#include <string>

#include "kgsplit/diagnostics.hpp"
#include "kgsplit/errors.hpp"
#include "kgsplit/operators.hpp"
#include "kgsplit/rough_data.hpp"
#include "kgsplit/schemes.hpp"
#include "kgsplit/study.hpp"

namespace py = pybind11;
using namespace kgsplit;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

std::vector<py::ssize_t> shape_of(const TorusGrid& grid) {
  std::vector<py::ssize_t> shape;
  for (int n : grid.mode_counts()) shape.push_back(n);
  return shape;
}

ComplexArray to_array(const SpectralField& f) {
  ComplexArray out(shape_of(f.grid()));
  std::copy(f.data().begin(), f.data().end(), out.mutable_data());
  return out;
}

SpectralField from_array(const TorusGrid& grid, Representation rep, const ComplexArray& a) {
  if (static_cast<std::size_t>(a.size()) != grid.size()) {
    throw ContractViolation("array size does not match the grid");
  }
  return SpectralField(grid, rep, std::vector<Complex>(a.data(), a.data() + a.size()));
}

Representation parse_rep(const std::string& s) {
  if (s == "spectral") return Representation::Spectral;
  if (s == "physical") return Representation::Physical;
  throw ConfigError("representation must be 'spectral' or 'physical'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral splitting integrators for the nonlinear Klein-Gordon equation";
  m.attr("__version__") = std::string(software_version());

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ContractViolation>(m, "ContractViolation", error.ptr());
  py::register_exception<SingularOperator>(m, "SingularOperator", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());
  py::register_exception<BlowUp>(m, "BlowUp", error.ptr());

  py::class_<TorusGrid>(m, "TorusGrid")
      .def(py::init<std::vector<int>>(), py::arg("modes"))
      .def_property_readonly("dim", &TorusGrid::dim)
      .def_property_readonly("modes", &TorusGrid::mode_counts)
      .def_property_readonly("size", &TorusGrid::size)
      .def_property_readonly("volume", &TorusGrid::volume)
      .def("wavenumber", &TorusGrid::wavenumber, py::arg("axis"), py::arg("index"))
      .def("__eq__", [](const TorusGrid& a, const TorusGrid& b) { return a == b; })
      .def("__repr__", [](const TorusGrid& g) {
        std::string s = "TorusGrid([";
        for (std::size_t i = 0; i < g.mode_counts().size(); ++i) {
          s += (i ? ", " : "") + std::to_string(g.mode_counts()[i]);
        }
        return s + "])";
      });

  py::class_<SpectralField>(m, "SpectralField")
      .def(py::init(&from_array), py::arg("grid"), py::arg("rep"), py::arg("data"))
      .def(py::init([](const TorusGrid& g, const std::string& rep, const ComplexArray& a) {
             return from_array(g, parse_rep(rep), a);
           }),
           py::arg("grid"), py::arg("rep"), py::arg("data"))
      .def_property_readonly("grid", &SpectralField::grid)
      .def_property_readonly("rep", &SpectralField::rep)
      .def_property_readonly("is_spectral", &SpectralField::is_spectral)
      .def("array", &to_array, "Copy of the data as a complex128 array shaped like the grid")
      .def("coefficient", [](const SpectralField& f, std::vector<int> k) {
        std::array<int, 3> kk{};
        if (k.size() > 3) throw ContractViolation("wavevector has more than 3 components");
        std::copy(k.begin(), k.end(), kk.begin());
        return f.coefficient(kk);
      });

  py::enum_<Representation>(m, "Representation")
      .value("Physical", Representation::Physical)
      .value("Spectral", Representation::Spectral);

  py::enum_<ZeroModePolicy>(m, "ZeroModePolicy")
      .value("DropZeroMode", ZeroModePolicy::DropZeroMode)
      .value("Strict", ZeroModePolicy::Strict);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double mass, double lambda, ZeroModePolicy zm) {
             ModelParams p{mass, lambda, zm};
             p.validate();
             return p;
           }),
           py::arg("m") = 1.0, py::arg("lam") = -1.0,
           py::arg("zero_mode") = ZeroModePolicy::DropZeroMode)
      .def_readwrite("m", &ModelParams::m)
      .def_readwrite("lam", &ModelParams::lambda)
      .def_readwrite("zero_mode", &ModelParams::zero_mode);

  m.def("to_spectral", &as_spectral, py::arg("field"));
  m.def("to_physical", &as_physical, py::arg("field"));
  m.def("apply_bracket", &apply_bracket, py::arg("field"), py::arg("params"), py::arg("alpha"));
  m.def("apply_linear_phase", &apply_linear_phase, py::arg("field"), py::arg("params"), py::arg("t"));
  m.def("projector", &projector, py::arg("field"), py::arg("tau"));
  m.def("real_cube", &real_cube, py::arg("field"), py::arg("dealias") = false);
  m.def("sobolev_norm", &sobolev_norm, py::arg("field"), py::arg("params"), py::arg("s"));

  py::class_<StateU>(m, "StateU")
      .def(py::init<SpectralField, double, ModelParams>(), py::arg("u"), py::arg("time") = 0.0,
           py::arg("params") = ModelParams{})
      .def_readwrite("u", &StateU::u)
      .def_readwrite("time", &StateU::time)
      .def_readwrite("params", &StateU::params);

  py::class_<SchemeSpec>(m, "SchemeSpec")
      .def(py::init([](const std::string& kind, double tau, ModelParams params, bool dealias) {
             return SchemeSpec{parse_scheme_kind(kind), tau, params, dealias};
           }),
           py::arg("kind"), py::arg("tau"), py::arg("params") = ModelParams{},
           py::arg("dealias") = false)
      .def_property_readonly("kind", [](const SchemeSpec& s) { return std::string(to_string(s.kind)); })
      .def_readwrite("tau", &SchemeSpec::tau)
      .def_readwrite("params", &SchemeSpec::params)
      .def_readwrite("dealias", &SchemeSpec::dealias);

  m.def("linear_flow", &linear_flow, py::arg("state"), py::arg("t"));
  m.def("nonlinear_flow", &nonlinear_flow, py::arg("state"), py::arg("t"), py::arg("dealias") = false);
  m.def("step", &step, py::arg("state"), py::arg("spec"));

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("states", &Trajectory::states)
      .def_readonly("tau", &Trajectory::tau)
      .def_readonly("provenance", &Trajectory::provenance);

  m.def("evolve", &evolve, py::arg("u0"), py::arg("spec"), py::arg("n_steps"),
        py::arg("sample_every") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("evolve_final", &evolve_final, py::arg("u0"), py::arg("spec"), py::arg("n_steps"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<RoughDataSpec>(m, "RoughDataSpec")
      .def(py::init([](double s, double epsilon, double norm_index, std::uint64_t seed,
                       std::vector<int> modes, ModelParams params) {
             return RoughDataSpec{s, epsilon, norm_index, seed, TorusGrid(std::move(modes)), params};
           }),
           py::arg("s") = 1.0, py::arg("epsilon") = 0.0, py::arg("norm_index") = 0.5,
           py::arg("seed") = 0, py::arg("modes") = std::vector<int>{64, 64},
           py::arg("params") = ModelParams{});
  m.def("generate", &generate, py::arg("spec"));
  m.def("u_from_z", &u_from_z, py::arg("z0"), py::arg("z1"), py::arg("params"));
  m.def("z_from_u", &z_from_u, py::arg("state"));

  m.def("energy", &energy, py::arg("state"));
  m.def("max_relative_energy_drift", &max_relative_energy_drift, py::arg("trajectory"));
  m.def("error_norm", &error_norm, py::arg("a"), py::arg("b"), py::arg("params"), py::arg("s"));
  m.def(
      "discrete_bourgain_norm",
      [](const Trajectory& t, double s, double b, const ModelParams& params, const std::string& window,
         const std::string& frequency, bool plus_sign) {
        BourgainSpec spec{s, b, 0.0, parse_bourgain_window(window),
                          parse_bourgain_frequency(frequency), plus_sign};
        return discrete_bourgain_norm(t, spec, params);
      },
      py::arg("trajectory"), py::arg("s"), py::arg("b"), py::arg("params") = ModelParams{},
      py::arg("window") = "none", py::arg("frequency") = "abs-k", py::arg("plus_sign") = false);

  py::class_<OrderFit>(m, "OrderFit")
      .def_readonly("order", &OrderFit::order)
      .def_readonly("constant", &OrderFit::constant)
      .def_readonly("r_squared", &OrderFit::r_squared);
  m.def("fit_order", [](std::vector<double> taus, std::vector<double> errors) {
    return fit_order(taus, errors);
  }, py::arg("taus"), py::arg("errors"));

  py::class_<StudyConfig>(m, "StudyConfig")
      .def_property_readonly("grid", [](const StudyConfig& c) { return c.grid; })
      .def_property_readonly("scheme", [](const StudyConfig& c) { return std::string(to_string(c.scheme)); })
      .def_readwrite("tau_list", &StudyConfig::tau_list)
      .def_readwrite("tau_ref", &StudyConfig::tau_ref)
      .def_readwrite("final_time", &StudyConfig::final_time)
      .def_readwrite("error_index", &StudyConfig::error_index)
      .def_readwrite("threads", &StudyConfig::threads)
      .def_property(
          "seed", [](const StudyConfig& c) { return c.data.seed; },
          [](StudyConfig& c, std::uint64_t s) { c.data.seed = s; })
      .def_property(
          "output_dir", [](const StudyConfig& c) { return c.outputs.dir; },
          [](StudyConfig& c, std::string d) { c.outputs.dir = std::move(d); })
      .def("apply_conventions", &apply_conventions, py::arg("switches"))
      .def("validate", [](const StudyConfig& c) { validate(c); })
      .def("canonical_text", [](const StudyConfig& c) { return canonical_text(c); })
      .def("hash", [](const StudyConfig& c) { return hex64(config_hash(c)); });

  m.def("load_config", &load_config, py::arg("path"));
  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("initial_state", &initial_state, py::arg("config"));
  m.def("run_reference", py::overload_cast<const StudyConfig&>(&run_reference), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<StudyRow>(m, "StudyRow")
      .def_readonly("tau", &StudyRow::tau)
      .def_readonly("error", &StudyRow::error)
      .def_readonly("wall_time_seconds", &StudyRow::wall_time_seconds)
      .def_readonly("projection_loss", &StudyRow::projection_loss)
      .def_readonly("energy_drift", &StudyRow::energy_drift);

  py::class_<StudyResult>(m, "StudyResult")
      .def_readonly("config", &StudyResult::config)
      .def_readonly("rows", &StudyResult::rows)
      .def_readonly("fit", &StudyResult::fit)
      .def_readonly("flags", &StudyResult::flags)
      .def_property_readonly("manifest", [](const StudyResult& r) {
        py::dict d;
        for (const auto& [k, v] : r.manifest) d[py::str(k)] = v;
        return d;
      })
      .def("write_outputs", [](const StudyResult& r) { write_outputs(r); });

  m.def("run_study", &run_study, py::arg("config"), py::call_guard<py::gil_scoped_release>());
}
