#include <pybind11/complex.h>
#include <pybind11/stl/filesystem.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <string>
#include <vector>

#include "dyadic_ns/field_io.hpp"
#include "dyadic_ns/harness.hpp"
#include "dyadic_ns/heat_oseen.hpp"
#include "dyadic_ns/littlewood_paley.hpp"
#include "dyadic_ns/mild_solver.hpp"
#include "dyadic_ns/norms.hpp"
#include "dyadic_ns/paraproduct.hpp"
#include "dyadic_ns/spectral_core.hpp"

namespace py = pybind11;
using namespace dyadic_ns;

namespace {

std::vector<py::ssize_t> field_shape(const Grid& g, int components) {
  std::vector<py::ssize_t> shape{components};
  for (int a = 0; a < g.dim(); ++a) shape.push_back(g.n());
  return shape;
}

py::array_t<complex_t> coefficient_array(const SpectralField& f) {
  py::array_t<complex_t> out(field_shape(f.grid(), f.components()));
  std::memcpy(out.mutable_data(), f.coeffs().data(), f.coeffs().size() * sizeof(complex_t));
  return out;
}

py::array_t<complex_t> physical_array(const SpectralField& f) {
  const PhysicalField p = to_physical(f);
  py::array_t<complex_t> out(field_shape(f.grid(), f.components()));
  std::memcpy(out.mutable_data(), p.values.data(), p.values.size() * sizeof(complex_t));
  return out;
}

SpectralField field_from_samples(const Grid& g, py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  const py::ssize_t per = static_cast<py::ssize_t>(g.size());
  if (a.size() % per != 0) throw std::invalid_argument("sample count is not a multiple of n^dim");
  const int components = static_cast<int>(a.size() / per);
  return from_physical(g, components, std::span<const double>(a.data(), static_cast<std::size_t>(a.size())));
}

SuiteConfig config_from_dict(const py::dict& d) {
  SuiteConfig cfg;
  for (const auto& [key, value] : d) cfg.set(py::str(key), py::str(value));
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Littlewood-Paley analysis and mild Navier-Stokes solutions on the periodic box";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NonContraction>(m, "NonContraction", PyExc_RuntimeError);

  m.attr("INF") = kInfinity;

  py::class_<Grid>(m, "Grid")
      .def(py::init(&make_grid), py::arg("dim"), py::arg("n"))
      .def_property_readonly("dim", &Grid::dim)
      .def_property_readonly("n", &Grid::n)
      .def_property_readonly("k_max", &Grid::k_max)
      .def_property_readonly("lp_top", &Grid::lp_top)
      .def_property_readonly("max_radius", &Grid::max_radius)
      .def("__eq__", [](const Grid& a, const Grid& b) { return a == b; })
      .def("__repr__", [](const Grid& g) {
        return "Grid(dim=" + std::to_string(g.dim()) + ", n=" + std::to_string(g.n()) + ")";
      });

  py::class_<SpectralField>(m, "SpectralField")
      .def(py::init<Grid, int>(), py::arg("grid"), py::arg("components") = 1)
      .def_static("from_samples", &field_from_samples, py::arg("grid"), py::arg("samples"),
                  "Real physical samples of shape (components, n, ..., n) or (n, ..., n).")
      .def_static(
          "mode",
          [](const Grid& g, std::vector<int> k, complex_t amp, int comps) {
            if (static_cast<int>(k.size()) != g.dim()) throw std::invalid_argument("wavenumber length must equal dim");
            return SpectralField::mode(g, k, amp, comps);
          },
          py::arg("grid"), py::arg("k"), py::arg("amplitude") = complex_t(1.0), py::arg("components") = 1)
      .def_static("constant", &SpectralField::constant, py::arg("grid"), py::arg("value"), py::arg("components") = 1)
      .def_property_readonly("grid", &SpectralField::grid)
      .def_property_readonly("components", &SpectralField::components)
      .def("coefficients", &coefficient_array)
      .def("physical", &physical_array)
      .def("extract", &SpectralField::extract)
      .def("energy", &SpectralField::energy)
      .def("max_abs_coeff", &SpectralField::max_abs_coeff)
      .def("hermitian_defect", &SpectralField::hermitian_defect)
      .def("__add__", [](const SpectralField& a, const SpectralField& b) { return a + b; })
      .def("__sub__", [](const SpectralField& a, const SpectralField& b) { return a - b; })
      .def("__mul__", [](const SpectralField& f, double s) { return s * f; })
      .def("__rmul__", [](const SpectralField& f, double s) { return s * f; })
      .def("__neg__", [](const SpectralField& f) { return -1.0 * f; });

  m.def("random_band_field", &random_band_field, py::arg("seed"), py::arg("grid"), py::arg("components"),
        py::arg("gamma"), py::arg("divergence_free") = false);
  m.def("random_packet_field", &random_packet_field, py::arg("seed"), py::arg("grid"), py::arg("components"),
        py::arg("gamma"), py::arg("sources") = 2);
  m.def("taylor_green_field", &taylor_green_field);
  m.def("gradient", &gradient);
  m.def("divergence", &divergence);
  m.def("laplacian", &laplacian);
  m.def("leray_project", &leray_project);
  m.def("dealiased_product", &dealiased_product);
  m.def("tensor_product", &tensor_product);

  m.def("cutoff_phi", &cutoff_phi);
  m.def("cutoff_psi", &cutoff_psi);
  m.def("lp_block", &lp_block, py::arg("j"), py::arg("field"));
  m.def("lp_low", &lp_low, py::arg("j"), py::arg("field"));
  m.def("pi1", &pi1);
  m.def("pi2", &pi2);
  m.def("bony_residual", &bony_residual);

  m.def("lebesgue_norm", &lebesgue_norm, py::arg("field"), py::arg("p"));
  m.def("sobolev_norm", &sobolev_norm, py::arg("field"), py::arg("s"));
  m.def("besov_norm", py::overload_cast<const SpectralField&, double, double>(&besov_norm), py::arg("field"),
        py::arg("s"), py::arg("q") = kInfinity);
  m.def("heat_char_norm", &heat_char_norm, py::arg("field"), py::arg("s"), py::arg("q") = kInfinity,
        py::arg("delta") = 1.0, py::arg("n_theta") = 64);
  m.def("uloc_norm", &uloc_norm, py::arg("field"), py::arg("p"), py::arg("radius"),
        py::arg("centers_per_radius") = 2);

  py::class_<TimeGrid>(m, "TimeGrid")
      .def_static("graded", &TimeGrid::graded, py::arg("horizon"), py::arg("count"))
      .def_static("from_nodes", &TimeGrid::from_nodes)
      .def_property_readonly("nodes", [](const TimeGrid& t) { return std::vector<double>(t.nodes().begin(), t.nodes().end()); })
      .def_property_readonly("weights",
                             [](const TimeGrid& t) { return std::vector<double>(t.weights().begin(), t.weights().end()); })
      .def_property_readonly("horizon", &TimeGrid::horizon)
      .def("__len__", &TimeGrid::size);

  py::class_<TimeSeriesField>(m, "TimeSeriesField")
      .def(py::init<TimeGrid, std::vector<SpectralField>, std::optional<SpectralField>>(), py::arg("times"),
           py::arg("snapshots"), py::arg("initial") = std::nullopt)
      .def_property_readonly("times", &TimeSeriesField::times)
      .def_property_readonly("initial", &TimeSeriesField::initial)
      .def("__len__", &TimeSeriesField::size)
      .def("__getitem__", [](const TimeSeriesField& v, std::size_t m) {
        if (m >= v.size()) throw py::index_error();
        return v.at(m);
      });

  m.def("chemin_lerner_norm", &chemin_lerner_norm, py::arg("series"), py::arg("p"), py::arg("s"),
        py::arg("q") = kInfinity);
  m.def("weighted_sup_norm", &weighted_sup_norm, py::arg("series"), py::arg("mu"));

  m.def("heat_apply", &heat_apply, py::arg("field"), py::arg("t"));
  m.def("heat_trajectory", &heat_trajectory, py::arg("u0"), py::arg("times"));
  m.def("oseen_apply", &oseen_apply, py::arg("tensor_series"), py::arg("start") = 0);
  m.def("bilinear_B", &bilinear_B);
  m.def("oseen_kernel_l1", py::overload_cast<double, int>(&oseen_kernel_l1), py::arg("t"), py::arg("dim") = 2);
  m.def(
      "singular_convolution_L",
      [](const std::vector<double>& samples, const TimeGrid& times, std::size_t node) {
        return singular_convolution_L(samples, times, node);
      },
      py::arg("samples"), py::arg("times"), py::arg("node"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init([](const Grid& g, double horizon, int steps, double r, double sigma, double tol, int max_iter) {
             SolverConfig cfg = SolverConfig::graded(g, horizon, steps);
             cfg.r = r;
             cfg.sigma = sigma;
             cfg.tol = tol;
             cfg.max_iter = max_iter;
             cfg.validate();
             return cfg;
           }),
           py::arg("grid"), py::arg("horizon") = 0.5, py::arg("steps") = 64, py::arg("r") = 0.5,
           py::arg("sigma") = 0.75, py::arg("tol") = 1e-10, py::arg("max_iter") = 200)
      .def_readonly("grid", &SolverConfig::grid)
      .def_readonly("times", &SolverConfig::times)
      .def_readwrite("r", &SolverConfig::r)
      .def_readwrite("sigma", &SolverConfig::sigma)
      .def_readwrite("tol", &SolverConfig::tol)
      .def_readwrite("max_iter", &SolverConfig::max_iter);

  py::class_<PicardTrace>(m, "PicardTrace")
      .def_readonly("increments", &PicardTrace::increments)
      .def_readonly("converged", &PicardTrace::converged)
      .def_readonly("time_floor", &PicardTrace::time_floor)
      .def_property_readonly("iterations", &PicardTrace::iterations);
  py::class_<PicardResult>(m, "PicardResult")
      .def_readonly("solution", &PicardResult::solution)
      .def_readonly("trace", &PicardResult::trace)
      .def_readonly("residual", &PicardResult::residual);
  m.def("picard_solve", &picard_solve, py::arg("u0"), py::arg("config"));
  m.def("step_integrator_oracle", &step_integrator_oracle, py::arg("u0"), py::arg("config"),
        py::arg("substeps") = 4);
  m.def("xt_norm", &xt_norm);

  py::class_<EnergyLedger>(m, "EnergyLedger")
      .def_readonly("times", &EnergyLedger::times)
      .def_readonly("energy", &EnergyLedger::energy)
      .def_readonly("dissipation", &EnergyLedger::dissipation)
      .def("max_excess", &EnergyLedger::max_excess)
      .def("max_defect", &EnergyLedger::max_defect);
  m.def("energy_ledger", &energy_ledger);

  py::class_<BootstrapVerdict>(m, "BootstrapVerdict")
      .def_property_readonly("hypotheses_hold", &BootstrapVerdict::hypotheses_hold)
      .def_property_readonly("conclusion_holds", &BootstrapVerdict::conclusion_holds)
      .def_readonly("branch_jump", &BootstrapVerdict::branch_jump)
      .def("describe", &BootstrapVerdict::describe)
      .def_property_readonly("status", [](const BootstrapVerdict& v) {
        switch (v.status()) {
          case BootstrapStatus::pass: return "pass";
          case BootstrapStatus::hypothesis_violation: return "hypothesis_violation";
          case BootstrapStatus::conclusion_breach: return "conclusion_breach";
        }
        return "unknown";
      });
  m.def(
      "bootstrap_check",
      [](const std::vector<std::pair<double, double>>& samples, double a, double b) {
        return bootstrap_check(samples, a, b);
      },
      py::arg("samples"), py::arg("a"), py::arg("b"));

  m.def("write_field", py::overload_cast<const std::filesystem::path&, const SpectralField&>(&write_field));
  m.def("read_field", py::overload_cast<const std::filesystem::path&>(&read_field));
  m.def("write_series", py::overload_cast<const std::filesystem::path&, const TimeSeriesField&>(&write_series));
  m.def("read_series", py::overload_cast<const std::filesystem::path&>(&read_series));

  m.def("suite_names", &suite_names);
  m.def(
      "run_suite_json",
      [](const std::string& name, const py::dict& config) {
        SuiteReport rep;
        const SuiteConfig cfg = config_from_dict(config);
        {
          py::gil_scoped_release release;
          rep = run_suite(name, cfg);
        }
        return rep.to_json();
      },
      py::arg("name"), py::arg("config") = py::dict());
}
