// Python bindings for the toolkit core. Fields cross the boundary as numpy
// arrays of shape (3, n, n, n), z-major to match the component-major,
// x-fastest sample layout.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mns/certificate.hpp"
#include "mns/diagnostics.hpp"
#include "mns/field_ops.hpp"
#include "mns/io.hpp"
#include "mns/kernels.hpp"
#include "mns/norms.hpp"
#include "mns/picard.hpp"

namespace py = pybind11;
using namespace mns;

namespace {

py::array_t<double> field_to_array(const VelocityField& f) {
  const int n = f.grid.n;
  py::array_t<double> out({3, n, n, n});
  std::copy(f.samples.begin(), f.samples.end(), out.mutable_data());
  return out;
}

VelocityField field_from_array(const GridSpec& g,
                               py::array_t<double, py::array::c_style |
                                                       py::array::forcecast>
                                   arr,
                               double time_label) {
  if (arr.ndim() != 4 || arr.shape(0) != 3 || arr.shape(1) != g.n ||
      arr.shape(2) != g.n || arr.shape(3) != g.n)
    throw std::invalid_argument("expected array of shape (3, n, n, n)");
  VelocityField f = VelocityField::zero(g);
  std::copy(arr.data(), arr.data() + f.samples.size(), f.samples.begin());
  f.time_label = time_label;
  require_finite(f.samples, "field_from_array");
  return f;
}

py::array_t<double> scalar_to_array(const ScalarField& f) {
  const int n = f.grid.n;
  py::array_t<double> out({n, n, n});
  std::copy(f.samples.begin(), f.samples.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Constructive small-data existence toolkit core";

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init(&GridSpec::make), py::arg("n"), py::arg("extent"))
      .def_readonly("n", &GridSpec::n)
      .def_readonly("extent", &GridSpec::extent)
      .def("spacing", &GridSpec::spacing)
      .def("nodes", &GridSpec::nodes)
      .def("__eq__",
           [](const GridSpec& a, const GridSpec& b) { return a == b; })
      .def("__repr__", [](const GridSpec& g) {
        return "GridSpec(n=" + std::to_string(g.n) +
               ", extent=" + std::to_string(g.extent) + ")";
      });

  py::class_<VelocityField>(m, "VelocityField")
      .def_static("zero", &VelocityField::zero, py::arg("grid"))
      .def_static("from_array", &field_from_array, py::arg("grid"),
                  py::arg("samples"), py::arg("time_label") = 0.0)
      .def_readonly("grid", &VelocityField::grid)
      .def_readwrite("time_label", &VelocityField::time_label)
      .def_property_readonly("samples", &field_to_array);

  py::class_<ScalarField>(m, "ScalarField")
      .def_readonly("grid", &ScalarField::grid)
      .def_property_readonly("samples", &scalar_to_array);

  py::class_<TimeMesh>(m, "TimeMesh")
      .def_static("graded", &TimeMesh::graded, py::arg("t_final"),
                  py::arg("m"), py::arg("gamma") = 2.0)
      .def_readonly("t_final", &TimeMesh::t_final)
      .def_readonly("gamma", &TimeMesh::gamma)
      .def_readonly("nodes", &TimeMesh::nodes);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("mesh", &Trajectory::mesh)
      .def_readonly("fields", &Trajectory::fields)
      .def("__len__", &Trajectory::size)
      .def("at", &Trajectory::at, py::arg("j"),
           py::return_value_policy::reference_internal);

  // datum generation and basic field operations
  m.def(
      "make_datum",
      [](const std::string& kind, double amplitude, double scale,
         const GridSpec& g) { return make_datum(kind, amplitude, scale, g); },
      py::arg("kind"), py::arg("amplitude"), py::arg("scale"),
      py::arg("grid"));
  m.def("random_field", &random_field, py::arg("grid"), py::arg("seed"),
        py::arg("correlation_length"), py::arg("solenoidal") = true);
  m.def("leray_project",
        py::overload_cast<const VelocityField&>(&leray_project),
        py::arg("field"));
  m.def("divergence_max", &divergence_max, py::arg("field"));
  m.def("axpy", &axpy, py::arg("alpha"), py::arg("x"), py::arg("y"));
  m.def("scale_field", &scale_field, py::arg("alpha"), py::arg("x"));

  // norms
  m.attr("Q_INF") = q_inf;
  m.def("lq_norm",
        py::overload_cast<const VelocityField&, double>(&lq_norm),
        py::arg("field"), py::arg("q"));
  m.def("localized_l3", &localized_l3, py::arg("field"), py::arg("rho"));

  py::class_<NormTriple>(m, "NormTriple")
      .def_readonly("sup_weighted", &NormTriple::sup_weighted)
      .def_readonly("localized", &NormTriple::localized)
      .def_readonly("l3_weighted", &NormTriple::l3_weighted)
      .def_readonly("rho", &NormTriple::rho)
      .def_readonly("t", &NormTriple::t)
      .def("value", &NormTriple::value);
  m.def("triple_norm", &triple_norm, py::arg("history"), py::arg("rho"),
        py::arg("t"));

  py::class_<HolderSample>(m, "HolderSample")
      .def_readonly("theta", &HolderSample::theta)
      .def_readonly("quotient", &HolderSample::quotient)
      .def_readonly("pair_count", &HolderSample::pair_count);
  m.def("holder_quotient", &holder_quotient, py::arg("field"),
        py::arg("theta"), py::arg("n_pairs"), py::arg("seed") = 12345);

  // kernels
  m.def("heat_propagate", &heat_propagate, py::arg("field"), py::arg("t"));
  m.def("heat_flow", &heat_flow, py::arg("datum"), py::arg("mesh"));
  m.def("nonlinear_term", &nonlinear_term, py::arg("a"), py::arg("b"),
        py::arg("mesh"), py::arg("t"));
  m.def("pressure_solve", &pressure_solve, py::arg("field"));

  // certificate
  py::class_<Constants>(m, "Constants")
      .def_readonly("h0", &Constants::h0)
      .def_readonly("h1", &Constants::h1)
      .def_readonly("c1", &Constants::c1)
      .def_readonly("source", &Constants::source);
  m.def("derive_constants", &derive_constants, py::arg("c1") = 1.0);
  m.def("recursion_fixed_point", &recursion_fixed_point, py::arg("xi0"),
        py::arg("c"));
  m.def("criterion_value_raw", &criterion_value_raw, py::arg("l3_rho"),
        py::arg("l3"), py::arg("constants"), py::arg("rho"), py::arg("t"));
  m.def("majorant", &majorant, py::arg("B"), py::arg("c1"));

  py::class_<DatumNorms>(m, "DatumNorms")
      .def_readonly("l3", &DatumNorms::l3)
      .def_readonly("rho", &DatumNorms::rho)
      .def_readonly("localized", &DatumNorms::localized)
      .def("localized_at", &DatumNorms::localized_at, py::arg("rho"));

  py::class_<TimeOfRho> time_of_rho(m, "TimeOfRho");
  py::enum_<TimeOfRho::Kind>(time_of_rho, "Kind")
      .value("none", TimeOfRho::Kind::none)
      .value("finite", TimeOfRho::Kind::finite)
      .value("infinite", TimeOfRho::Kind::infinite);
  time_of_rho.def_readonly("kind", &TimeOfRho::kind)
      .def_readonly("t", &TimeOfRho::t);

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("constants", &Certificate::constants)
      .def_readonly("datum_norms", &Certificate::datum_norms)
      .def_readonly("t_table", &Certificate::t_table)
      .def_readonly("rho_star", &Certificate::rho_star)
      .def_readonly("T", &Certificate::T)
      .def_readonly("a_table", &Certificate::a_table)
      .def_readonly("is_global", &Certificate::global)
      .def_readonly("rho_cap", &Certificate::rho_cap)
      .def_readonly("status", &Certificate::status);
  m.def("default_rho_ladder", &default_rho_ladder, py::arg("grid"),
        py::arg("count") = 16);
  m.def("existence_time", &existence_time, py::arg("datum"),
        py::arg("constants"), py::arg("rho_ladder"));

  // iteration
  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("m", &IterationRecord::m)
      .def_readonly("iterate", &IterationRecord::iterate)
      .def_readonly("increment", &IterationRecord::increment)
      .def_readonly("theoretical_bound", &IterationRecord::theoretical_bound)
      .def_readonly("wall_seconds", &IterationRecord::wall_seconds);

  py::class_<IterationTrace>(m, "IterationTrace")
      .def_readonly("rho", &IterationTrace::rho)
      .def_readonly("t_final", &IterationTrace::t_final)
      .def_readonly("majorant_value", &IterationTrace::majorant_value)
      .def_readonly("criterion_holds", &IterationTrace::criterion_holds)
      .def_readonly("mesh_nodes", &IterationTrace::mesh_nodes)
      .def_readonly("mesh_gamma", &IterationTrace::mesh_gamma)
      .def_readonly("records", &IterationTrace::records);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("trajectory", &SolveResult::trajectory)
      .def_readonly("pressures", &SolveResult::pressures)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("converged", &SolveResult::converged)
      .def_readonly("out_of_certificate", &SolveResult::out_of_certificate)
      .def_readonly("final_increment", &SolveResult::final_increment)
      .def_readonly("tolerance", &SolveResult::tolerance)
      .def_readonly("projector_warnings", &SolveResult::projector_warnings)
      .def_readonly("certificate", &SolveResult::certificate);
  m.def("picard_solve", &picard_solve, py::arg("datum"),
        py::arg("certificate"), py::arg("mesh"), py::arg("tol"),
        py::arg("max_m"));

  py::class_<BoundCheck>(m, "BoundCheck")
      .def_readonly("m", &BoundCheck::m)
      .def_readonly("iterate_value", &BoundCheck::iterate_value)
      .def_readonly("iterate_bound", &BoundCheck::iterate_bound)
      .def_readonly("increment_value", &BoundCheck::increment_value)
      .def_readonly("increment_bound", &BoundCheck::increment_bound)
      .def_readonly("iterate_ok", &BoundCheck::iterate_ok)
      .def_readonly("increment_ok", &BoundCheck::increment_ok)
      .def_readonly("slack", &BoundCheck::slack);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("criterion_in_range", &BoundReport::criterion_in_range)
      .def_readonly("all_pass", &BoundReport::all_pass)
      .def_readonly("max_slack", &BoundReport::max_slack)
      .def_readonly("checks", &BoundReport::checks)
      .def_readonly("status", &BoundReport::status);
  m.def("verify_iteration_bound", &verify_iteration_bound, py::arg("trace"),
        py::arg("certificate"), py::arg("slack_allowance") = 1.0);

  // diagnostics
  py::class_<DecayScan>(m, "DecayScan")
      .def_readonly("quantity", &DecayScan::quantity)
      .def_readonly("q", &DecayScan::q)
      .def_readonly("mu", &DecayScan::mu)
      .def_readonly("times", &DecayScan::times)
      .def_readonly("values", &DecayScan::values)
      .def_readonly("slope", &DecayScan::slope)
      .def_readonly("verdict", &DecayScan::verdict)
      .def_readonly("fitted_constant", &DecayScan::fitted_constant);
  m.def("limit_scan", &limit_scan, py::arg("solve"));
  m.def("lq_decay_scan", &lq_decay_scan, py::arg("solve"), py::arg("q_list"));
  m.def("fitted_log_slope", &fitted_log_slope, py::arg("times"),
        py::arg("values"));

  py::class_<AuditRow>(m, "AuditRow")
      .def_readonly("lemma", &AuditRow::lemma)
      .def_readonly("datum_id", &AuditRow::datum_id)
      .def_readonly("rho", &AuditRow::rho)
      .def_readonly("t", &AuditRow::t)
      .def_readonly("lhs", &AuditRow::lhs)
      .def_readonly("rhs", &AuditRow::rhs)
      .def_readonly("margin", &AuditRow::margin)
      .def_readonly("passes", &AuditRow::pass);

  py::class_<AuditConfig>(m, "AuditConfig")
      .def(py::init([](const GridSpec& grid, int train_count, int test_count,
                       std::uint64_t seed, double fit_margin, int mesh_nodes) {
             AuditConfig cfg;
             cfg.grid = grid;
             cfg.train_count = train_count;
             cfg.test_count = test_count;
             cfg.seed = seed;
             cfg.fit_margin = fit_margin;
             cfg.mesh_nodes = mesh_nodes;
             return cfg;
           }),
           py::arg("grid"), py::arg("train_count") = 20,
           py::arg("test_count") = 20, py::arg("seed") = 2024,
           py::arg("fit_margin") = 1.2, py::arg("mesh_nodes") = 24)
      .def_readwrite("train_count", &AuditConfig::train_count)
      .def_readwrite("test_count", &AuditConfig::test_count)
      .def_readwrite("seed", &AuditConfig::seed)
      .def_readwrite("fit_margin", &AuditConfig::fit_margin)
      .def_readwrite("mesh_nodes", &AuditConfig::mesh_nodes);

  py::class_<AuditReport>(m, "AuditReport")
      .def_readonly("training", &AuditReport::training)
      .def_readonly("rows", &AuditReport::rows)
      .def_readonly("constants", &AuditReport::constants)
      .def_readonly("fit_margin", &AuditReport::fit_margin)
      .def_readonly("all_pass", &AuditReport::all_pass);
  m.def("estimate_audit", &estimate_audit, py::arg("config"));

  py::class_<UniquenessReport>(m, "UniquenessReport")
      .def_readonly("both_converged", &UniquenessReport::both_converged)
      .def_readonly("both_in_uniqueness_class",
                    &UniquenessReport::both_in_uniqueness_class)
      .def_readonly("sup_l3_gap", &UniquenessReport::sup_l3_gap)
      .def_readonly("budget", &UniquenessReport::budget)
      .def_readonly("passes", &UniquenessReport::pass);
  m.def("uniqueness_check", &uniqueness_check, py::arg("datum"),
        py::arg("certificate"), py::arg("mesh_a"), py::arg("mesh_b"),
        py::arg("tol"), py::arg("max_m"));

  // persistence
  m.def("save_field", &save_field, py::arg("path"), py::arg("field"));
  m.def("load_field", &load_field, py::arg("path"));
}
