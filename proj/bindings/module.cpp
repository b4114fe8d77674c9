// Python bindings for the noncommutative-value engine.  Matrices and vectors
// cross the boundary as numpy arrays (complex128); container members convert
// to native python types by value.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncval/io.hpp"
#include "ncval/models.hpp"
#include "ncval/ncvalue.hpp"
#include "ncval/random.hpp"
#include "ncval/suites.hpp"
#include "ncval/tomography.hpp"

namespace py = pybind11;
using namespace ncval;

namespace {

std::vector<std::string> failure_strings(const SuiteReport& report) {
  std::vector<std::string> out;
  out.reserve(report.failures.size());
  for (const auto& f : report.failures) out.push_back(f.dump());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Noncommutative values of quantum observables: 2-jets of expectation "
      "functions on projective Hilbert space, their star product, dynamics "
      "pictures, a truncated oscillator model, and simulated tomography.";
#ifdef NCVAL_VERSION
  m.attr("__version__") = NCVAL_VERSION;
#else
  m.attr("__version__") = "dev";
#endif

  py::register_exception<IncompleteObservableSet>(
      m, "IncompleteObservableSet", PyExc_ValueError);

  // --- linear algebra layer ---
  py::class_<Operator>(m, "Operator")
      .def(py::init<Matrix>(), py::arg("entries"))
      .def_property_readonly("dim", &Operator::dim)
      .def_property_readonly(
          "matrix", [](const Operator& a) -> Matrix { return a.matrix(); })
      .def("adjoint", &Operator::adjoint)
      .def("hermiticity_defect", &Operator::hermiticity_defect)
      .def("is_hermitian", &Operator::is_hermitian, py::arg("tol") = kTolHerm)
      .def_static("identity", &Operator::identity, py::arg("dim"))
      .def_static("zero", &Operator::zero, py::arg("dim"))
      .def("__add__",
           [](const Operator& a, const Operator& b) { return a + b; })
      .def("__sub__",
           [](const Operator& a, const Operator& b) { return a - b; })
      .def("__matmul__",
           [](const Operator& a, const Operator& b) { return a * b; })
      .def("__mul__",
           [](const Operator& a, const Operator& b) { return a * b; })
      .def("__rmul__", [](const Operator& a, Complex c) { return c * a; })
      .def("__repr__", [](const Operator& a) {
        return "Operator(dim=" + std::to_string(a.dim()) + ")";
      });

  m.def("commutator", &commutator, py::arg("a"), py::arg("b"));
  m.def("anticommutator", &anticommutator, py::arg("a"), py::arg("b"));

  py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
      .def_readonly("eigenvalues", &SpectralDecomposition::eigenvalues)
      .def_readonly("eigenvectors", &SpectralDecomposition::eigenvectors);
  m.def("spectral_decompose", &spectral_decompose, py::arg("a"),
        py::arg("tol") = kTolHerm);

  py::class_<ProjectiveState>(m, "ProjectiveState")
      .def_property_readonly("dim", &ProjectiveState::dim)
      .def_property_readonly("amplitudes",
                             [](const ProjectiveState& s) -> Vector {
                               return s.amplitudes();
                             })
      .def("__repr__", [](const ProjectiveState& s) {
        return "ProjectiveState(dim=" + std::to_string(s.dim()) + ")";
      });
  m.def("gauge_fix", &gauge_fix, py::arg("v"),
        py::arg("gauge_eps") = kGaugeEps);
  m.def(
      "expectation",
      [](const Operator& a, const ProjectiveState& psi) {
        return expectation(a, psi);
      },
      py::arg("a"), py::arg("psi"));
  m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
  m.def("ray_distance", &ray_distance, py::arg("a"), py::arg("b"));

  // --- jets and the star product ---
  py::class_<NCValue>(m, "NCValue")
      .def(py::init<ProjectiveState, Complex, RowVector, Vector, Matrix>(),
           py::arg("base"), py::arg("f"), py::arg("grad_z"),
           py::arg("grad_zbar"), py::arg("hess"))
      .def_property_readonly("base", &NCValue::base)
      .def_property_readonly("dim", &NCValue::dim)
      .def_property_readonly("f", &NCValue::f)
      .def_property_readonly(
          "grad_z", [](const NCValue& v) -> RowVector { return v.grad_z(); })
      .def_property_readonly(
          "grad_zbar",
          [](const NCValue& v) -> Vector { return v.grad_zbar(); })
      .def_property_readonly(
          "hess", [](const NCValue& v) -> Matrix { return v.hess(); })
      .def("tangency_residual", &NCValue::tangency_residual)
      .def("__add__", [](const NCValue& u, const NCValue& v) { return u + v; })
      .def("__sub__", [](const NCValue& u, const NCValue& v) { return u - v; })
      .def("__rmul__", [](const NCValue& u, Complex c) { return c * u; });

  m.def("ncvalue", &ncvalue, py::arg("a"), py::arg("psi"));
  m.def("reconstruct_operator", &reconstruct_operator, py::arg("value"),
        py::arg("tol") = kTolJet);
  m.def("star_product", &star_product, py::arg("u"), py::arg("v"),
        py::arg("base_tol") = kTolNorm);
  m.def("multiplicativity_defect", &multiplicativity_defect, py::arg("a"),
        py::arg("b"), py::arg("psi"));
  m.def("poisson_bracket", &poisson_bracket, py::arg("u"), py::arg("v"),
        py::arg("hbar"));
  m.def("jordan_product_value", &jordan_product_value, py::arg("u"),
        py::arg("v"));
  m.def("finite_difference_jet", &finite_difference_jet, py::arg("a"),
        py::arg("psi"), py::arg("step"));

  py::class_<RealJet>(m, "RealJet")
      .def_readonly("f", &RealJet::f)
      .def_readonly("df_dq", &RealJet::df_dq)
      .def_readonly("df_ds", &RealJet::df_ds)
      .def_readonly("d2f_dqdq", &RealJet::d2f_dqdq)
      .def_readonly("d2f_dqds", &RealJet::d2f_dqds)
      .def_readonly("d2f_dsds", &RealJet::d2f_dsds);
  m.def("to_real_jet", &to_real_jet, py::arg("value"));
  m.def("from_real_jet", &from_real_jet, py::arg("jet"), py::arg("base"));

  // --- dynamics pictures ---
  py::class_<TrajectoryMeta>(m, "TrajectoryMeta")
      .def_readonly("propagator", &TrajectoryMeta::propagator)
      .def_readonly("dt", &TrajectoryMeta::dt)
      .def_readonly("max_norm_drift", &TrajectoryMeta::max_norm_drift);
  py::class_<StateTrajectory>(m, "StateTrajectory")
      .def_readonly("times", &StateTrajectory::times)
      .def_readonly("states", &StateTrajectory::states)
      .def_readonly("meta", &StateTrajectory::meta);
  py::class_<OperatorTrajectory>(m, "OperatorTrajectory")
      .def_readonly("times", &OperatorTrajectory::times)
      .def_readonly("operators", &OperatorTrajectory::operators)
      .def_readonly("meta", &OperatorTrajectory::meta);
  py::class_<StepperConfig>(m, "StepperConfig")
      .def(py::init<>())
      .def_readwrite("dt", &StepperConfig::dt)
      .def_readwrite("max_norm_drift", &StepperConfig::max_norm_drift);

  m.def("schrodinger_propagate", &schrodinger_propagate, py::arg("h"),
        py::arg("psi0"), py::arg("times"));
  m.def("heisenberg_propagate", &heisenberg_propagate, py::arg("h"),
        py::arg("a0"), py::arg("times"));
  m.def("realcoord_flow", &realcoord_flow, py::arg("h"), py::arg("psi0"),
        py::arg("times"), py::arg("config") = StepperConfig{});

  py::class_<PictureEquivalenceReport>(m, "PictureEquivalenceReport")
      .def_readonly("times", &PictureEquivalenceReport::times)
      .def_readonly("value_deviation",
                    &PictureEquivalenceReport::value_deviation)
      .def_readonly("jet_deviation", &PictureEquivalenceReport::jet_deviation)
      .def_readonly("max_value_deviation",
                    &PictureEquivalenceReport::max_value_deviation)
      .def_readonly("max_jet_deviation",
                    &PictureEquivalenceReport::max_jet_deviation);
  m.def("picture_equivalence_check", &picture_equivalence_check, py::arg("h"),
        py::arg("a0"), py::arg("psi0"), py::arg("times"));

  py::class_<HamiltonianTerm>(m, "HamiltonianTerm")
      .def(py::init([](int position_power, int momentum_power,
                       double coefficient) {
             return HamiltonianTerm{position_power, momentum_power,
                                    coefficient};
           }),
           py::arg("position_power"), py::arg("momentum_power"),
           py::arg("coefficient"))
      .def_readwrite("position_power", &HamiltonianTerm::position_power)
      .def_readwrite("momentum_power", &HamiltonianTerm::momentum_power)
      .def_readwrite("coefficient", &HamiltonianTerm::coefficient);
  py::class_<SeparableHamiltonian>(m, "SeparableHamiltonian")
      .def_readonly("kinetic", &SeparableHamiltonian::kinetic)
      .def_readonly("potential", &SeparableHamiltonian::potential);
  m.def("make_separable_hamiltonian", &make_separable_hamiltonian,
        py::arg("terms"));
  m.def(
      "to_operator",
      [](const SeparableHamiltonian& h, const Operator& position,
         const Operator& momentum) { return to_operator(h, position, momentum); },
      py::arg("h"), py::arg("position"), py::arg("momentum"));

  py::class_<CanonicalFlowTrajectory>(m, "CanonicalFlowTrajectory")
      .def_readonly("times", &CanonicalFlowTrajectory::times)
      .def_readonly("position", &CanonicalFlowTrajectory::position)
      .def_readonly("momentum", &CanonicalFlowTrajectory::momentum)
      .def_readonly("meta", &CanonicalFlowTrajectory::meta);
  m.def(
      "hamilton_operator_flow",
      [](const SeparableHamiltonian& h, const Operator& position0,
         const Operator& momentum0, const std::vector<double>& times,
         const StepperConfig& config) {
        return hamilton_operator_flow(h, position0, momentum0, times, config);
      },
      py::arg("h"), py::arg("position0"), py::arg("momentum0"),
      py::arg("times"), py::arg("config") = StepperConfig{});

  // --- truncated oscillator and two-level models ---
  py::class_<OscillatorSystem>(m, "OscillatorSystem")
      .def_readonly("levels", &OscillatorSystem::levels)
      .def_readonly("hbar", &OscillatorSystem::hbar)
      .def_readonly("mass", &OscillatorSystem::mass)
      .def_readonly("omega", &OscillatorSystem::omega)
      .def_readonly("lowering", &OscillatorSystem::lowering)
      .def_readonly("position", &OscillatorSystem::position)
      .def_readonly("momentum", &OscillatorSystem::momentum)
      .def_readonly("hamiltonian", &OscillatorSystem::hamiltonian);
  m.def("build_oscillator", &build_oscillator, py::arg("levels"),
        py::arg("hbar") = 1.0, py::arg("mass") = 1.0, py::arg("omega") = 1.0);
  m.def("ccr_defect", &ccr_defect, py::arg("system"));
  m.def("fock_state", &fock_state, py::arg("system"), py::arg("n"));
  m.def("coherent_state", &coherent_state, py::arg("system"),
        py::arg("alpha"));
  m.def(
      "hamilton_system_flow",
      [](const SeparableHamiltonian& h, const OscillatorSystem& system,
         const std::vector<double>& times, const StepperConfig& config) {
        return hamilton_operator_flow(h, system, times, config);
      },
      py::arg("h"), py::arg("system"), py::arg("times"),
      py::arg("config") = StepperConfig{});

  py::class_<DegeneracyReport>(m, "DegeneracyReport")
      .def_readonly("x_mean_ground", &DegeneracyReport::x_mean_ground)
      .def_readonly("x_mean_excited", &DegeneracyReport::x_mean_excited)
      .def_readonly("p_mean_ground", &DegeneracyReport::p_mean_ground)
      .def_readonly("p_mean_excited", &DegeneracyReport::p_mean_excited)
      .def_readonly("x_variance_ground", &DegeneracyReport::x_variance_ground)
      .def_readonly("x_variance_excited",
                    &DegeneracyReport::x_variance_excited)
      .def_readonly("hess_distance", &DegeneracyReport::hess_distance);
  py::class_<DegeneracyPair>(m, "DegeneracyPair")
      .def_readonly("ground", &DegeneracyPair::ground)
      .def_readonly("excited", &DegeneracyPair::excited)
      .def_readonly("report", &DegeneracyPair::report);
  m.def("expectation_degeneracy_pair", &expectation_degeneracy_pair,
        py::arg("system"));

  py::class_<EhrenfestTrace>(m, "EhrenfestTrace")
      .def_readonly("times", &EhrenfestTrace::times)
      .def_readonly("x_expect", &EhrenfestTrace::x_expect)
      .def_readonly("p_expect", &EhrenfestTrace::p_expect)
      .def_readonly("x_classical", &EhrenfestTrace::x_classical)
      .def_readonly("p_classical", &EhrenfestTrace::p_classical)
      .def_readonly("max_position_deviation",
                    &EhrenfestTrace::max_position_deviation)
      .def_readonly("max_momentum_deviation",
                    &EhrenfestTrace::max_momentum_deviation);
  m.def("ehrenfest_trace", &ehrenfest_trace, py::arg("system"),
        py::arg("psi0"), py::arg("times"));

  py::class_<PauliSystem>(m, "PauliSystem")
      .def_readonly("sigma_x", &PauliSystem::sigma_x)
      .def_readonly("sigma_y", &PauliSystem::sigma_y)
      .def_readonly("sigma_z", &PauliSystem::sigma_z)
      .def_readonly("identity", &PauliSystem::identity);
  m.def("pauli_system", &pauli_system);
  m.def(
      "tensor_product",
      [](const Operator& a, const Operator& b) { return tensor_product(a, b); },
      py::arg("a"), py::arg("b"));

  // --- tomography ---
  py::class_<MeasurementRecord>(m, "MeasurementRecord")
      .def_readonly("observable_id", &MeasurementRecord::observable_id)
      .def_readonly("eigenvalues", &MeasurementRecord::eigenvalues)
      .def_readonly("counts", &MeasurementRecord::counts)
      .def_readonly("shots", &MeasurementRecord::shots)
      .def_readonly("seed", &MeasurementRecord::seed);
  m.def("sample_measurement", &sample_measurement, py::arg("a"),
        py::arg("psi"), py::arg("shots"), py::arg("seed"),
        py::arg("observable_id") = "");

  py::class_<ExpectationEstimate>(m, "ExpectationEstimate")
      .def_readonly("mean", &ExpectationEstimate::mean)
      .def_readonly("standard_error", &ExpectationEstimate::standard_error);
  m.def("estimate_expectation", &estimate_expectation, py::arg("record"));
  m.def("empirical_moments", &empirical_moments, py::arg("record"),
        py::arg("k_max"));

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<Matrix>(), py::arg("entries"))
      .def_property_readonly("dim", &DensityMatrix::dim)
      .def_property_readonly("matrix", [](const DensityMatrix& rho) -> Matrix {
        return rho.matrix();
      });
  m.def("pure_density", &pure_density, py::arg("psi"));
  m.def(
      "density_expectation",
      [](const Operator& a, const DensityMatrix& rho) {
        return expectation(a, rho);
      },
      py::arg("a"), py::arg("rho"));
  m.def("gellmann_basis", &gellmann_basis, py::arg("dim"));
  m.def(
      "reconstruct_density",
      [](const std::vector<Operator>& observables,
         const std::vector<double>& expectation_values) {
        double cond = 0.0;
        DensityMatrix rho =
            reconstruct_density(observables, expectation_values, &cond);
        return py::make_tuple(rho, cond);
      },
      py::arg("observables"), py::arg("expectation_values"),
      "Returns (density_matrix, design_condition_number).");
  m.def(
      "reconstruct_density_from_records",
      [](const std::vector<std::pair<Operator, MeasurementRecord>>& records) {
        double cond = 0.0;
        DensityMatrix rho = reconstruct_density(records, &cond);
        return py::make_tuple(rho, cond);
      },
      py::arg("records"));
  m.def("trace_distance", &trace_distance, py::arg("rho1"), py::arg("rho2"));
  m.def("purity", &purity, py::arg("rho"));

  // --- deterministic randomness ---
  py::class_<CounterRng>(m, "CounterRng")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"),
           py::arg("stream") = 0)
      .def("next_uniform", &CounterRng::next_uniform)
      .def("next_normal", &CounterRng::next_normal);
  m.def(
      "random_operator",
      [](CounterRng& rng, Eigen::Index dim) {
        return random_operator(rng, dim);
      },
      py::arg("rng"), py::arg("dim"));
  m.def(
      "random_hermitian",
      [](CounterRng& rng, Eigen::Index dim) {
        return random_hermitian(rng, dim);
      },
      py::arg("rng"), py::arg("dim"));
  m.def(
      "random_state",
      [](CounterRng& rng, Eigen::Index dim) { return random_state(rng, dim); },
      py::arg("rng"), py::arg("dim"));

  // --- persistence ---
  m.def("save_operator", &save_operator, py::arg("a"), py::arg("path"));
  m.def("load_operator", &load_operator, py::arg("path"));
  m.def("save_state", &save_state, py::arg("psi"), py::arg("path"));
  m.def("load_state", &load_state, py::arg("path"));
  m.def("save_record", &save_record, py::arg("record"), py::arg("path"));
  m.def("load_record", &load_record, py::arg("path"));

  // --- experiment suites ---
  py::class_<SuiteConfig>(m, "SuiteConfig")
      .def(py::init<>())
      .def_readwrite("dims", &SuiteConfig::dims)
      .def_readwrite("trials", &SuiteConfig::trials)
      .def_readwrite("seed", &SuiteConfig::seed)
      .def_readwrite("hbar", &SuiteConfig::hbar)
      .def_readwrite("mass", &SuiteConfig::mass)
      .def_readwrite("omega", &SuiteConfig::omega)
      .def_readwrite("tolerances", &SuiteConfig::tolerances)
      .def_readwrite("output_dir", &SuiteConfig::output_dir)
      .def("validate", &SuiteConfig::validate);
  py::class_<SuiteReport>(m, "SuiteReport")
      .def_readonly("suite", &SuiteReport::suite)
      .def_readonly("passed", &SuiteReport::pass)
      .def_readonly("metrics", &SuiteReport::metrics)
      .def_property_readonly("failures", &failure_strings)
      .def("to_json_string",
           [](const SuiteReport& r) { return r.to_json().dump(2); });
  m.def("suite_names",
        []() -> std::vector<std::string> { return suite_names(); });
  m.def("run_suite", &run_suite, py::arg("name"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("describe", &describe, py::arg("name"));
}
