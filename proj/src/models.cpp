#include "ncval/models.hpp"

#include <cmath>
#include <stdexcept>

namespace ncval {

OscillatorSystem build_oscillator(int levels, double hbar, double mass,
                                  double omega) {
  if (levels < 4) {
    throw std::invalid_argument("oscillator needs at least 4 levels");
  }
  if (!(hbar > 0.0) || !(mass > 0.0) || !(omega > 0.0)) {
    throw std::invalid_argument("hbar, mass, omega must be positive");
  }
  const Eigen::Index d = levels;
  Matrix lowering = Matrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) {
    lowering(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  const Matrix raising = lowering.adjoint();
  const double x_scale = std::sqrt(hbar / (2.0 * mass * omega));
  const double p_scale = std::sqrt(hbar * mass * omega / 2.0);
  Matrix x = x_scale * (lowering + raising);
  Matrix p = Complex(0.0, 1.0) * p_scale * (raising - lowering);
  Matrix h = p * p / (2.0 * mass) + (0.5 * mass * omega * omega) * (x * x);

  OscillatorSystem system{levels,
                          hbar,
                          mass,
                          omega,
                          Operator(std::move(lowering)),
                          Operator(std::move(x)),
                          Operator(std::move(p)),
                          Operator(std::move(h))};
  return system;
}

Operator ccr_defect(const OscillatorSystem& system) {
  const Eigen::Index d = system.levels;
  const Matrix i_hbar =
      Complex(0.0, system.hbar) * Matrix::Identity(d, d);
  return Operator(commutator(system.position, system.momentum).matrix() -
                  i_hbar);
}

ProjectiveState fock_state(const OscillatorSystem& system, int n) {
  if (n < 0 || n >= system.levels) {
    throw std::invalid_argument("Fock level outside the truncated range");
  }
  Vector amplitudes = Vector::Zero(system.levels);
  amplitudes[n] = 1.0;
  return gauge_fix(amplitudes);
}

ProjectiveState coherent_state(const OscillatorSystem& system, Complex alpha) {
  const double intensity = std::norm(alpha);
  if (intensity > system.levels / 4.0) {
    throw std::invalid_argument(
        "coherent amplitude too large for the truncation: |alpha|^2 must not "
        "exceed levels/4");
  }
  // Unnormalized amplitudes alpha^n / sqrt(n!); the overall exp(-|a|^2/2)
  // factor drops out in the renormalization.
  Vector amplitudes(system.levels);
  Complex term(1.0, 0.0);
  for (int n = 0; n < system.levels; ++n) {
    if (n > 0) term *= alpha / std::sqrt(static_cast<double>(n));
    amplitudes[n] = term;
  }
  // Tail deficit of the truncated expansion, relative to the full coherent
  // normalization exp(|alpha|^2).
  const double kept = amplitudes.squaredNorm();
  const double deficit = 1.0 - kept * std::exp(-intensity);
  if (deficit > 1e-8) {
    throw std::invalid_argument(
        "coherent state not representable: truncated tail exceeds 1e-8");
  }
  return gauge_fix(amplitudes);
}

DegeneracyPair expectation_degeneracy_pair(const OscillatorSystem& system) {
  const ProjectiveState ground = fock_state(system, 0);
  const ProjectiveState excited = fock_state(system, 1);
  const NCValue jet_ground = ncvalue(system.position, ground);
  const NCValue jet_excited = ncvalue(system.position, excited);

  DegeneracyReport report;
  report.x_mean_ground = expectation(system.position, ground).real();
  report.x_mean_excited = expectation(system.position, excited).real();
  report.p_mean_ground = expectation(system.momentum, ground).real();
  report.p_mean_excited = expectation(system.momentum, excited).real();
  const Operator x_sq = system.position * system.position;
  report.x_variance_ground = expectation(x_sq, ground).real() -
                             report.x_mean_ground * report.x_mean_ground;
  report.x_variance_excited = expectation(x_sq, excited).real() -
                              report.x_mean_excited * report.x_mean_excited;
  report.hess_distance =
      (jet_ground.hess() - jet_excited.hess()).cwiseAbs().maxCoeff();
  return DegeneracyPair{ground, excited, report};
}

EhrenfestTrace ehrenfest_trace(const OscillatorSystem& system,
                               const ProjectiveState& psi0,
                               const std::vector<double>& times) {
  const StateTrajectory trajectory =
      schrodinger_propagate(system.hamiltonian, psi0, times);

  EhrenfestTrace trace;
  trace.times = times;
  const double x0 = expectation(system.position, psi0).real();
  const double p0 = expectation(system.momentum, psi0).real();
  // In hbar-absorbed time the Ehrenfest/classical angular frequency picks up
  // a factor hbar: d<X>/dtau = hbar <P>/m, d<P>/dtau = -hbar m omega^2 <X>.
  const double freq = system.hbar * system.omega;
  const double impedance = system.mass * system.omega;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const double x_expect =
        expectation(system.position, trajectory.states[i]).real();
    const double p_expect =
        expectation(system.momentum, trajectory.states[i]).real();
    const double x_cl = x0 * std::cos(freq * t) +
                        (p0 / impedance) * std::sin(freq * t);
    const double p_cl = p0 * std::cos(freq * t) -
                        impedance * x0 * std::sin(freq * t);
    trace.x_expect.push_back(x_expect);
    trace.p_expect.push_back(p_expect);
    trace.x_classical.push_back(x_cl);
    trace.p_classical.push_back(p_cl);
    trace.max_position_deviation =
        std::max(trace.max_position_deviation, std::abs(x_expect - x_cl));
    trace.max_momentum_deviation =
        std::max(trace.max_momentum_deviation, std::abs(p_expect - p_cl));
  }
  return trace;
}

void export_ehrenfest_csv(const EhrenfestTrace& trace,
                          const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (out == nullptr) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  std::fputs("t,qx_expect,p_expect,x_cl,p_cl\n", out);
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    std::fprintf(out, "%.17g,%.17g,%.17g,%.17g,%.17g\n", trace.times[i],
                 trace.x_expect[i], trace.p_expect[i], trace.x_classical[i],
                 trace.p_classical[i]);
  }
  std::fclose(out);
}

PauliSystem pauli_system() {
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  sz << 1, 0, 0, -1;
  return PauliSystem{Operator(sx), Operator(sy), Operator(sz),
                     Operator::identity(2)};
}

Operator tensor_product(const Operator& a, const Operator& b) {
  const Eigen::Index da = a.dim(), db = b.dim();
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    }
  }
  return Operator(std::move(out));
}

ProjectiveState tensor_product(const ProjectiveState& a,
                               const ProjectiveState& b) {
  const Eigen::Index da = a.dim(), db = b.dim();
  Vector out(da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    out.segment(i * db, db) = a.amplitudes()[i] * b.amplitudes();
  }
  return gauge_fix(out);
}

CanonicalFlowTrajectory hamilton_operator_flow(
    const SeparableHamiltonian& h, const OscillatorSystem& system,
    const std::vector<double>& times, const StepperConfig& config) {
  return hamilton_operator_flow(h, system.position, system.momentum, times,
                                config);
}

}  // namespace ncval
