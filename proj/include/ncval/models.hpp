#pragma once

#include "ncval/dynamics.hpp"

namespace ncval {

// Truncated harmonic-oscillator model on the lowest `levels` Fock states.
// The ladder operator has entries a[n-1][n] = sqrt(n); the canonical pair is
//   X = sqrt(hbar/(2 m omega)) (a + a^dag),
//   P = i sqrt(hbar m omega / 2) (a^dag - a),
// and H = P^2/(2m) + m omega^2 X^2 / 2.  Truncation makes the canonical
// commutator defective in the top level only:
//   [X, P] = i hbar (1 - levels |levels-1><levels-1|),
// and distorts the top diagonal entry of H; everything below is exact.
struct OscillatorSystem {
  int levels = 0;
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
  Operator lowering;
  Operator position;
  Operator momentum;
  Operator hamiltonian;
};

// Requires levels >= 4 and positive hbar, mass, omega.
OscillatorSystem build_oscillator(int levels, double hbar = 1.0,
                                  double mass = 1.0, double omega = 1.0);

// [X, P] - i hbar: exactly -i hbar levels |levels-1><levels-1| in floating
// point up to rounding.
Operator ccr_defect(const OscillatorSystem& system);

// Fock basis state |n>, 0 <= n < levels.
ProjectiveState fock_state(const OscillatorSystem& system, int n);

// Truncated and renormalized coherent state, amplitudes proportional to
// alpha^n / sqrt(n!).  Admission requires |alpha|^2 <= levels/4 and a
// truncated-tail norm deficit below 1e-8 so the state is faithful.
ProjectiveState coherent_state(const OscillatorSystem& system, Complex alpha);

// Two rays (Fock |0> and |1> rescaled comparison) sharing first moments of
// the canonical pair but separated at second order: the jets of X differ in
// the hessian block even though <X> and <P> agree.  The classic witness that
// expectation values alone underdetermine the state while jets do not.
struct DegeneracyReport {
  double x_mean_ground = 0.0;
  double x_mean_excited = 0.0;
  double p_mean_ground = 0.0;
  double p_mean_excited = 0.0;
  double x_variance_ground = 0.0;
  double x_variance_excited = 0.0;
  double hess_distance = 0.0;  // max-abs difference of the X-jet hessians
};
struct DegeneracyPair {
  ProjectiveState ground;
  ProjectiveState excited;
  DegeneracyReport report;
};
DegeneracyPair expectation_degeneracy_pair(const OscillatorSystem& system);

// <X>(t), <P>(t) along the exact Schrodinger evolution, next to the
// classical harmonic flow seeded at (<X>(0), <P>(0)).  Times follow the
// propagator convention (hbar absorbed), so the classical angular frequency
// is hbar * omega in those units.
struct EhrenfestTrace {
  std::vector<double> times;
  std::vector<double> x_expect;
  std::vector<double> p_expect;
  std::vector<double> x_classical;
  std::vector<double> p_classical;
  double max_position_deviation = 0.0;
  double max_momentum_deviation = 0.0;
};
EhrenfestTrace ehrenfest_trace(const OscillatorSystem& system,
                               const ProjectiveState& psi0,
                               const std::vector<double>& times);
void export_ehrenfest_csv(const EhrenfestTrace& trace,
                          const std::string& path);

// Two-level system: Pauli matrices and the identity.
struct PauliSystem {
  Operator sigma_x;
  Operator sigma_y;
  Operator sigma_z;
  Operator identity;
};
PauliSystem pauli_system();

// Kronecker composition helper for multi-mode systems (off by default at
// desk scale; provided for building X_i = X (x) 1 (x) ... style operators).
Operator tensor_product(const Operator& a, const Operator& b);
ProjectiveState tensor_product(const ProjectiveState& a,
                               const ProjectiveState& b);

// Convenience overload: flow the system's own canonical pair.
CanonicalFlowTrajectory hamilton_operator_flow(
    const SeparableHamiltonian& h, const OscillatorSystem& system,
    const std::vector<double>& times, const StepperConfig& config = {});

}  // namespace ncval
