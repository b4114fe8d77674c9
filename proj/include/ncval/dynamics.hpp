#pragma once

#include <string>
#include <vector>

#include "ncval/ncvalue.hpp"

namespace ncval {

// Time convention: propagators evolve the phase H * t, i.e. times are
// measured in units of inverse energy with hbar absorbed (physical time
// divided by hbar).  With hbar = 1 the two clocks coincide.

struct TrajectoryMeta {
  std::string propagator;
  double dt = 0.0;              // integrator step (0 for exact propagators)
  double max_norm_drift = 0.0;  // worst per-step renormalization drift
};

struct StateTrajectory {
  std::vector<double> times;
  std::vector<ProjectiveState> states;
  TrajectoryMeta meta;
};

struct OperatorTrajectory {
  std::vector<double> times;
  std::vector<Operator> operators;
  TrajectoryMeta meta;
};

// Exact reference propagation psi(t) = V exp(-i lambda t) V^dag psi0 through
// the spectral decomposition of H.  Snapshots are gauge-fixed per time.
// `times` must be strictly increasing.
StateTrajectory schrodinger_propagate(const Operator& h,
                                      const ProjectiveState& psi0,
                                      const std::vector<double>& times);

// Heisenberg picture A(t) = U(t)^dag A0 U(t), U = exp(-i H t); satisfies
// dA/dt = [A, H]/(i hbar) with the time convention above.
OperatorTrajectory heisenberg_propagate(const Operator& h, const Operator& a0,
                                        const std::vector<double>& times);

struct StepperConfig {
  double dt = 0.0;  // <= 0 picks the default min(1e-3, span/1e4)
  double max_norm_drift = 1e-3;  // abort threshold for |norm - 1| per step
};

// The same Schrodinger evolution integrated as the real Hamiltonian flow of
// f_H on the phase-space coordinates (q_n, s_n) - equivalently the real and
// imaginary parts of dpsi/dt = -i H psi - by explicit fixed-step RK4, not a
// matrix exponential.  Renormalizes after every step and records the worst
// drift; throws if the drift exceeds the configured threshold.
StateTrajectory realcoord_flow(const Operator& h, const ProjectiveState& psi0,
                               const std::vector<double>& times,
                               const StepperConfig& config = {});

// Cross-picture consistency: <psi(t)|A0|psi(t)> against <psi0|A(t)|psi0>,
// plus the full jets compared after transporting the Schrodinger-side jet
// back to the initial base with the (gauge-aligned) evolution unitary.
struct PictureEquivalenceReport {
  std::vector<double> times;
  std::vector<double> value_deviation;  // zeroth jet component, per time
  std::vector<double> jet_deviation;    // max over jet components, per time
  double max_value_deviation = 0.0;
  double max_jet_deviation = 0.0;
};
PictureEquivalenceReport picture_equivalence_check(
    const Operator& h, const Operator& a0, const ProjectiveState& psi0,
    const std::vector<double>& times);

// Separable Hamiltonian specification H = T(momentum) + V(position), each a
// real-coefficient polynomial (index = power).  Mixed position-momentum
// monomials are rejected at construction: their partial derivatives would be
// ordering-ambiguous.
struct HamiltonianTerm {
  int position_power = 0;
  int momentum_power = 0;
  double coefficient = 0.0;
};

struct SeparableHamiltonian {
  std::vector<double> kinetic;    // T coefficients in the momentum operator
  std::vector<double> potential;  // V coefficients in the position operator
};

SeparableHamiltonian make_separable_hamiltonian(
    const std::vector<HamiltonianTerm>& terms);

// T(P) + V(X) as a matrix polynomial in the supplied canonical pair.
Operator to_operator(const SeparableHamiltonian& h, const Operator& position,
                     const Operator& momentum);

// Operator-valued Hamilton equations dX/dt = T'(P), dP/dt = -V'(X),
// integrated entrywise with RK4 from the supplied initial pair.  In exact
// (untruncated) mechanics this is the Heisenberg flow of the canonical pair;
// at finite truncation the two agree on the interior Fock block.
struct CanonicalFlowTrajectory {
  std::vector<double> times;
  std::vector<Operator> position;
  std::vector<Operator> momentum;
  TrajectoryMeta meta;
};
CanonicalFlowTrajectory hamilton_operator_flow(
    const SeparableHamiltonian& h, const Operator& position0,
    const Operator& momentum0, const std::vector<double>& times,
    const StepperConfig& config = {});

// CSV export: '#' JSON meta line, header row, then t and re/im amplitude
// columns per time.
void export_trajectory_csv(const StateTrajectory& trajectory,
                           const std::string& path);
// CSV export of named expectation columns along a state trajectory.
void export_expectation_csv(const StateTrajectory& trajectory,
                            const std::vector<std::string>& names,
                            const std::vector<Operator>& observables,
                            const std::string& path);

}  // namespace ncval
