#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncval/state.hpp"

namespace ncval {

// Outcome tally of repeated von Neumann measurements of one observable on
// identically prepared states.  Eigenvalues are ascending and deduplicated
// (degenerate levels aggregate); counts align with them and sum to `shots`.
struct MeasurementRecord {
  std::string observable_id;
  std::vector<double> eigenvalues;
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

// Simulate Born-rule sampling of Hermitian `a` on `psi`.  Deterministic: the
// record is a pure function of (a, psi, shots, seed) via counter-based RNG
// streams, independent of platform and thread count.
MeasurementRecord sample_measurement(const Operator& a,
                                     const ProjectiveState& psi,
                                     std::uint64_t shots, std::uint64_t seed,
                                     std::string observable_id = "");

// Sample mean and its standard error (sample stddev / sqrt(shots)).
// Requires shots >= 2.
struct ExpectationEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};
ExpectationEstimate estimate_expectation(const MeasurementRecord& record);

// Raw moments sum_i counts_i lambda_i^k / shots for k = 1..k_max.
std::vector<double> empirical_moments(const MeasurementRecord& record,
                                      int k_max);

// Trace-one positive semidefinite mixed state.  Validated on construction:
// Hermitian, unit trace, eigenvalues >= -1e-10, purity in [1/dim, 1].
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);
  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

// |psi><psi| as a density matrix.
DensityMatrix pure_density(const ProjectiveState& psi);

// tr(rho A).
Complex expectation(const Operator& a, const DensityMatrix& rho);

// Generalized Gell-Mann basis for 2 <= dim <= 8: the d^2 - 1 traceless
// Hermitian matrices (symmetric, antisymmetric, diagonal families) with
// tr(G_a G_b) = 2 delta_ab.  For dim 2 these are the Pauli matrices.
std::vector<Operator> gellmann_basis(Eigen::Index dim);

// Raised when the observable set does not span the Hermitian matrices; the
// payload lists an orthonormal basis of the unconstrained directions.
class IncompleteObservableSet : public std::runtime_error {
 public:
  IncompleteObservableSet(std::string message,
                          std::vector<Operator> directions)
      : std::runtime_error(std::move(message)),
        deficient_directions(std::move(directions)) {}
  std::vector<Operator> deficient_directions;
};

// Least-squares fit of a Hermitian matrix to tr(rho O_j) = m_j (plus the
// unit-trace row), followed by projection to the nearest positive trace-one
// matrix: eigenvalue clipping and trace renormalization.  Reports the
// design-matrix condition number through `condition_number` if non-null.
DensityMatrix reconstruct_density(const std::vector<Operator>& observables,
                                  const std::vector<double>& expectation_values,
                                  double* condition_number = nullptr);
// Convenience: estimate means from records first.
DensityMatrix reconstruct_density(
    const std::vector<std::pair<Operator, MeasurementRecord>>& records,
    double* condition_number = nullptr);

// (1/2) sum |eigenvalues(rho1 - rho2)|.
double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);
// tr(rho^2).
double purity(const DensityMatrix& rho);

}  // namespace ncval
