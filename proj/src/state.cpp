#include "ncval/state.hpp"

#include <cmath>
#include <stdexcept>

namespace ncval {

ProjectiveState gauge_fix(const Vector& v, double gauge_eps) {
  if (v.size() < 2) {
    throw std::invalid_argument("state dimension must be at least 2");
  }
  if (!v.allFinite()) {
    throw std::invalid_argument("state amplitudes must be finite");
  }
  const double norm = v.norm();
  if (norm == 0.0) {
    throw std::invalid_argument("cannot gauge-fix the zero vector");
  }

  Eigen::Index pivot = -1;
  for (Eigen::Index n = 0; n < v.size(); ++n) {
    if (std::abs(v[n]) > gauge_eps * norm) {
      pivot = n;
      break;
    }
  }
  if (pivot < 0) {
    throw std::invalid_argument(
        "no component above the gauge pivot threshold");
  }

  // Multiply by conj(pivot)/|pivot| so the pivot lands on the positive real
  // axis, then normalize.
  const Complex phase = std::conj(v[pivot]) / std::abs(v[pivot]);
  Vector fixed = (phase / norm) * v;
  fixed[pivot] = Complex(std::abs(fixed[pivot]), 0.0);  // scrub phase dust
  return ProjectiveState(std::move(fixed),
                         GaugeConvention::kFirstNonzeroRealPositive);
}

double fidelity(const ProjectiveState& a, const ProjectiveState& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("state dimensions do not match");
  }
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double ray_distance(const ProjectiveState& a, const ProjectiveState& b) {
  return std::sqrt(std::max(0.0, 1.0 - fidelity(a, b)));
}

Complex expectation(const Operator& a, const ProjectiveState& psi) {
  if (a.dim() != psi.dim()) {
    throw std::invalid_argument(
        "operator and state dimensions do not match");
  }
  return psi.amplitudes().dot(a.matrix() * psi.amplitudes());
}

}  // namespace ncval
