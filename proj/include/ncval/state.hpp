#pragma once

#include "ncval/operator.hpp"

namespace ncval {

// Gauge conventions for picking a representative of a ray.  Only one is
// implemented; the tag travels with the state and its serialized form.
enum class GaugeConvention { kFirstNonzeroRealPositive };

// Unit-norm, gauge-fixed representative of a ray in projective Hilbert
// space.  Construct through `gauge_fix`; the stored amplitudes z_n carry the
// real coordinates q_n = Re z_n, s_n = Im z_n of the underlying phase space.
class ProjectiveState {
 public:
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  GaugeConvention gauge() const { return gauge_; }

  RealVector real_coords() const { return amplitudes_.real(); }
  RealVector imag_coords() const { return amplitudes_.imag(); }

  friend ProjectiveState gauge_fix(const Vector& v, double gauge_eps);

 private:
  ProjectiveState(Vector amplitudes, GaugeConvention gauge)
      : amplitudes_(std::move(amplitudes)), gauge_(gauge) {}

  friend class StateLoader;  // adopts validated amplitudes bit-exactly

  Vector amplitudes_;
  GaugeConvention gauge_;
};

// Normalize and rotate the global phase so the first component of modulus
// greater than `gauge_eps` becomes real and positive.  Idempotent, and
// invariant under v -> exp(i theta) v.  Throws on zero/non-finite input or
// when every component is below the pivot threshold.
ProjectiveState gauge_fix(const Vector& v, double gauge_eps = kGaugeEps);

// |<a|b>|^2: probability overlap of two rays.
double fidelity(const ProjectiveState& a, const ProjectiveState& b);

// sin of the Fubini-Study angle, sqrt(1 - |<a|b>|^2): 0 on equal rays, 1 on
// orthogonal ones.  Phase-convention independent.
double ray_distance(const ProjectiveState& a, const ProjectiveState& b);

// <psi|A|psi> on the gauge-fixed representative.
Complex expectation(const Operator& a, const ProjectiveState& psi);

}  // namespace ncval
