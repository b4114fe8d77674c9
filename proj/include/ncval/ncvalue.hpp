#pragma once

#include "ncval/state.hpp"

namespace ncval {

// Second-order jet of the expectation function
//     f_A(z, zbar) = (zbar . A . z) / (zbar . z)
// anchored at a gauge-fixed representative psi.  Components live in the
// tangent chart u -> psi + Q u (Q = 1 - |psi><psi|), expressed in ambient
// coordinates:
//     f         = <psi|A|psi>
//     grad_z    = psi^dag A Q          (covector, d f / d z_n)
//     grad_zbar = Q A psi              (vector,   d f / d zbar_n)
//     hess      = Q (A - f) Q          (d^2 f / d zbar_n d z_m)
// The jet is the complete "value" of A at the ray: together with the base it
// reconstructs A exactly (see reconstruct_operator).
class NCValue {
 public:
  NCValue(ProjectiveState base, Complex f, RowVector grad_z, Vector grad_zbar,
          Matrix hess);

  const ProjectiveState& base() const { return base_; }
  Eigen::Index dim() const { return base_.dim(); }
  Complex f() const { return f_; }
  const RowVector& grad_z() const { return grad_z_; }
  const Vector& grad_zbar() const { return grad_zbar_; }
  const Matrix& hess() const { return hess_; }

  // Largest violation of the tangency (Euler) identities:
  //   grad_z . z = 0,  zbar . grad_zbar = 0,  hess z = 0,  zbar hess = 0.
  double tangency_residual() const;

  // Jets at a common base form a complex vector space.
  friend NCValue operator+(const NCValue& u, const NCValue& v);
  friend NCValue operator-(const NCValue& u, const NCValue& v);
  friend NCValue operator*(const Complex& c, const NCValue& u);

 private:
  ProjectiveState base_;
  Complex f_;
  RowVector grad_z_;
  Vector grad_zbar_;
  Matrix hess_;
};

// Analytic 2-jet of f_A at psi (closed forms above).
NCValue ncvalue(const Operator& a, const ProjectiveState& psi);

// Inverse of `ncvalue`:
//   A = f P + grad_zbar psi^dag + psi grad_z + hess + f Q.
// Exact on jets produced by `ncvalue`; rejects jets whose tangency
// identities are violated beyond `tol`.
Operator reconstruct_operator(const NCValue& v, double tol = kTolJet);

// Star product of two jets at the same base: the jet of the operator
// product.  Computed intrinsically from the jet components,
//   f'         = f_u f_v + grad_z(u) . grad_zbar(v)
//   grad_zbar' = f_v grad_zbar(u) + f_u grad_zbar(v) + hess(u) grad_zbar(v)
//   grad_z'    = f_u grad_z(v) + f_v grad_z(u) + grad_z(u) hess(v)
//   hess'      = f_u hess(v) + f_v hess(u) + hess(u) hess(v)
//                + grad_zbar(u) grad_z(v) - (grad_z(u) . grad_zbar(v)) Q,
// so that star(ncvalue(A), ncvalue(B)) = ncvalue(AB): evaluation is a
// homomorphism from the operator algebra onto jets.  Noncommutative but
// associative.  Bases must agree entrywise within `base_tol`.
NCValue star_product(const NCValue& u, const NCValue& v,
                     double base_tol = kTolNorm);

// <AB> - <A><B> at psi; equals grad_z(A) . grad_zbar(B).  The obstruction to
// reading expectation values as a multiplicative (classical-point)
// assignment.
Complex multiplicativity_defect(const Operator& a, const Operator& b,
                                const ProjectiveState& psi);

// Antisymmetrized star product over (i hbar): ((u*v).f - (v*u).f)/(i hbar).
// Real for Hermitian sources; the dynamical bracket of observable values.
Complex poisson_bracket(const NCValue& u, const NCValue& v, double hbar);

// Symmetrized star product: ((u*v).f + (v*u).f)/2.
Complex jordan_product_value(const NCValue& u, const NCValue& v);

// Independent check on `ncvalue`: central finite differences of f_A along
// tangentially projected coordinate steps (step h in [1e-8, 1e-3]), assembled
// into a jet through the Wirtinger combinations.  Function evaluations run in
// extended precision with compensated summation so the second-derivative
// estimates stay above the cancellation floor.  Agrees with `ncvalue` to
// O(h^2).
NCValue finite_difference_jet(const Operator& a, const ProjectiveState& psi,
                              double step);

// The same jet in real phase-space coordinates q_n = Re z_n, s_n = Im z_n.
// In the tangent chart the holomorphic-holomorphic second derivatives vanish,
// so the mixed hessian determines all real second-derivative blocks:
//   d2f_dqdq = d2f_dsds = H + H^T,  d2f_dqds = i (H - H^T).
struct RealJet {
  Complex f;
  Vector df_dq;       // grad_z + grad_zbar (componentwise)
  Vector df_ds;       // i (grad_z - grad_zbar)
  Matrix d2f_dqdq;
  Matrix d2f_dqds;
  Matrix d2f_dsds;
};
RealJet to_real_jet(const NCValue& v);
NCValue from_real_jet(const RealJet& jet, const ProjectiveState& base);

}  // namespace ncval
