#include "ncval/ncvalue.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ncval {

namespace {

void require_same_base(const ProjectiveState& a, const ProjectiveState& b,
                       double tol) {
  if (a.dim() != b.dim() ||
      (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("jets are anchored at different base rays");
  }
}

}  // namespace

NCValue::NCValue(ProjectiveState base, Complex f, RowVector grad_z,
                 Vector grad_zbar, Matrix hess)
    : base_(std::move(base)),
      f_(f),
      grad_z_(std::move(grad_z)),
      grad_zbar_(std::move(grad_zbar)),
      hess_(std::move(hess)) {
  const Eigen::Index d = base_.dim();
  if (grad_z_.size() != d || grad_zbar_.size() != d || hess_.rows() != d ||
      hess_.cols() != d) {
    throw std::invalid_argument("jet component dimensions do not match base");
  }
  if (!std::isfinite(f_.real()) || !std::isfinite(f_.imag()) ||
      !grad_z_.allFinite() || !grad_zbar_.allFinite() || !hess_.allFinite()) {
    throw std::invalid_argument("jet components must be finite");
  }
}

double NCValue::tangency_residual() const {
  const Vector& z = base_.amplitudes();
  double r = std::abs((grad_z_ * z).value());
  r = std::max(r, std::abs(z.dot(grad_zbar_)));
  r = std::max(r, (hess_ * z).cwiseAbs().maxCoeff());
  r = std::max(r, (z.adjoint() * hess_).cwiseAbs().maxCoeff());
  return r;
}

NCValue operator+(const NCValue& u, const NCValue& v) {
  require_same_base(u.base_, v.base_, kTolNorm);
  return NCValue(u.base_, u.f_ + v.f_, u.grad_z_ + v.grad_z_,
                 u.grad_zbar_ + v.grad_zbar_, u.hess_ + v.hess_);
}

NCValue operator-(const NCValue& u, const NCValue& v) {
  require_same_base(u.base_, v.base_, kTolNorm);
  return NCValue(u.base_, u.f_ - v.f_, u.grad_z_ - v.grad_z_,
                 u.grad_zbar_ - v.grad_zbar_, u.hess_ - v.hess_);
}

NCValue operator*(const Complex& c, const NCValue& u) {
  return NCValue(u.base_, c * u.f_, c * u.grad_z_, c * u.grad_zbar_,
                 c * u.hess_);
}

NCValue ncvalue(const Operator& a, const ProjectiveState& psi) {
  if (a.dim() != psi.dim()) {
    throw std::invalid_argument("operator and state dimensions do not match");
  }
  const Vector& z = psi.amplitudes();
  const Vector az = a.matrix() * z;
  const Complex f = z.dot(az);
  Vector grad_zbar = az - f * z;                        // Q A psi
  RowVector grad_z = z.adjoint() * a.matrix() - f * z.adjoint();  // psi^dag A Q
  // Q (A - f) Q = (A - f) - z (z^dag (A - f)) - ((A - f) z) z^dag, using
  // z^dag (A - f) z = 0.
  Matrix hess = a.matrix() - f * Matrix::Identity(a.dim(), a.dim()) -
                z * grad_z - grad_zbar * z.adjoint();
  return NCValue(psi, f, std::move(grad_z), std::move(grad_zbar),
                 std::move(hess));
}

Operator reconstruct_operator(const NCValue& v, double tol) {
  if (v.tangency_residual() > tol) {
    throw std::invalid_argument(
        "jet violates the tangency identities; not reconstructible");
  }
  const Vector& z = v.base().amplitudes();
  Matrix a = v.f() * Matrix::Identity(v.dim(), v.dim()) +
             v.grad_zbar() * z.adjoint() + z * v.grad_z() + v.hess();
  return Operator(std::move(a));
}

NCValue star_product(const NCValue& u, const NCValue& v, double base_tol) {
  require_same_base(u.base(), v.base(), base_tol);
  const Vector& z = u.base().amplitudes();
  const Eigen::Index d = u.dim();

  const Complex cross = (u.grad_z() * v.grad_zbar()).value();
  const Complex f = u.f() * v.f() + cross;
  Vector grad_zbar =
      v.f() * u.grad_zbar() + u.f() * v.grad_zbar() + u.hess() * v.grad_zbar();
  RowVector grad_z =
      u.f() * v.grad_z() + v.f() * u.grad_z() + u.grad_z() * v.hess();
  const Matrix q = Matrix::Identity(d, d) - z * z.adjoint();
  Matrix hess = u.f() * v.hess() + v.f() * u.hess() + u.hess() * v.hess() +
                u.grad_zbar() * v.grad_z() - cross * q;
  return NCValue(u.base(), f, std::move(grad_z), std::move(grad_zbar),
                 std::move(hess));
}

Complex multiplicativity_defect(const Operator& a, const Operator& b,
                                const ProjectiveState& psi) {
  return expectation(a * b, psi) - expectation(a, psi) * expectation(b, psi);
}

Complex poisson_bracket(const NCValue& u, const NCValue& v, double hbar) {
  if (!(hbar > 0.0)) {
    throw std::invalid_argument("hbar must be positive");
  }
  require_same_base(u.base(), v.base(), kTolNorm);
  // Only the zeroth star components are needed: the symmetric f_u f_v terms
  // cancel in the antisymmetrization.
  const Complex diff =
      (u.grad_z() * v.grad_zbar()).value() - (v.grad_z() * u.grad_zbar()).value();
  return diff / Complex(0.0, hbar);
}

Complex jordan_product_value(const NCValue& u, const NCValue& v) {
  require_same_base(u.base(), v.base(), kTolNorm);
  const Complex sym = 0.5 * ((u.grad_z() * v.grad_zbar()).value() +
                             (v.grad_z() * u.grad_zbar()).value());
  return u.f() * v.f() + sym;
}

namespace {

// --- finite-difference machinery -----------------------------------------
//
// Evaluations run in 80-bit long double with compensated summation: the
// four-point second-difference quotients divide by 4 h^2, which at h = 1e-5
// sits right at the double-precision cancellation floor (~eps/h^2 = 1e-6).
// Extended precision pushes that floor below the O(h^2) truncation error.

using LComplex = std::complex<long double>;
using LVector = std::vector<LComplex>;

// Neumaier-compensated accumulator for complex long doubles.
struct KahanSum {
  long double re = 0.0L, im = 0.0L, cre = 0.0L, cim = 0.0L;

  void add(const LComplex& x) {
    add_part(re, cre, x.real());
    add_part(im, cim, x.imag());
  }
  LComplex value() const { return {re + cre, im + cim}; }

 private:
  static void add_part(long double& s, long double& c, long double v) {
    const long double t = s + v;
    if (std::fabs(s) >= std::fabs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  }
};

struct ExpectationEvaluator {
  std::vector<LVector> rows;  // A, row-major
  LVector base;
  Eigen::Index d;

  ExpectationEvaluator(const Operator& a, const ProjectiveState& psi)
      : d(a.dim()) {
    rows.assign(d, LVector(d));
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        rows[r][c] = LComplex(a.matrix()(r, c).real(), a.matrix()(r, c).imag());
      }
    }
    base.resize(d);
    for (Eigen::Index n = 0; n < d; ++n) {
      base[n] =
          LComplex(psi.amplitudes()[n].real(), psi.amplitudes()[n].imag());
    }
  }

  // f_A(base + w) = (v^dag A v)/(v^dag v), v = base + w.
  LComplex eval(const LVector& w) const {
    LVector v(d);
    for (Eigen::Index n = 0; n < d; ++n) v[n] = base[n] + w[n];
    KahanSum numerator, denominator;
    for (Eigen::Index r = 0; r < d; ++r) {
      KahanSum row;
      for (Eigen::Index c = 0; c < d; ++c) row.add(rows[r][c] * v[c]);
      numerator.add(std::conj(v[r]) * row.value());
      denominator.add(std::conj(v[r]) * v[r]);
    }
    return numerator.value() / denominator.value();
  }
};

}  // namespace

NCValue finite_difference_jet(const Operator& a, const ProjectiveState& psi,
                              double step) {
  if (a.dim() != psi.dim()) {
    throw std::invalid_argument("operator and state dimensions do not match");
  }
  if (!(step >= 1e-8 && step <= 1e-3)) {
    throw std::invalid_argument("step must lie in [1e-8, 1e-3]");
  }
  const Eigen::Index d = a.dim();
  const ExpectationEvaluator g(a, psi);
  const long double h = static_cast<long double>(step);

  // Tangent step directions Q e_m = e_m - conj(z_m) z, and i times them.
  std::vector<LVector> dir(d, LVector(d));
  for (Eigen::Index m = 0; m < d; ++m) {
    for (Eigen::Index n = 0; n < d; ++n) {
      dir[m][n] = -std::conj(g.base[m]) * g.base[n];
    }
    dir[m][m] += LComplex(1.0L, 0.0L);
  }
  const LComplex iunit(0.0L, 1.0L);

  auto displaced = [&](Eigen::Index m1, LComplex c1, Eigen::Index m2,
                       LComplex c2) {
    LVector w(d, LComplex(0.0L, 0.0L));
    for (Eigen::Index n = 0; n < d; ++n) {
      w[n] = c1 * dir[m1][n] + c2 * dir[m2][n];
    }
    return g.eval(w);
  };

  const LComplex f0 = g.eval(LVector(d, LComplex(0.0L, 0.0L)));

  RowVector grad_z(d);
  Vector grad_zbar(d);
  for (Eigen::Index m = 0; m < d; ++m) {
    const LComplex dq =
        (displaced(m, h, m, 0.0L) - displaced(m, -h, m, 0.0L)) / (2.0L * h);
    const LComplex ds =
        (displaced(m, iunit * h, m, 0.0L) - displaced(m, -iunit * h, m, 0.0L)) /
        (2.0L * h);
    const LComplex gz = (dq - iunit * ds) / 2.0L;
    const LComplex gzb = (dq + iunit * ds) / 2.0L;
    grad_z[m] = Complex(static_cast<double>(gz.real()),
                        static_cast<double>(gz.imag()));
    grad_zbar[m] = Complex(static_cast<double>(gzb.real()),
                           static_cast<double>(gzb.imag()));
  }

  // Mixed hessian d^2 f / d zbar_n d z_m via the Wirtinger combination of
  // four-point real second differences along (q, s) direction pairs.
  Matrix hess(d, d);
  const LComplex steps[2] = {LComplex(h, 0.0L), iunit * h};
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = 0; m < d; ++m) {
      LComplex second[2][2];
      for (int an = 0; an < 2; ++an) {
        for (int bm = 0; bm < 2; ++bm) {
          const LComplex sn = steps[an];
          const LComplex sm = steps[bm];
          const LComplex quad =
              displaced(n, sn, m, sm) - displaced(n, sn, m, -sm) -
              displaced(n, -sn, m, sm) + displaced(n, -sn, m, -sm);
          second[an][bm] = quad / (4.0L * h * h);
        }
      }
      const LComplex mixed = (second[0][0] + second[1][1] +
                              iunit * (second[1][0] - second[0][1])) /
                             4.0L;
      hess(n, m) = Complex(static_cast<double>(mixed.real()),
                           static_cast<double>(mixed.imag()));
    }
  }

  // Tangential cleanup: the step directions already live in the chart, so
  // this only removes numerical dust from the Euler identities.
  const Vector& z = psi.amplitudes();
  const Matrix q = Matrix::Identity(d, d) - z * z.adjoint();
  grad_z = grad_z * q;
  grad_zbar = q * grad_zbar;
  hess = q * hess * q;

  const Complex f(static_cast<double>(f0.real()),
                  static_cast<double>(f0.imag()));
  return NCValue(psi, f, std::move(grad_z), std::move(grad_zbar),
                 std::move(hess));
}

RealJet to_real_jet(const NCValue& v) {
  RealJet jet;
  jet.f = v.f();
  const Vector gz = v.grad_z().transpose();
  jet.df_dq = gz + v.grad_zbar();
  jet.df_ds = Complex(0.0, 1.0) * (gz - v.grad_zbar());
  const Matrix& h = v.hess();
  jet.d2f_dqdq = h + h.transpose();
  jet.d2f_dqds = Complex(0.0, 1.0) * (h - h.transpose());
  jet.d2f_dsds = jet.d2f_dqdq;
  return jet;
}

NCValue from_real_jet(const RealJet& jet, const ProjectiveState& base) {
  const Complex iunit(0.0, 1.0);
  RowVector grad_z = (0.5 * (jet.df_dq - iunit * jet.df_ds)).transpose();
  Vector grad_zbar = 0.5 * (jet.df_dq + iunit * jet.df_ds);
  Matrix hess = 0.5 * (jet.d2f_dqdq - iunit * jet.d2f_dqds);
  return NCValue(base, jet.f, std::move(grad_z), std::move(grad_zbar),
                 std::move(hess));
}

}  // namespace ncval
