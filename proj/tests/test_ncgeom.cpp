#include <doctest.h>

#include <cmath>
#include <complex>

#include "ncval/ncvalue.hpp"
#include "ncval/random.hpp"

namespace {

using ncval::Complex;
using ncval::Matrix;
using ncval::NCValue;
using ncval::Operator;
using ncval::ProjectiveState;
using ncval::Vector;

const Complex kI(0.0, 1.0);

Operator sigma_x() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
  return Operator(m);
}
Operator sigma_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return Operator(m);
}
Operator sigma_z() {
  Matrix m(2, 2);
  m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
  return Operator(m);
}

ProjectiveState ground2() {
  Vector v(2);
  v << Complex(1, 0), Complex(0, 0);
  return ncval::gauge_fix(v);
}

ProjectiveState plus2() {
  Vector v(2);
  v << Complex(1, 0), Complex(1, 0);
  return ncval::gauge_fix(v);
}

double jet_dev(const NCValue& u, const NCValue& v) {
  double dev = std::abs(u.f() - v.f());
  dev = std::max(dev, (u.grad_z() - v.grad_z()).cwiseAbs().maxCoeff());
  dev = std::max(dev,
                 (u.grad_zbar() - v.grad_zbar()).cwiseAbs().maxCoeff());
  dev = std::max(dev, (u.hess() - v.hess()).cwiseAbs().maxCoeff());
  return dev;
}

}  // namespace

TEST_CASE("jet of sigma_z at the ground ray") {
  const NCValue u = ncval::ncvalue(sigma_z(), ground2());
  CHECK(std::abs(u.f() - Complex(1.0, 0.0)) <= 1e-15);
  CHECK(u.grad_z().cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(u.grad_zbar().cwiseAbs().maxCoeff() <= 1e-15);
  // hess = Q (sigma_z - 1) Q = diag(0, -2)
  CHECK(std::abs(u.hess()(0, 0)) <= 1e-15);
  CHECK(std::abs(u.hess()(0, 1)) <= 1e-15);
  CHECK(std::abs(u.hess()(1, 0)) <= 1e-15);
  CHECK(std::abs(u.hess()(1, 1) - Complex(-2.0, 0.0)) <= 1e-15);
  CHECK(u.tangency_residual() <= 1e-15);
}

TEST_CASE("jet of sigma_z at the balanced ray") {
  const NCValue u = ncval::ncvalue(sigma_z(), plus2());
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(u.f()) <= 1e-15);
  // grad_zbar = Q sigma_z psi = (1, -1)/sqrt(2) in ambient coordinates
  CHECK(std::abs(u.grad_zbar()(0) - Complex(r, 0.0)) <= 1e-14);
  CHECK(std::abs(u.grad_zbar()(1) - Complex(-r, 0.0)) <= 1e-14);
  CHECK(std::abs(u.grad_z()(0) - Complex(r, 0.0)) <= 1e-14);
  CHECK(std::abs(u.grad_z()(1) - Complex(-r, 0.0)) <= 1e-14);
}

TEST_CASE("reconstruction inverts the jet") {
  const Operator back =
      ncval::reconstruct_operator(ncval::ncvalue(sigma_z(), ground2()));
  CHECK((back.matrix() - sigma_z().matrix()).cwiseAbs().maxCoeff() <=
        1e-14);

  ncval::CounterRng rng(2024, 1);
  for (int dim : {2, 3, 5, 8}) {
    for (int t = 0; t < 25; ++t) {
      const Operator a = ncval::random_operator(rng, dim);
      const ProjectiveState psi = ncval::random_state(rng, dim);
      const Operator r =
          ncval::reconstruct_operator(ncval::ncvalue(a, psi));
      CHECK((r.matrix() - a.matrix()).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("reconstruction rejects broken tangency") {
  const NCValue good = ncval::ncvalue(sigma_z(), ground2());
  Vector bad_grad(2);
  bad_grad << Complex(0.5, 0.0), Complex(0.0, 0.0);  // not tangent at e0
  const NCValue bad(good.base(), good.f(), good.grad_z(), bad_grad,
                    good.hess());
  CHECK(bad.tangency_residual() > 0.1);
  CHECK_THROWS_AS(ncval::reconstruct_operator(bad), std::invalid_argument);
}

TEST_CASE("star product matches the operator product") {
  // (sigma_x * sigma_y) at e0: f-part of the star equals <i sigma_z> = i.
  const NCValue u = ncval::ncvalue(sigma_x(), ground2());
  const NCValue v = ncval::ncvalue(sigma_y(), ground2());
  const NCValue uv = ncval::star_product(u, v);
  CHECK(std::abs(uv.f() - kI) <= 1e-15);
  CHECK(jet_dev(uv, ncval::ncvalue(sigma_x() * sigma_y(), ground2())) <=
        1e-14);

  ncval::CounterRng rng(2024, 2);
  for (int dim : {2, 4, 7}) {
    for (int t = 0; t < 25; ++t) {
      const Operator a = ncval::random_operator(rng, dim);
      const Operator b = ncval::random_operator(rng, dim);
      const ProjectiveState psi = ncval::random_state(rng, dim);
      const NCValue w = ncval::star_product(ncval::ncvalue(a, psi),
                                            ncval::ncvalue(b, psi));
      CHECK(jet_dev(w, ncval::ncvalue(a * b, psi)) <= 1e-10);
    }
  }
}

TEST_CASE("star product is associative but not commutative") {
  ncval::CounterRng rng(2024, 3);
  const Operator a = ncval::random_operator(rng, 4);
  const Operator b = ncval::random_operator(rng, 4);
  const Operator c = ncval::random_operator(rng, 4);
  const ProjectiveState psi = ncval::random_state(rng, 4);
  const NCValue u = ncval::ncvalue(a, psi);
  const NCValue v = ncval::ncvalue(b, psi);
  const NCValue w = ncval::ncvalue(c, psi);
  CHECK(jet_dev(ncval::star_product(ncval::star_product(u, v), w),
                ncval::star_product(u, ncval::star_product(v, w))) <=
        1e-10);

  const NCValue xy =
      ncval::star_product(ncval::ncvalue(sigma_x(), ground2()),
                          ncval::ncvalue(sigma_y(), ground2()));
  const NCValue yx =
      ncval::star_product(ncval::ncvalue(sigma_y(), ground2()),
                          ncval::ncvalue(sigma_x(), ground2()));
  CHECK(std::abs(xy.f() - yx.f()) > 1.0);  // 2i apart
}

TEST_CASE("star product requires a common base") {
  const NCValue u = ncval::ncvalue(sigma_x(), ground2());
  const NCValue v = ncval::ncvalue(sigma_y(), plus2());
  CHECK_THROWS_AS(ncval::star_product(u, v), std::invalid_argument);
}

TEST_CASE("multiplicativity defect") {
  // <A^2> - <A>^2 vanishes on eigenstates.
  CHECK(std::abs(ncval::multiplicativity_defect(sigma_z(), sigma_z(),
                                                ground2())) <= 1e-15);
  // Nonzero cross defect: <sigma_x sigma_y> - 0 = i at e0.
  CHECK(std::abs(ncval::multiplicativity_defect(sigma_x(), sigma_y(),
                                                ground2()) -
                 kI) <= 1e-15);
}

TEST_CASE("poisson bracket and jordan product at e0") {
  const NCValue u = ncval::ncvalue(sigma_x(), ground2());
  const NCValue v = ncval::ncvalue(sigma_y(), ground2());
  // <[sigma_x, sigma_y]> / (i hbar) = <2 sigma_z> = 2 at hbar = 1.
  CHECK(std::abs(ncval::poisson_bracket(u, v, 1.0) - Complex(2.0, 0.0)) <=
        1e-14);
  CHECK(std::abs(ncval::poisson_bracket(u, v, 2.0) - Complex(1.0, 0.0)) <=
        1e-14);
  CHECK(std::abs(ncval::jordan_product_value(u, v)) <= 1e-15);
  CHECK_THROWS_AS(ncval::poisson_bracket(u, v, 0.0), std::invalid_argument);
}

TEST_CASE("finite differences confirm the analytic jet") {
  const NCValue fd =
      ncval::finite_difference_jet(sigma_z(), ground2(), 1e-5);
  CHECK(jet_dev(fd, ncval::ncvalue(sigma_z(), ground2())) <= 1e-8);

  ncval::CounterRng rng(2024, 4);
  const Operator a = ncval::random_operator(rng, 3);
  const ProjectiveState psi = ncval::random_state(rng, 3);
  CHECK(jet_dev(ncval::finite_difference_jet(a, psi, 1e-5),
                ncval::ncvalue(a, psi)) <= 1e-7);

  CHECK_THROWS_AS(ncval::finite_difference_jet(a, psi, 1e-2),
                  std::invalid_argument);
  CHECK_THROWS_AS(ncval::finite_difference_jet(a, psi, 0.0),
                  std::invalid_argument);
}

TEST_CASE("finite differences converge at second order") {
  ncval::CounterRng rng(2024, 5);
  const Operator a = ncval::random_operator(rng, 4);
  const ProjectiveState psi = ncval::random_state(rng, 4);
  const NCValue exact = ncval::ncvalue(a, psi);
  const double e1 =
      jet_dev(ncval::finite_difference_jet(a, psi, 1e-3), exact);
  const double e2 =
      jet_dev(ncval::finite_difference_jet(a, psi, 5e-4), exact);
  CHECK(e1 / e2 >= 3.5);
  CHECK(e1 / e2 <= 4.5);
}

TEST_CASE("jets are gauge invariant") {
  ncval::CounterRng rng(2024, 6);
  const Operator a = ncval::random_operator(rng, 5);
  Vector v(5);
  for (int i = 0; i < 5; ++i) v(i) = Complex(rng.next_normal(), rng.next_normal());
  const NCValue u1 = ncval::ncvalue(a, ncval::gauge_fix(v));
  const NCValue u2 =
      ncval::ncvalue(a, ncval::gauge_fix(std::polar(0.7, 2.1) * v));
  CHECK(jet_dev(u1, u2) <= 1e-12);
}

TEST_CASE("hermitian sources give real-structured jets") {
  ncval::CounterRng rng(2024, 7);
  const Operator h = ncval::random_hermitian(rng, 6);
  const ProjectiveState psi = ncval::random_state(rng, 6);
  const NCValue u = ncval::ncvalue(h, psi);
  CHECK(std::abs(std::imag(u.f())) <= 1e-14);
  CHECK((u.grad_z().adjoint() - u.grad_zbar()).cwiseAbs().maxCoeff() <=
        1e-14);
  CHECK((u.hess() - u.hess().adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("real jet round trip and block identities") {
  ncval::CounterRng rng(2024, 8);
  const Operator a = ncval::random_operator(rng, 4);
  const ProjectiveState psi = ncval::random_state(rng, 4);
  const NCValue u = ncval::ncvalue(a, psi);
  const ncval::RealJet rj = ncval::to_real_jet(u);

  const Vector dq = u.grad_z().transpose() + u.grad_zbar();
  const Vector ds = kI * (u.grad_z().transpose() - u.grad_zbar());
  CHECK((rj.df_dq - dq).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((rj.df_ds - ds).cwiseAbs().maxCoeff() <= 1e-14);
  const Matrix qq = u.hess() + u.hess().transpose();
  CHECK((rj.d2f_dqdq - qq).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((rj.d2f_dsds - qq).cwiseAbs().maxCoeff() <= 1e-14);
  const Matrix qs = kI * (u.hess() - u.hess().transpose());
  CHECK((rj.d2f_dqds - qs).cwiseAbs().maxCoeff() <= 1e-14);

  CHECK(jet_dev(ncval::from_real_jet(rj, psi), u) <= 1e-13);
}

TEST_CASE("jet vector space operations") {
  const NCValue u = ncval::ncvalue(sigma_x(), ground2());
  const NCValue v = ncval::ncvalue(sigma_y(), ground2());
  const NCValue sum = u + v;
  CHECK(jet_dev(sum, ncval::ncvalue(sigma_x() + sigma_y(), ground2())) <=
        1e-14);
  const NCValue scaled = Complex(0.0, 2.0) * u;
  CHECK(jet_dev(scaled,
                ncval::ncvalue(Complex(0.0, 2.0) * sigma_x(), ground2())) <=
        1e-14);
  const NCValue diff = u - v;
  CHECK(jet_dev(diff, ncval::ncvalue(sigma_x() - sigma_y(), ground2())) <=
        1e-14);
}
