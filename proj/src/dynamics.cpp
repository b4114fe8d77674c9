#include "ncval/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ncval {

namespace {

void require_ascending(const std::vector<double>& times) {
  if (times.empty()) {
    throw std::invalid_argument("times must be non-empty");
  }
  if (!(times.front() >= 0.0)) {
    throw std::invalid_argument("times must start at or after 0");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("times must be strictly increasing");
    }
  }
}

// U(t) psi0 without normalization, from a precomputed eigensystem.
Vector evolve_exact(const SpectralDecomposition& eig, const Vector& psi0,
                    double t) {
  const Vector coeffs = eig.eigenvectors.adjoint() * psi0;
  Vector phased(coeffs.size());
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    phased[k] = std::polar(1.0, -eig.eigenvalues[k] * t) * coeffs[k];
  }
  return eig.eigenvectors * phased;
}

double default_dt(const std::vector<double>& times) {
  const double span = times.back();
  return span > 0.0 ? std::min(1e-3, span / 1e4) : 1e-3;
}

std::string meta_json(const TrajectoryMeta& meta) {
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer),
                "{\"propagator\":\"%s\",\"dt\":%.17g,\"max_norm_drift\":%.17g}",
                meta.propagator.c_str(), meta.dt, meta.max_norm_drift);
  return buffer;
}

void write_double(std::ofstream& out, double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  out << buffer;
}

std::vector<double> polynomial_derivative(const std::vector<double>& coeffs) {
  std::vector<double> deriv;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    deriv.push_back(static_cast<double>(k) * coeffs[k]);
  }
  return deriv;
}

// Horner evaluation of a real-coefficient polynomial in a matrix argument.
Matrix matrix_polyval(const std::vector<double>& coeffs, const Matrix& x) {
  Matrix acc = Matrix::Zero(x.rows(), x.cols());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * x + *it * Matrix::Identity(x.rows(), x.cols());
  }
  return acc;
}

}  // namespace

StateTrajectory schrodinger_propagate(const Operator& h,
                                      const ProjectiveState& psi0,
                                      const std::vector<double>& times) {
  if (h.dim() != psi0.dim()) {
    throw std::invalid_argument("operator and state dimensions do not match");
  }
  require_ascending(times);
  const SpectralDecomposition eig = spectral_decompose(h);

  StateTrajectory trajectory;
  trajectory.times = times;
  trajectory.meta.propagator = "schrodinger_spectral";
  trajectory.states.reserve(times.size());
  for (double t : times) {
    trajectory.states.push_back(
        gauge_fix(evolve_exact(eig, psi0.amplitudes(), t)));
  }
  return trajectory;
}

OperatorTrajectory heisenberg_propagate(const Operator& h, const Operator& a0,
                                        const std::vector<double>& times) {
  if (h.dim() != a0.dim()) {
    throw std::invalid_argument("operator dimensions do not match");
  }
  require_ascending(times);
  const SpectralDecomposition eig = spectral_decompose(h);
  const Matrix in_eigenbasis =
      eig.eigenvectors.adjoint() * a0.matrix() * eig.eigenvectors;

  OperatorTrajectory trajectory;
  trajectory.times = times;
  trajectory.meta.propagator = "heisenberg_spectral";
  trajectory.operators.reserve(times.size());
  const Eigen::Index d = h.dim();
  for (double t : times) {
    // (U^dag A0 U)_{jk} = exp(i (lambda_j - lambda_k) t) * B_{jk} in the
    // eigenbasis.
    Matrix phased(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) {
        phased(j, k) =
            std::polar(1.0, (eig.eigenvalues[j] - eig.eigenvalues[k]) * t) *
            in_eigenbasis(j, k);
      }
    }
    trajectory.operators.push_back(
        Operator(eig.eigenvectors * phased * eig.eigenvectors.adjoint()));
  }
  return trajectory;
}

StateTrajectory realcoord_flow(const Operator& h, const ProjectiveState& psi0,
                               const std::vector<double>& times,
                               const StepperConfig& config) {
  if (h.dim() != psi0.dim()) {
    throw std::invalid_argument("operator and state dimensions do not match");
  }
  if (!h.is_hermitian()) {
    throw std::invalid_argument("realcoord_flow requires a Hermitian generator");
  }
  require_ascending(times);
  const double dt_target = config.dt > 0.0 ? config.dt : default_dt(times);

  // Real form of dpsi/dt = -i H psi on y = (q, s):
  //   dq/dt =  Hi q + Hr s
  //   ds/dt = -Hr q + Hi s
  const Eigen::Index d = h.dim();
  const Eigen::MatrixXd hr = h.matrix().real();
  const Eigen::MatrixXd hi = h.matrix().imag();
  Eigen::MatrixXd gen(2 * d, 2 * d);
  gen.topLeftCorner(d, d) = hi;
  gen.topRightCorner(d, d) = hr;
  gen.bottomLeftCorner(d, d) = -hr;
  gen.bottomRightCorner(d, d) = hi;

  Eigen::VectorXd y(2 * d);
  y.head(d) = psi0.amplitudes().real();
  y.tail(d) = psi0.amplitudes().imag();

  StateTrajectory trajectory;
  trajectory.times = times;
  trajectory.meta.propagator = "realcoord_rk4";
  trajectory.meta.dt = dt_target;
  double max_drift = 0.0;

  auto snapshot = [&]() {
    Vector amplitudes(d);
    for (Eigen::Index n = 0; n < d; ++n) {
      amplitudes[n] = Complex(y[n], y[d + n]);
    }
    return gauge_fix(amplitudes);
  };

  double current = 0.0;
  for (double target : times) {
    const double span = target - current;
    if (span > 0.0) {
      const auto steps =
          static_cast<long>(std::ceil(span / dt_target - 1e-12));
      const double dt = span / static_cast<double>(steps);
      for (long s = 0; s < steps; ++s) {
        const Eigen::VectorXd k1 = gen * y;
        const Eigen::VectorXd k2 = gen * (y + (0.5 * dt) * k1);
        const Eigen::VectorXd k3 = gen * (y + (0.5 * dt) * k2);
        const Eigen::VectorXd k4 = gen * (y + dt * k3);
        y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double norm = y.norm();
        const double drift = std::abs(norm - 1.0);
        max_drift = std::max(max_drift, drift);
        if (drift > config.max_norm_drift) {
          throw std::runtime_error(
              "realcoord_flow: norm drift exceeded the failure threshold");
        }
        y /= norm;
      }
      current = target;
    }
    trajectory.states.push_back(snapshot());
  }
  trajectory.meta.max_norm_drift = max_drift;
  return trajectory;
}

PictureEquivalenceReport picture_equivalence_check(
    const Operator& h, const Operator& a0, const ProjectiveState& psi0,
    const std::vector<double>& times) {
  if (h.dim() != a0.dim() || h.dim() != psi0.dim()) {
    throw std::invalid_argument("dimensions do not match");
  }
  require_ascending(times);
  const SpectralDecomposition eig = spectral_decompose(h);
  const OperatorTrajectory heisenberg = heisenberg_propagate(h, a0, times);

  PictureEquivalenceReport report;
  report.times = times;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    Vector evolved = evolve_exact(eig, psi0.amplitudes(), t);
    evolved /= evolved.norm();
    const ProjectiveState psi_t = gauge_fix(evolved);
    const NCValue schrodinger_jet = ncvalue(a0, psi_t);
    const NCValue heisenberg_jet = ncvalue(heisenberg.operators[i], psi0);

    // Gauge-aligned evolution unitary W with W psi0 = gauge_fix(U psi0):
    // W = c U, c the phase between the raw evolved representative and the
    // gauge-fixed snapshot.
    Complex c = evolved.dot(psi_t.amplitudes());
    c /= std::abs(c);
    Matrix u(h.dim(), h.dim());
    {
      Matrix phased = eig.eigenvectors;
      for (Eigen::Index k = 0; k < phased.cols(); ++k) {
        phased.col(k) *= std::polar(1.0, -eig.eigenvalues[k] * t);
      }
      u = phased * eig.eigenvectors.adjoint();
    }
    const Matrix w = c * u;

    const double value_dev =
        std::abs(schrodinger_jet.f() - heisenberg_jet.f());
    double jet_dev = value_dev;
    jet_dev = std::max(
        jet_dev, (schrodinger_jet.grad_z() * w - heisenberg_jet.grad_z())
                     .cwiseAbs()
                     .maxCoeff());
    jet_dev = std::max(jet_dev, (w.adjoint() * schrodinger_jet.grad_zbar() -
                                 heisenberg_jet.grad_zbar())
                                    .cwiseAbs()
                                    .maxCoeff());
    jet_dev = std::max(jet_dev, (w.adjoint() * schrodinger_jet.hess() * w -
                                 heisenberg_jet.hess())
                                    .cwiseAbs()
                                    .maxCoeff());

    report.value_deviation.push_back(value_dev);
    report.jet_deviation.push_back(jet_dev);
    report.max_value_deviation =
        std::max(report.max_value_deviation, value_dev);
    report.max_jet_deviation = std::max(report.max_jet_deviation, jet_dev);
  }
  return report;
}

SeparableHamiltonian make_separable_hamiltonian(
    const std::vector<HamiltonianTerm>& terms) {
  SeparableHamiltonian h;
  for (const auto& term : terms) {
    if (term.coefficient == 0.0) continue;
    if (term.position_power < 0 || term.momentum_power < 0) {
      throw std::invalid_argument("monomial powers must be non-negative");
    }
    if (term.position_power > 0 && term.momentum_power > 0) {
      throw std::invalid_argument(
          "mixed position-momentum monomials are ordering-ambiguous and not "
          "supported");
    }
    auto& coeffs = term.momentum_power > 0 ? h.kinetic : h.potential;
    const std::size_t power = static_cast<std::size_t>(
        term.momentum_power > 0 ? term.momentum_power : term.position_power);
    if (coeffs.size() <= power) coeffs.resize(power + 1, 0.0);
    coeffs[power] += term.coefficient;
  }
  return h;
}

Operator to_operator(const SeparableHamiltonian& h, const Operator& position,
                     const Operator& momentum) {
  if (position.dim() != momentum.dim()) {
    throw std::invalid_argument("canonical pair dimensions do not match");
  }
  return Operator(matrix_polyval(h.kinetic, momentum.matrix()) +
                  matrix_polyval(h.potential, position.matrix()));
}

CanonicalFlowTrajectory hamilton_operator_flow(const SeparableHamiltonian& h,
                                               const Operator& position0,
                                               const Operator& momentum0,
                                               const std::vector<double>& times,
                                               const StepperConfig& config) {
  if (position0.dim() != momentum0.dim()) {
    throw std::invalid_argument("canonical pair dimensions do not match");
  }
  require_ascending(times);
  const double dt_target = config.dt > 0.0 ? config.dt : default_dt(times);
  const std::vector<double> dt_dx = polynomial_derivative(h.kinetic);
  const std::vector<double> dv_dx = polynomial_derivative(h.potential);

  Matrix x = position0.matrix();
  Matrix p = momentum0.matrix();
  auto velocity = [&](const Matrix& xm, const Matrix& pm) {
    return std::pair<Matrix, Matrix>(matrix_polyval(dt_dx, pm),
                                     -matrix_polyval(dv_dx, xm));
  };

  CanonicalFlowTrajectory trajectory;
  trajectory.times = times;
  trajectory.meta.propagator = "hamilton_rk4";
  trajectory.meta.dt = dt_target;

  double current = 0.0;
  for (double target : times) {
    const double span = target - current;
    if (span > 0.0) {
      const auto steps =
          static_cast<long>(std::ceil(span / dt_target - 1e-12));
      const double dt = span / static_cast<double>(steps);
      for (long s = 0; s < steps; ++s) {
        const auto [k1x, k1p] = velocity(x, p);
        const auto [k2x, k2p] = velocity(x + 0.5 * dt * k1x, p + 0.5 * dt * k1p);
        const auto [k3x, k3p] = velocity(x + 0.5 * dt * k2x, p + 0.5 * dt * k2p);
        const auto [k4x, k4p] = velocity(x + dt * k3x, p + dt * k3p);
        x += (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        p += (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      }
      current = target;
    }
    trajectory.position.push_back(Operator(x));
    trajectory.momentum.push_back(Operator(p));
  }
  return trajectory;
}

void export_trajectory_csv(const StateTrajectory& trajectory,
                           const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  out << "# " << meta_json(trajectory.meta) << "\n";
  out << "t";
  const Eigen::Index d =
      trajectory.states.empty() ? 0 : trajectory.states.front().dim();
  for (Eigen::Index n = 0; n < d; ++n) {
    out << ",re_" << n << ",im_" << n;
  }
  out << "\n";
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    write_double(out, trajectory.times[i]);
    const Vector& z = trajectory.states[i].amplitudes();
    for (Eigen::Index n = 0; n < d; ++n) {
      out << ",";
      write_double(out, z[n].real());
      out << ",";
      write_double(out, z[n].imag());
    }
    out << "\n";
  }
}

void export_expectation_csv(const StateTrajectory& trajectory,
                            const std::vector<std::string>& names,
                            const std::vector<Operator>& observables,
                            const std::string& path) {
  if (names.size() != observables.size()) {
    throw std::invalid_argument("one name per observable is required");
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  out << "# " << meta_json(trajectory.meta) << "\n";
  out << "t";
  for (const auto& name : names) out << "," << name;
  out << "\n";
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    write_double(out, trajectory.times[i]);
    for (const auto& a : observables) {
      out << ",";
      write_double(out, expectation(a, trajectory.states[i]).real());
    }
    out << "\n";
  }
}

}  // namespace ncval
