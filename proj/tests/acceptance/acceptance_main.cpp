// Acceptance gate: twelve numbered criteria covering the jet algebra, the
// dynamics pictures, the truncated oscillator, and simulated tomography.
// Each criterion prints one [PASS]/[FAIL] line with the measured numbers;
// the process exits 1 if any criterion fails.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "ncval/models.hpp"
#include "ncval/ncvalue.hpp"
#include "ncval/random.hpp"
#include "ncval/suites.hpp"
#include "ncval/tomography.hpp"

namespace {

using ncval::Complex;
using ncval::CounterRng;
using ncval::Matrix;
using ncval::NCValue;
using ncval::Operator;
using ncval::OscillatorSystem;
using ncval::ProjectiveState;
using ncval::Vector;

constexpr double kPi = 3.14159265358979323846;
constexpr std::uint64_t kSeed = 20240817;

int g_failed = 0;

void criterion(int n, const char* name, bool ok, const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", ok ? "[PASS]" : "[FAIL]", n,
              name, detail.c_str());
  if (!ok) ++g_failed;
}

std::string fmt(const char* pattern, double a, double b = 0.0,
                double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

std::uint64_t stream_of(std::uint64_t salt, std::uint64_t major,
                        std::uint64_t minor = 0) {
  return (salt << 56) ^ (major << 28) ^ minor;
}

double jet_deviation(const NCValue& u, const NCValue& v) {
  double dev = std::abs(u.f() - v.f());
  dev = std::max(dev, (u.grad_z() - v.grad_z()).cwiseAbs().maxCoeff());
  dev = std::max(dev, (u.grad_zbar() - v.grad_zbar()).cwiseAbs().maxCoeff());
  dev = std::max(dev, (u.hess() - v.hess()).cwiseAbs().maxCoeff());
  return dev;
}

std::vector<double> linspace_open(double span, int points) {
  std::vector<double> times(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) times[k] = span * (k + 1) / points;
  return times;
}

const std::vector<int> kDims = {2, 3, 4, 8, 16};

// 1. Evaluation is an algebra homomorphism: star_product of two jets equals
// the jet of the operator product, 1000 random pairs per dimension.
void criterion_homomorphism() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int dim : kDims) {
    for (int t = 0; t < 1000; ++t) {
      CounterRng rng(kSeed, stream_of(31, dim, t));
      const Operator a = random_operator(rng, dim);
      const Operator b = random_operator(rng, dim);
      const ProjectiveState psi = random_state(rng, dim);
      const NCValue u = ncval::ncvalue(a, psi);
      const NCValue v = ncval::ncvalue(b, psi);
      worst = std::max(worst, jet_deviation(ncval::star_product(u, v),
                                            ncval::ncvalue(a * b, psi)));
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  criterion(1, "evaluation homomorphism", worst <= 1e-8 && elapsed <= 120.0,
            fmt("max jet error %.3e over 1000 pairs x 5 dims, %.1fs", worst,
                elapsed));
}

// 2. The star product is associative: (u*v)*w = u*(v*w), 300 triples per
// dimension.
void criterion_associativity() {
  double worst = 0.0;
  for (int dim : kDims) {
    for (int t = 0; t < 300; ++t) {
      CounterRng rng(kSeed, stream_of(32, dim, t));
      const Operator a = random_operator(rng, dim);
      const Operator b = random_operator(rng, dim);
      const Operator c = random_operator(rng, dim);
      const ProjectiveState psi = random_state(rng, dim);
      const NCValue u = ncval::ncvalue(a, psi);
      const NCValue v = ncval::ncvalue(b, psi);
      const NCValue w = ncval::ncvalue(c, psi);
      worst = std::max(
          worst,
          jet_deviation(ncval::star_product(ncval::star_product(u, v), w),
                        ncval::star_product(u, ncval::star_product(v, w))));
    }
  }
  criterion(2, "star-product associativity", worst <= 1e-8,
            fmt("max error %.3e over 300 triples x 5 dims", worst));
}

// 3. No multiplicative functional: <XP> - <X><P> = i hbar / 2 on the ground
// state, and the antisymmetrized defect equals i hbar on interior states.
void criterion_multiplicativity() {
  const OscillatorSystem sys = ncval::build_oscillator(16);
  const Complex defect = ncval::multiplicativity_defect(
      sys.position, sys.momentum, ncval::fock_state(sys, 0));
  const double ground_err = std::abs(defect - Complex(0.0, 0.5));

  double antisym_err = 0.0;
  CounterRng rng(kSeed, stream_of(33, 16));
  for (int t = 0; t < 200; ++t) {
    const ProjectiveState psi = ncval::random_interior_state(rng, 16, 1);
    const Complex anti =
        ncval::multiplicativity_defect(sys.position, sys.momentum, psi) -
        ncval::multiplicativity_defect(sys.momentum, sys.position, psi);
    antisym_err = std::max(antisym_err, std::abs(anti - Complex(0.0, 1.0)));
  }
  criterion(3, "multiplicativity defect",
            ground_err <= 1e-10 && antisym_err <= 1e-10,
            fmt("|<XP>-<X><P> - i/2| = %.3e on |0>, antisym error %.3e on "
                "200 interior states",
                ground_err, antisym_err));
}

// 4. Jets carry full information: reconstruct_operator inverts ncvalue
// entrywise, 500 random cases per dimension.
void criterion_jet_completeness() {
  double worst = 0.0;
  for (int dim : kDims) {
    for (int t = 0; t < 500; ++t) {
      CounterRng rng(kSeed, stream_of(34, dim, t));
      const Operator a = (t % 2 == 0) ? random_operator(rng, dim)
                                      : random_hermitian(rng, dim);
      const ProjectiveState psi = random_state(rng, dim);
      const Operator back =
          ncval::reconstruct_operator(ncval::ncvalue(a, psi));
      worst = std::max(worst,
                       (back.matrix() - a.matrix()).cwiseAbs().maxCoeff());
    }
  }
  criterion(4, "jet completeness (reconstruction)", worst <= 1e-9,
            fmt("max entrywise error %.3e over 500 cases x 5 dims", worst));
}

// 5. The analytic jet matches central finite differences at O(h^2): absolute
// agreement at h = 1e-5 and fourfold error reduction when halving h.
void criterion_finite_difference() {
  double fd_worst = 0.0;
  double ratio_lo = 1e300, ratio_hi = 0.0;
  for (int dim : {2, 4, 8}) {
    for (int t = 0; t < 10; ++t) {
      CounterRng rng(kSeed, stream_of(35, dim, t));
      const Operator a = random_operator(rng, dim);
      const ProjectiveState psi = random_state(rng, dim);
      fd_worst = std::max(
          fd_worst, jet_deviation(ncval::finite_difference_jet(a, psi, 1e-5),
                                  ncval::ncvalue(a, psi)));
    }
    CounterRng rng(kSeed, stream_of(35, dim, 0));
    const Operator a = random_operator(rng, dim);
    const ProjectiveState psi = random_state(rng, dim);
    const NCValue exact = ncval::ncvalue(a, psi);
    const double err_h =
        jet_deviation(ncval::finite_difference_jet(a, psi, 1e-3), exact);
    const double err_h2 =
        jet_deviation(ncval::finite_difference_jet(a, psi, 5e-4), exact);
    ratio_lo = std::min(ratio_lo, err_h / err_h2);
    ratio_hi = std::max(ratio_hi, err_h / err_h2);
  }
  criterion(5, "finite-difference cross-check",
            fd_worst <= 1e-7 && ratio_lo >= 3.5 && ratio_hi <= 4.5,
            fmt("max error %.3e at h=1e-5, halving ratios in [%.2f, %.2f]",
                fd_worst, ratio_lo, ratio_hi));
}

// 6. Truncated CCR: [X,P] - i hbar = -i hbar N |N-1><N-1| to rounding.
void criterion_ccr() {
  double worst = 0.0;
  for (int levels : {4, 8, 16, 32}) {
    Matrix defect =
        ncval::ccr_defect(ncval::build_oscillator(levels)).matrix();
    defect(levels - 1, levels - 1) -= Complex(0.0, -double(levels));
    worst = std::max(worst, defect.cwiseAbs().maxCoeff());
  }
  criterion(6, "truncated canonical commutator", worst <= 1e-12,
            fmt("max deviation %.3e from -i hbar N |N-1><N-1|, N in "
                "{4,8,16,32}",
                worst));
}

// 7. Dynamics pictures agree: Schrodinger vs Heisenberg expectations, the
// real-coordinate RK4 flow vs the spectral propagator, and fourth-order
// step-size convergence.
void criterion_pictures() {
  const ncval::PauliSystem pauli = ncval::pauli_system();
  const Operator h_pauli = 0.6 * pauli.sigma_x + 0.8 * pauli.sigma_z;
  Vector q(2);
  q << Complex(0.6, 0.0), Complex(0.0, 0.8);
  const ProjectiveState psi_q = ncval::gauge_fix(q);
  const std::vector<double> times = linspace_open(2.0 * kPi, 100);

  const auto eq_pauli =
      ncval::picture_equivalence_check(h_pauli, pauli.sigma_y, psi_q, times);

  const OscillatorSystem osc = ncval::build_oscillator(8);
  Vector two = Vector::Zero(8);
  two(0) = two(1) = Complex(1.0 / std::sqrt(2.0), 0.0);
  const ProjectiveState psi_osc = ncval::gauge_fix(two);
  const auto eq_osc = ncval::picture_equivalence_check(
      osc.hamiltonian, osc.position, psi_osc, times);
  const double picture_max =
      std::max(eq_pauli.max_value_deviation, eq_osc.max_value_deviation);

  ncval::StepperConfig fine;
  fine.dt = 1e-3;
  const std::vector<double> quarters = linspace_open(2.0 * kPi, 4);
  const auto flow = ncval::realcoord_flow(h_pauli, psi_q, quarters, fine);
  const auto exact = ncval::schrodinger_propagate(h_pauli, psi_q, quarters);
  double ray_max = 0.0;
  for (std::size_t k = 0; k < quarters.size(); ++k) {
    ray_max =
        std::max(ray_max, ncval::ray_distance(flow.states[k],
                                              exact.states[k]));
  }

  Vector plus(2);
  plus << Complex(1, 0), Complex(1, 0);
  const ProjectiveState psi_plus = ncval::gauge_fix(plus);
  const std::vector<double> endpoint = {2.0 * kPi};
  const auto ref =
      ncval::schrodinger_propagate(pauli.sigma_z, psi_plus, endpoint);
  ncval::StepperConfig coarse, half;
  coarse.dt = 0.2;
  half.dt = 0.1;
  const double err_c = ncval::ray_distance(
      ncval::realcoord_flow(pauli.sigma_z, psi_plus, endpoint, coarse)
          .states[0],
      ref.states[0]);
  const double err_h = ncval::ray_distance(
      ncval::realcoord_flow(pauli.sigma_z, psi_plus, endpoint, half)
          .states[0],
      ref.states[0]);
  const double ratio = err_c / err_h;

  criterion(7, "picture equivalence",
            picture_max <= 1e-8 && ray_max <= 1e-8 && ratio >= 12.0 &&
                ratio <= 20.0,
            fmt("expectation deviation %.3e over 100 points, realcoord ray "
                "distance %.3e at dt=1e-3, halving ratio %.1f",
                picture_max, ray_max, ratio));
}

// 8. Hamilton's operator equations for T = P^2/2, V = X^2/2 reproduce the
// Heisenberg flow on the interior Fock block at N = 32.
void criterion_hamilton_flow() {
  const OscillatorSystem sys = ncval::build_oscillator(32);
  const auto h = ncval::make_separable_hamiltonian(
      {{0, 2, 0.5}, {2, 0, 0.5}});
  const std::vector<double> times = linspace_open(2.0 * kPi, 16);
  const auto flow = ncval::hamilton_operator_flow(h, sys, times);
  const auto heis =
      ncval::heisenberg_propagate(sys.hamiltonian, sys.position, times);
  double worst = 0.0;
  const int m = 31;  // interior block: the top row/column feel truncation
  for (std::size_t k = 0; k < times.size(); ++k) {
    worst = std::max(worst, (flow.position[k].matrix().topLeftCorner(m, m) -
                             heis.operators[k].matrix().topLeftCorner(m, m))
                                .cwiseAbs()
                                .maxCoeff());
  }
  criterion(8, "hamilton operator flow", worst <= 1e-6,
            fmt("max interior-block deviation %.3e over t in (0, 2pi], N=32",
                worst));
}

// 9. Classical limit: coherent-state <X>(t) rides sqrt(2) cos t.
void criterion_classical_limit() {
  const OscillatorSystem sys = ncval::build_oscillator(32);
  const std::vector<double> times = linspace_open(2.0 * kPi, 128);
  const auto trace = ncval::ehrenfest_trace(
      sys, ncval::coherent_state(sys, Complex(1.0, 0.0)), times);
  double worst = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    worst = std::max(worst, std::abs(trace.x_expect[k] -
                                     std::sqrt(2.0) * std::cos(times[k])));
  }
  criterion(9, "classical limit (Ehrenfest)", worst <= 1e-6,
            fmt("max |<X>(t) - sqrt(2) cos t| = %.3e over [0, 2pi], N=32",
                worst));
}

// 10. Expectation values degenerate where jets do not: Fock |0> and |1>
// share first moments but separate in variance and jet hessian.
void criterion_degeneracy() {
  const OscillatorSystem sys = ncval::build_oscillator(16);
  const auto pair = ncval::expectation_degeneracy_pair(sys);
  const auto& r = pair.report;
  const double mean_max =
      std::max(std::max(std::abs(r.x_mean_ground), std::abs(r.x_mean_excited)),
               std::max(std::abs(r.p_mean_ground),
                        std::abs(r.p_mean_excited)));
  const double var_gap_err =
      std::abs(r.x_variance_excited - r.x_variance_ground - 1.0);
  criterion(10, "expectation degeneracy",
            mean_max <= 1e-12 && var_gap_err <= 1e-9 &&
                r.hess_distance >= 0.5,
            fmt("first moments %.3e, variance-gap error %.3e, hess distance "
                "%.2f",
                mean_max, var_gap_err, r.hess_distance));
}

// 11. State determination: sampled Pauli tomography lands within trace
// distance 0.05 at 1e5 shots, exact inputs reproduce the projector, and the
// estimator error scales as shots^(-1/2).
void criterion_tomography() {
  const ncval::PauliSystem pauli = ncval::pauli_system();
  const std::vector<Operator> paulis = {pauli.sigma_x, pauli.sigma_y,
                                        pauli.sigma_z};
  CounterRng rng(kSeed, stream_of(41, 0));
  const ProjectiveState psi = ncval::random_state(rng, 2);
  const ncval::DensityMatrix truth = ncval::pure_density(psi);

  std::vector<double> means;
  for (const Operator& g : paulis) {
    means.push_back(ncval::expectation(g, truth).real());
  }
  const double exact_td = ncval::trace_distance(
      ncval::reconstruct_density(paulis, means), truth);

  std::vector<std::pair<Operator, ncval::MeasurementRecord>> records;
  for (std::size_t i = 0; i < paulis.size(); ++i) {
    records.emplace_back(paulis[i],
                         ncval::sample_measurement(paulis[i], psi, 100000,
                                                   kSeed ^ stream_of(41, 1, i)));
  }
  const double sampled_td =
      ncval::trace_distance(ncval::reconstruct_density(records), truth);

  Vector amps(2);
  amps << Complex(0.8, 0.0), Complex(0.6, 0.0);
  const ProjectiveState slope_state = ncval::gauge_fix(amps);
  const double slope_truth = 0.8 * 0.8 - 0.6 * 0.6;
  const int rungs = 6, seeds = 40;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < rungs; ++k) {
    const std::uint64_t shots = 100ull << k;
    double mean_sq = 0.0;
    for (int s = 0; s < seeds; ++s) {
      const auto record = ncval::sample_measurement(
          pauli.sigma_z, slope_state, shots, kSeed ^ stream_of(42, k, s));
      const double err =
          ncval::estimate_expectation(record).mean - slope_truth;
      mean_sq += err * err;
    }
    mean_sq /= seeds;
    const double lx = std::log(double(shots));
    const double ly = 0.5 * std::log(mean_sq);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (rungs * sxy - sx * sy) / (rungs * sxx - sx * sx);

  criterion(11, "state determination (tomography)",
            sampled_td <= 0.05 && exact_td <= 1e-10 && slope >= -0.6 &&
                slope <= -0.4,
            fmt("sampled trace distance %.3e at 1e5 shots, exact %.3e, "
                "log-log slope %.3f",
                sampled_td, exact_td, slope));
}

// 12. Uncertainty bound: Var(X) Var(P) >= hbar^2/4 on interior states, with
// equality on coherent states.
void criterion_uncertainty() {
  const OscillatorSystem sys = ncval::build_oscillator(16);
  const Operator x2 = sys.position * sys.position;
  const Operator p2 = sys.momentum * sys.momentum;
  double product_min = 1e300;
  CounterRng rng(kSeed, stream_of(43, 16));
  for (int t = 0; t < 1000; ++t) {
    const ProjectiveState psi = ncval::random_interior_state(rng, 16, 1);
    const double var_x = std::real(ncval::expectation(x2, psi)) -
                         std::norm(ncval::expectation(sys.position, psi));
    const double var_p = std::real(ncval::expectation(p2, psi)) -
                         std::norm(ncval::expectation(sys.momentum, psi));
    product_min = std::min(product_min, var_x * var_p);
  }

  const OscillatorSystem wide = ncval::build_oscillator(32);
  const Operator wx2 = wide.position * wide.position;
  const Operator wp2 = wide.momentum * wide.momentum;
  double eq_worst = 0.0;
  for (const Complex alpha : {Complex(1.0, 0.0), Complex(0.6, 0.8)}) {
    const ProjectiveState psi = ncval::coherent_state(wide, alpha);
    const double var_x = std::real(ncval::expectation(wx2, psi)) -
                         std::norm(ncval::expectation(wide.position, psi));
    const double var_p = std::real(ncval::expectation(wp2, psi)) -
                         std::norm(ncval::expectation(wide.momentum, psi));
    eq_worst = std::max(eq_worst, std::abs(var_x * var_p - 0.25));
  }
  criterion(12, "uncertainty bound",
            product_min >= 0.25 - 1e-10 && eq_worst <= 1e-8,
            fmt("min Var(X)Var(P) = %.12f on 1000 interior states, coherent "
                "equality error %.3e",
                product_min, eq_worst));
}

}  // namespace

int main() {
  std::printf("acceptance run: seed %llu, hbar = m = omega = 1\n",
              static_cast<unsigned long long>(kSeed));
  criterion_homomorphism();
  criterion_associativity();
  criterion_multiplicativity();
  criterion_jet_completeness();
  criterion_finite_difference();
  criterion_ccr();
  criterion_pictures();
  criterion_hamilton_flow();
  criterion_classical_limit();
  criterion_degeneracy();
  criterion_tomography();
  criterion_uncertainty();
  if (g_failed == 0) {
    std::printf("acceptance: all 12 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failed);
  return 1;
}
