#include "ncval/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ncval/io.hpp"
#include "ncval/models.hpp"
#include "ncval/random.hpp"
#include "ncval/tomography.hpp"

namespace ncval {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Fallback defaults for named tolerances (see SuiteConfig in the header).
constexpr double kDefaultTolFd = 1e-7;

const std::vector<std::string>& known_tolerance_names() {
  static const std::vector<std::string> names = {
      "tol_star", "tol_jet", "tol_fd",  "tol_dyn",
      "tol_trunc", "tol_ccr", "tol_spec"};
  return names;
}

// Disjoint RNG streams: one salt per experiment family, then (major, minor)
// indices.  Trials depend only on (config.seed, salt, major, minor), never on
// scheduling, so reports reproduce bit-for-bit.
std::uint64_t stream_of(std::uint64_t salt, std::uint64_t major,
                        std::uint64_t minor = 0) {
  return (salt << 56) ^ (major << 28) ^ minor;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Largest component-wise discrepancy of two jets at a shared base.
double jet_deviation(const NCValue& u, const NCValue& v) {
  double dev = std::abs(u.f() - v.f());
  dev = std::max(dev, (u.grad_z() - v.grad_z()).cwiseAbs().maxCoeff());
  dev = std::max(dev, (u.grad_zbar() - v.grad_zbar()).cwiseAbs().maxCoeff());
  dev = std::max(dev, max_abs(u.hess() - v.hess()));
  return dev;
}

// Run body(0..n-1) on a small thread pool.  Bodies write to disjoint slots;
// the caller reduces sequentially afterwards, keeping reports deterministic.
void parallel_for(int n, const std::function<void(int)>& body) {
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers =
      std::min(n, static_cast<int>(std::clamp(hw, 1u, 16u)));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double vec_max(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, x);
  return m;
}

// Records metrics and failures on a report.  Comparisons are written so that
// NaN counts as a failure.
class Recorder {
 public:
  explicit Recorder(SuiteReport& report) : report_(report) {}

  void metric(const std::string& name, double value) {
    report_.metrics[name] = value;
  }

  void check_le(const std::string& name, double observed, double tol) {
    metric(name, observed);
    if (!(observed <= tol)) {
      fail({{"check", name}, {"observed", observed}, {"tolerance", tol}});
    }
  }

  void check_ge(const std::string& name, double observed, double bound) {
    metric(name, observed);
    if (!(observed >= bound)) {
      fail({{"check", name}, {"observed", observed}, {"lower_bound", bound}});
    }
  }

  void check_range(const std::string& name, double observed, double lo,
                   double hi) {
    metric(name, observed);
    if (!(observed >= lo && observed <= hi)) {
      fail({{"check", name},
            {"observed", observed},
            {"range", nlohmann::json::array({lo, hi})}});
    }
  }

  void check_true(const std::string& name, bool ok,
                  const std::string& detail) {
    metric(name, ok ? 1.0 : 0.0);
    if (!ok) fail({{"check", name}, {"detail", detail}});
  }

 private:
  void fail(nlohmann::json entry) {
    report_.pass = false;
    report_.failures.push_back(std::move(entry));
  }

  SuiteReport& report_;
};

std::string dim_tag(int dim) { return "_dim" + std::to_string(dim); }

std::vector<double> linspace_open(double span, int points) {
  std::vector<double> times(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    times[static_cast<std::size_t>(k)] = span * (k + 1) / points;
  }
  return times;
}

std::string artifact_path(const SuiteConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

// ---------------------------------------------------------------------------
// homomorphism: evaluation is an algebra homomorphism onto jets.

void run_homomorphism(const SuiteConfig& cfg, SuiteReport& report) {
  Recorder rec(report);
  const double tol = cfg.tolerance("tol_star", kTolStar);
  double hom_all = 0, assoc_all = 0, ident_all = 0, lin_all = 0;
  double defect_all = 0, poisson_all = 0, jordan_all = 0;
  for (int dim : cfg.dims) {
    const int n = cfg.trials;
    std::vector<double> hom(n), assoc(n), ident(n), lin(n), defect(n),
        poisson(n), jordan(n);
    parallel_for(n, [&](int t) {
      CounterRng rng(cfg.seed, stream_of(1, static_cast<std::uint64_t>(dim),
                                         static_cast<std::uint64_t>(t)));
      const Operator a = random_operator(rng, dim);
      const Operator b = random_operator(rng, dim);
      const Operator c = random_operator(rng, dim);
      const ProjectiveState psi = random_state(rng, dim);
      const NCValue u = ncvalue(a, psi);
      const NCValue v = ncvalue(b, psi);
      const NCValue w = ncvalue(c, psi);
      const NCValue uv = star_product(u, v);
      hom[t] = jet_deviation(uv, ncvalue(a * b, psi));
      assoc[t] = jet_deviation(star_product(uv, w),
                               star_product(u, star_product(v, w)));
      ident[t] = jet_deviation(
          star_product(u, ncvalue(Operator::identity(dim), psi)), u);
      const Complex coef(rng.next_normal(), rng.next_normal());
      lin[t] = jet_deviation(star_product(coef * u + v, w),
                             coef * star_product(u, w) + star_product(v, w));
      defect[t] = std::abs(multiplicativity_defect(a, b, psi) -
                           (uv.f() - u.f() * v.f()));
      const NCValue hu = ncvalue(random_hermitian(rng, dim), psi);
      const NCValue hv = ncvalue(random_hermitian(rng, dim), psi);
      poisson[t] = std::abs(std::imag(poisson_bracket(hu, hv, cfg.hbar)));
      jordan[t] = std::abs(std::imag(jordan_product_value(hu, hv)));
    });
    rec.check_le("star_vs_product_max" + dim_tag(dim), vec_max(hom), tol);
    rec.check_le("associativity_max" + dim_tag(dim), vec_max(assoc), tol);
    hom_all = std::max(hom_all, vec_max(hom));
    assoc_all = std::max(assoc_all, vec_max(assoc));
    ident_all = std::max(ident_all, vec_max(ident));
    lin_all = std::max(lin_all, vec_max(lin));
    defect_all = std::max(defect_all, vec_max(defect));
    poisson_all = std::max(poisson_all, vec_max(poisson));
    jordan_all = std::max(jordan_all, vec_max(jordan));
  }
  rec.check_le("star_vs_product_max", hom_all, tol);
  rec.check_le("associativity_max", assoc_all, tol);
  rec.check_le("star_identity_unit_max", ident_all, tol);
  rec.check_le("star_bilinearity_max", lin_all, tol);
  rec.check_le("multiplicativity_defect_consistency_max", defect_all, 1e-12);
  rec.check_le("poisson_bracket_imag_max", poisson_all, 1e-10);
  rec.check_le("jordan_product_imag_max", jordan_all, 1e-10);
}

// ---------------------------------------------------------------------------
// jets: analytic jets against finite differences, reconstruction, structure.

void run_jets(const SuiteConfig& cfg, SuiteReport& report) {
  Recorder rec(report);
  const double tol_jet = cfg.tolerance("tol_jet", kTolJet);
  const double tol_fd = cfg.tolerance("tol_fd", kDefaultTolFd);
  double recon_all = 0, tang_all = 0, gauge_all = 0, herm_all = 0,
         real_all = 0, fd_all = 0;
  for (int dim : cfg.dims) {
    const int n = cfg.trials;
    std::vector<double> recon(n), tang(n), gauge(n), herm(n), realjet(n);
    parallel_for(n, [&](int t) {
      CounterRng rng(cfg.seed, stream_of(2, static_cast<std::uint64_t>(dim),
                                         static_cast<std::uint64_t>(t)));
      const Operator a = random_operator(rng, dim);
      const ProjectiveState psi = random_state(rng, dim);
      const NCValue u = ncvalue(a, psi);
      recon[t] = max_abs(reconstruct_operator(u).matrix() - a.matrix());
      tang[t] = u.tangency_residual();
      const double theta = 2.0 * kPi * rng.next_uniform();
      const ProjectiveState psi2 =
          gauge_fix(std::polar(1.0, theta) * psi.amplitudes());
      gauge[t] = jet_deviation(u, ncvalue(a, psi2));
      const NCValue uh = ncvalue(random_hermitian(rng, dim), psi);
      double hres = std::abs(std::imag(uh.f()));
      hres = std::max(
          hres, (uh.grad_z().adjoint() - uh.grad_zbar()).cwiseAbs().maxCoeff());
      hres = std::max(hres, max_abs(uh.hess() - uh.hess().adjoint()));
      herm[t] = hres;
      realjet[t] = jet_deviation(from_real_jet(to_real_jet(u), psi), u);
    });
    rec.check_le("reconstruct_roundtrip_max" + dim_tag(dim), vec_max(recon),
                 tol_jet);
    recon_all = std::max(recon_all, vec_max(recon));
    tang_all = std::max(tang_all, vec_max(tang));
    gauge_all = std::max(gauge_all, vec_max(gauge));
    herm_all = std::max(herm_all, vec_max(herm));
    real_all = std::max(real_all, vec_max(realjet));

    const int fd_trials = std::min(cfg.trials, 10);
    std::vector<double> fd(fd_trials);
    parallel_for(fd_trials, [&](int t) {
      CounterRng rng(cfg.seed, stream_of(3, static_cast<std::uint64_t>(dim),
                                         static_cast<std::uint64_t>(t)));
      const Operator a = random_operator(rng, dim);
      const ProjectiveState psi = random_state(rng, dim);
      fd[t] = jet_deviation(finite_difference_jet(a, psi, 1e-5),
                            ncvalue(a, psi));
    });
    rec.check_le("fd_agreement_max" + dim_tag(dim), vec_max(fd), tol_fd);
    fd_all = std::max(fd_all, vec_max(fd));

    // Second-order convergence: halving the step shrinks the finite
    // difference error fourfold.  Measured where truncation still dominates
    // the extended-precision rounding floor.
    CounterRng rng(cfg.seed, stream_of(3, static_cast<std::uint64_t>(dim), 0));
    const Operator a = random_operator(rng, dim);
    const ProjectiveState psi = random_state(rng, dim);
    const NCValue exact = ncvalue(a, psi);
    const double err_h =
        jet_deviation(finite_difference_jet(a, psi, 1e-3), exact);
    const double err_h2 =
        jet_deviation(finite_difference_jet(a, psi, 5e-4), exact);
    rec.metric("fd_error_h1e-3" + dim_tag(dim), err_h);
    rec.check_range("fd_halving_ratio" + dim_tag(dim), err_h / err_h2, 3.5,
                    4.5);
  }
  rec.check_le("reconstruct_roundtrip_max", recon_all, tol_jet);
  rec.check_le("tangency_residual_max", tang_all, tol_jet);
  rec.check_le("gauge_invariance_max", gauge_all, 1e-12);
  rec.check_le("hermitian_structure_max", herm_all, 1e-12);
  rec.check_le("real_jet_roundtrip_max", real_all, 1e-12);
  rec.check_le("fd_agreement_max", fd_all, tol_fd);
}

// ---------------------------------------------------------------------------
// dynamics: picture equivalence, integrator quality, Hamilton operator flow.

void run_dynamics(const SuiteConfig& cfg, SuiteReport& report) {
  Recorder rec(report);
  const double tol_dyn = cfg.tolerance("tol_dyn", kTolDyn);
  const double tol_trunc = cfg.tolerance("tol_trunc", kTolTrunc);
  const PauliSystem pauli = pauli_system();
  const Operator h_pauli = 0.6 * pauli.sigma_x + 0.8 * pauli.sigma_z;
  Vector qubit(2);
  qubit << Complex(0.6, 0.0), Complex(0.0, 0.8);
  const ProjectiveState psi_qubit = gauge_fix(qubit);
  const std::vector<double> times100 = linspace_open(2.0 * kPi, 100);

  // Schrodinger vs Heisenberg: same values, same transported jets.
  const PictureEquivalenceReport eq_pauli =
      picture_equivalence_check(h_pauli, pauli.sigma_y, psi_qubit, times100);
  rec.check_le("pauli_picture_value_max", eq_pauli.max_value_deviation,
               tol_dyn);
  rec.check_le("pauli_picture_jet_max", eq_pauli.max_jet_deviation, tol_dyn);

  const OscillatorSystem osc8 =
      build_oscillator(8, cfg.hbar, cfg.mass, cfg.omega);
  Vector two_level = Vector::Zero(8);
  two_level(0) = Complex(1.0, 0.0) / std::sqrt(2.0);
  two_level(1) = Complex(1.0, 0.0) / std::sqrt(2.0);
  const ProjectiveState psi_osc = gauge_fix(two_level);
  const PictureEquivalenceReport eq_osc = picture_equivalence_check(
      osc8.hamiltonian, osc8.position, psi_osc, times100);
  rec.check_le("oscillator_picture_value_max", eq_osc.max_value_deviation,
               tol_dyn);
  rec.check_le("oscillator_picture_jet_max", eq_osc.max_jet_deviation,
               tol_dyn);

  // Real-coordinate Hamiltonian flow against the spectral propagator.
  const std::vector<double> quarters = linspace_open(2.0 * kPi, 4);
  StepperConfig fine;
  fine.dt = 1e-3;
  double ray_max = 0.0;
  double drift_max = 0.0;
  {
    const StateTrajectory flow = realcoord_flow(h_pauli, psi_qubit, quarters,
                                                fine);
    const StateTrajectory exact =
        schrodinger_propagate(h_pauli, psi_qubit, quarters);
    for (std::size_t k = 0; k < quarters.size(); ++k) {
      ray_max = std::max(ray_max, ray_distance(flow.states[k],
                                               exact.states[k]));
    }
    drift_max = std::max(drift_max, flow.meta.max_norm_drift);
    export_trajectory_csv(flow,
                          artifact_path(cfg, "dynamics_realcoord_pauli.csv"));
  }
  {
    const StateTrajectory flow =
        realcoord_flow(osc8.hamiltonian, psi_osc, quarters, fine);
    const StateTrajectory exact =
        schrodinger_propagate(osc8.hamiltonian, psi_osc, quarters);
    for (std::size_t k = 0; k < quarters.size(); ++k) {
      ray_max = std::max(ray_max, ray_distance(flow.states[k],
                                               exact.states[k]));
    }
    drift_max = std::max(drift_max, flow.meta.max_norm_drift);
  }
  rec.check_le("realcoord_ray_distance_max", ray_max, tol_dyn);
  rec.metric("realcoord_norm_drift_max", drift_max);

  // Fourth-order convergence of the RK4 stepper, measured at step sizes
  // where the truncation error sits far above rounding noise.
  {
    Vector plus(2);
    plus << Complex(1.0, 0.0), Complex(1.0, 0.0);
    const ProjectiveState psi_plus = gauge_fix(plus);
    const std::vector<double> endpoint = {2.0 * kPi};
    const StateTrajectory exact =
        schrodinger_propagate(pauli.sigma_z, psi_plus, endpoint);
    StepperConfig coarse;
    coarse.dt = 0.2;
    const StateTrajectory run_c =
        realcoord_flow(pauli.sigma_z, psi_plus, endpoint, coarse);
    StepperConfig half;
    half.dt = 0.1;
    const StateTrajectory run_h =
        realcoord_flow(pauli.sigma_z, psi_plus, endpoint, half);
    const double err_c = ray_distance(run_c.states[0], exact.states[0]);
    const double err_h = ray_distance(run_h.states[0], exact.states[0]);
    rec.metric("rk4_error_dt0.2", err_c);
    rec.metric("rk4_error_dt0.1", err_h);
    rec.check_true("rk4_error_above_noise", err_h > 1e-13,
                   "halved-step error too small to resolve a ratio");
    if (err_h > 1e-13) {
      rec.check_range("rk4_halving_ratio", err_c / err_h, 12.0, 20.0);
    }
  }

  // Exact propagation conserves energy and the Heisenberg picture is
  // isospectral.
  {
    const ProjectiveState psi_c = coherent_state(osc8, Complex(0.5, 0.0));
    const std::vector<double> pts = linspace_open(2.0 * kPi, 50);
    const StateTrajectory traj =
        schrodinger_propagate(osc8.hamiltonian, psi_c, pts);
    const double e0 = std::real(expectation(osc8.hamiltonian, psi_c));
    double dev = 0.0;
    for (const auto& st : traj.states) {
      dev = std::max(dev,
                     std::abs(std::real(expectation(osc8.hamiltonian, st)) -
                              e0));
    }
    rec.check_le("energy_conservation_max", dev, 1e-10);
    export_expectation_csv(
        traj, {"x", "p", "h"},
        {osc8.position, osc8.momentum, osc8.hamiltonian},
        artifact_path(cfg, "dynamics_oscillator_expectations.csv"));

    const OperatorTrajectory heis =
        heisenberg_propagate(osc8.hamiltonian, osc8.position, {1.7});
    const RealVector before = spectral_decompose(osc8.position).eigenvalues;
    const RealVector after = spectral_decompose(heis.operators[0]).eigenvalues;
    rec.check_le("heisenberg_isospectral_max",
                 (after - before).cwiseAbs().maxCoeff(), 1e-10);
  }

  // Hamilton's operator equations for the quadratic Hamiltonian match the
  // Heisenberg flow away from the truncation corner, and the whole flow is
  // the classical rotation of the canonical pair.
  {
    const OscillatorSystem osc32 =
        build_oscillator(32, cfg.hbar, cfg.mass, cfg.omega);
    const double m = cfg.mass;
    const double w = cfg.omega;
    const SeparableHamiltonian quad = make_separable_hamiltonian(
        {{0, 2, 1.0 / (2.0 * m)}, {2, 0, 0.5 * m * w * w}});
    const std::vector<double> pts = linspace_open(2.0 * kPi, 16);
    const CanonicalFlowTrajectory flow =
        hamilton_operator_flow(quad, osc32, pts);
    std::vector<double> tau(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) tau[k] = pts[k] / cfg.hbar;
    const OperatorTrajectory hx =
        heisenberg_propagate(osc32.hamiltonian, osc32.position, tau);
    const OperatorTrajectory hp =
        heisenberg_propagate(osc32.hamiltonian, osc32.momentum, tau);
    const Eigen::Index interior = 31;
    double block_dev = 0.0;
    double closed_dev = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Matrix dx =
          flow.position[k].matrix() - hx.operators[k].matrix();
      const Matrix dp =
          flow.momentum[k].matrix() - hp.operators[k].matrix();
      block_dev = std::max(
          block_dev, max_abs(dx.topLeftCorner(interior, interior)));
      block_dev = std::max(
          block_dev, max_abs(dp.topLeftCorner(interior, interior)));
      const double ph = w * pts[k];
      const Matrix x_cl = std::cos(ph) * osc32.position.matrix() +
                          std::sin(ph) / (m * w) * osc32.momentum.matrix();
      const Matrix p_cl = std::cos(ph) * osc32.momentum.matrix() -
                          m * w * std::sin(ph) * osc32.position.matrix();
      closed_dev = std::max(closed_dev,
                            max_abs(flow.position[k].matrix() - x_cl));
      closed_dev = std::max(closed_dev,
                            max_abs(flow.momentum[k].matrix() - p_cl));
    }
    rec.check_le("hamilton_quadratic_interior_max", block_dev, tol_trunc);
    rec.check_le("hamilton_quadratic_closed_form_max", closed_dev, 1e-8);

    // Quartic potential: the truncation defect in V'(X) sits at the corner
    // but spreads inward about four levels per doubling of t with O(1)
    // amplitude (measured: by t = 0.1 even the 4x4 core deviates by 4e-6
    // and the full interior by ~1).  The flows genuinely agree only at
    // short times deep in the interior; the check is pinned there and the
    // long-time block deviations are recorded as metrics.
    const SeparableHamiltonian quartic = make_separable_hamiltonian(
        {{0, 2, 1.0 / (2.0 * m)}, {4, 0, 0.25}});
    const Operator h4 =
        to_operator(quartic, osc32.position, osc32.momentum);
    const std::vector<double> short_pts = {0.001, 0.002, 0.005, 0.01,
                                           0.05, 0.1};
    StepperConfig qcfg;
    qcfg.dt = 5e-5;
    const CanonicalFlowTrajectory qflow =
        hamilton_operator_flow(quartic, osc32, short_pts, qcfg);
    std::vector<double> qtau(short_pts.size());
    for (std::size_t k = 0; k < short_pts.size(); ++k) {
      qtau[k] = short_pts[k] / cfg.hbar;
    }
    const OperatorTrajectory qx = heisenberg_propagate(h4, osc32.position,
                                                       qtau);
    double core_dev = 0.0;
    for (std::size_t k = 0; k < short_pts.size(); ++k) {
      const Matrix dx =
          qflow.position[k].matrix() - qx.operators[k].matrix();
      if (short_pts[k] <= 0.01) {
        core_dev = std::max(core_dev, max_abs(dx.topLeftCorner(12, 12)));
      }
      for (const Eigen::Index block : {31, 16}) {
        const std::string key = "hamilton_quartic_block" +
                                std::to_string(block) + "_t" +
                                std::to_string(short_pts[k]).substr(0, 5);
        rec.metric(key, max_abs(dx.topLeftCorner(block, block)));
      }
    }
    rec.check_le("hamilton_quartic_core_short_time_max", core_dev,
                 tol_trunc);
  }
}

// ---------------------------------------------------------------------------
// ccr: the truncated canonical commutator and everything it controls.

// Coherent states used for the minimum-uncertainty equality check.  The
// admission gate (norm deficit <= 1e-8) keeps the state faithful, but the
// variance product amplifies the truncated tail by roughly the top level
// squared, so the 1e-8 equality only holds with comfortable margin from
// sixteen levels up (measured: 3.5e-8 at eight levels, 2e-12 at sixteen).
std::vector<Complex> admitted_alphas(int levels) {
  std::vector<Complex> alphas;
  if (levels >= 16) {
    alphas.push_back(Complex(0.5, 0.0));
    alphas.push_back(Complex(1.0, 0.0));
  }
  if (levels >= 32) alphas.push_back(Complex(0.6, 0.8));
  return alphas;
}

void run_ccr(const SuiteConfig& cfg, SuiteReport& report) {
  Recorder rec(report);
  const double tol_ccr = cfg.tolerance("tol_ccr", 1e-12);
  const double hbar = cfg.hbar;
  std::vector<int> dims;
  for (int d : cfg.dims) {
    if (d >= 4) dims.push_back(d);
  }
  if (dims.empty()) dims = {4, 8, 16, 32};

  double corner_all = 0, off_all = 0, witness_all = 0, interior_all = 0;
  double product_min = std::numeric_limits<double>::infinity();
  double coherent_eq_all = 0, antisym_all = 0;
  for (int levels : dims) {
    const OscillatorSystem sys =
        build_oscillator(levels, hbar, cfg.mass, cfg.omega);
    Matrix defect = ccr_defect(sys).matrix();
    const Complex corner_expect(0.0, -hbar * levels);
    const double corner_err =
        std::abs(defect(levels - 1, levels - 1) - corner_expect);
    defect(levels - 1, levels - 1) = Complex(0.0, 0.0);
    rec.check_le("ccr_corner_error" + dim_tag(levels), corner_err, tol_ccr);
    rec.check_le("ccr_off_corner_max" + dim_tag(levels), max_abs(defect),
                 tol_ccr);
    corner_all = std::max(corner_all, corner_err);
    off_all = std::max(off_all, max_abs(defect));

    const Operator xp = commutator(sys.position, sys.momentum);
    const Operator x2 = sys.position * sys.position;
    const Operator p2 = sys.momentum * sys.momentum;
    const int n = cfg.trials;
    std::vector<double> witness(n), interior(n), product(n);
    parallel_for(n, [&](int t) {
      CounterRng rng(cfg.seed, stream_of(4, static_cast<std::uint64_t>(levels),
                                         static_cast<std::uint64_t>(t)));
      const ProjectiveState any = random_state(rng, levels);
      const double top = std::norm(any.amplitudes()(levels - 1));
      witness[t] = std::abs(expectation(xp, any) -
                            Complex(0.0, hbar * (1.0 - levels * top)));
      const ProjectiveState inner = random_interior_state(rng, levels, 1);
      interior[t] = std::abs(expectation(xp, inner) - Complex(0.0, hbar));
      const double var_x = std::real(expectation(x2, inner)) -
                           std::norm(expectation(sys.position, inner));
      const double var_p = std::real(expectation(p2, inner)) -
                           std::norm(expectation(sys.momentum, inner));
      product[t] = var_x * var_p;
    });
    witness_all = std::max(witness_all, vec_max(witness));
    interior_all = std::max(interior_all, vec_max(interior));
    product_min =
        std::min(product_min, *std::min_element(product.begin(),
                                                product.end()));

    for (const Complex alpha : admitted_alphas(levels)) {
      const ProjectiveState psi_c = coherent_state(sys, alpha);
      const double var_x = std::real(expectation(x2, psi_c)) -
                           std::norm(expectation(sys.position, psi_c));
      const double var_p = std::real(expectation(p2, psi_c)) -
                           std::norm(expectation(sys.momentum, psi_c));
      coherent_eq_all = std::max(
          coherent_eq_all,
          std::abs(var_x * var_p - 0.25 * hbar * hbar));
    }

    // The defect of multiplicative evaluation: <XP> - <X><P> is i hbar / 2
    // on the ground state, and its antisymmetric part is i hbar on any
    // state clear of the top level.
    const ProjectiveState ground = fock_state(sys, 0);
    rec.check_le("multiplicativity_defect_ground_error" + dim_tag(levels),
                 std::abs(multiplicativity_defect(sys.position, sys.momentum,
                                                  ground) -
                          Complex(0.0, 0.5 * hbar)),
                 1e-10);
    CounterRng rng(cfg.seed, stream_of(5, static_cast<std::uint64_t>(levels)));
    for (int t = 0; t < std::min(cfg.trials, 50); ++t) {
      const ProjectiveState inner = random_interior_state(rng, levels, 1);
      const Complex anti =
          multiplicativity_defect(sys.position, sys.momentum, inner) -
          multiplicativity_defect(sys.momentum, sys.position, inner);
      antisym_all = std::max(antisym_all,
                             std::abs(anti - Complex(0.0, hbar)));
    }
  }
  rec.check_le("ccr_corner_error_max", corner_all, tol_ccr);
  rec.check_le("ccr_off_corner_max", off_all, tol_ccr);
  rec.check_le("ccr_witness_error_max", witness_all, 1e-12);
  rec.check_le("ccr_interior_error_max", interior_all, 1e-12);
  rec.check_ge("uncertainty_product_min", product_min,
               0.25 * hbar * hbar - 1e-10);
  rec.check_le("coherent_uncertainty_equality_max", coherent_eq_all, 1e-8);
  rec.check_le("antisymmetric_defect_error_max", antisym_all, 1e-10);
}

// ---------------------------------------------------------------------------
// ehrenfest: coherent expectation values ride the classical trajectory.

void run_ehrenfest(const SuiteConfig& cfg, SuiteReport& report) {
  Recorder rec(report);
  const double tol_trunc = cfg.tolerance("tol_trunc", kTolTrunc);
  const OscillatorSystem sys =
      build_oscillator(32, cfg.hbar, cfg.mass, cfg.omega);
  const double period = 2.0 * kPi / (cfg.hbar * cfg.omega);
  const std::vector<double> times = linspace_open(period, 128);

  const ProjectiveState psi_c = coherent_state(sys, Complex(1.0, 0.0));
  const EhrenfestTrace trace = ehrenfest_trace(sys, psi_c, times);
  rec.check_le("coherent_position_deviation_max",
               trace.max_position_deviation, tol_trunc);
  rec.check_le("coherent_momentum_deviation_max",
               trace.max_momentum_deviation, tol_trunc);
  export_ehrenfest_csv(trace, artifact_path(cfg, "ehrenfest_coherent.csv"));

  const EhrenfestTrace vacuum =
      ehrenfest_trace(sys, fock_state(sys, 0), times);
  double rest = 0.0;
  for (std::size_t k = 0; k < vacuum.times.size(); ++k) {
    rest = std::max(rest, std::abs(vacuum.x_expect[k]));
    rest = std::max(rest, std::abs(vacuum.p_expect[k]));
  }
  rec.check_le("vacuum_rest_max", rest, 1e-12);
}

// ---------------------------------------------------------------------------
// degeneracy: equal first moments, distinct jets.

void run_degeneracy(const SuiteConfig& cfg, SuiteReport& report) {
  Recorder rec(report);
  const double tol_jet = cfg.tolerance("tol_jet", kTolJet);
  const OscillatorSystem sys =
      build_oscillator(16, cfg.hbar, cfg.mass, cfg.omega);
  const DegeneracyPair pair = expectation_degeneracy_pair(sys);
  const DegeneracyReport& r = pair.report;
  const double mean_max =
      std::max(std::max(std::abs(r.x_mean_ground), std::abs(r.x_mean_excited)),
               std::max(std::abs(r.p_mean_ground),
                        std::abs(r.p_mean_excited)));
  rec.check_le("first_moment_max", mean_max, 1e-12);
  const double gap = cfg.hbar / (cfg.mass * cfg.omega);
  rec.check_le("variance_gap_error",
               std::abs((r.x_variance_excited - r.x_variance_ground) - gap),
               1e-9);
  rec.check_ge("hess_distance", r.hess_distance,
               0.5 * std::sqrt(cfg.hbar / (cfg.mass * cfg.omega)));
  const double recon = std::max(
      max_abs(reconstruct_operator(ncvalue(sys.position, pair.ground))
                  .matrix() -
              sys.position.matrix()),
      max_abs(reconstruct_operator(ncvalue(sys.position, pair.excited))
                  .matrix() -
              sys.position.matrix()));
  rec.check_le("reconstruct_at_degenerate_states_max", recon, tol_jet);
}

// ---------------------------------------------------------------------------
// tomography: sampling, estimation, reconstruction.

void run_tomography(const SuiteConfig& cfg, SuiteReport& report) {
  Recorder rec(report);
  const PauliSystem pauli = pauli_system();

  // Orthonormal informationally complete bases.
  double gm_dev = 0.0;
  bool gm_counts = true;
  for (Eigen::Index d = 2; d <= 8; ++d) {
    const std::vector<Operator> basis = gellmann_basis(d);
    gm_counts = gm_counts &&
                basis.size() == static_cast<std::size_t>(d * d - 1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i; j < basis.size(); ++j) {
        const Complex g =
            (basis[i].matrix() * basis[j].matrix()).trace();
        const double want = i == j ? 2.0 : 0.0;
        gm_dev = std::max(gm_dev, std::abs(g - Complex(want, 0.0)));
      }
    }
  }
  rec.check_le("gellmann_orthonormality_max", gm_dev, 1e-12);
  rec.check_true("gellmann_basis_count", gm_counts,
                 "basis size is not dim^2 - 1");

  // Exact expectations reproduce the projector.
  double exact_td = 0.0;
  double cond_max = 0.0;
  for (int dim : cfg.dims) {
    if (dim > 8) continue;
    CounterRng rng(cfg.seed, stream_of(7, static_cast<std::uint64_t>(dim)));
    const ProjectiveState psi = random_state(rng, dim);
    const DensityMatrix truth = pure_density(psi);
    const std::vector<Operator> basis = gellmann_basis(dim);
    std::vector<double> values;
    values.reserve(basis.size());
    for (const Operator& g : basis) {
      values.push_back(std::real(expectation(g, truth)));
    }
    double cond = 0.0;
    const DensityMatrix rho = reconstruct_density(basis, values, &cond);
    exact_td = std::max(exact_td, trace_distance(rho, truth));
    cond_max = std::max(cond_max, cond);
  }
  rec.check_le("exact_reconstruction_trace_distance_max", exact_td, 1e-10);
  rec.metric("design_condition_number_max", cond_max);

  // Finite-shot qubit reconstruction.
  {
    CounterRng rng(cfg.seed, stream_of(8, 0));
    const ProjectiveState psi = random_state(rng, 2);
    const DensityMatrix truth = pure_density(psi);
    const std::vector<Operator> paulis = {pauli.sigma_x, pauli.sigma_y,
                                          pauli.sigma_z};
    std::vector<std::pair<Operator, MeasurementRecord>> records;
    for (std::size_t i = 0; i < paulis.size(); ++i) {
      records.emplace_back(
          paulis[i],
          sample_measurement(paulis[i], psi, 100000,
                             cfg.seed ^ stream_of(8, 1, i),
                             "pauli_" + std::to_string(i)));
    }
    const DensityMatrix rho = reconstruct_density(records);
    rec.check_le("sampled_reconstruction_trace_distance",
                 trace_distance(rho, truth), 0.05);
    rec.metric("sampled_reconstruction_purity", purity(rho));
  }

  // Born frequencies on an even split.
  {
    Vector ground(2);
    ground << Complex(1.0, 0.0), Complex(0.0, 0.0);
    const ProjectiveState psi = gauge_fix(ground);
    const MeasurementRecord record = sample_measurement(
        pauli.sigma_x, psi, 100000, cfg.seed ^ stream_of(8, 2), "sigma_x");
    const double freq =
        static_cast<double>(record.counts[1]) /
        static_cast<double>(record.shots);
    rec.check_range("sigma_x_plus_frequency", freq, 0.495, 0.505);
    save_record(record, artifact_path(cfg, "tomography_sigma_x_record.json"));
    const ExpectationEstimate est = estimate_expectation(record);
    const std::vector<double> moments = empirical_moments(record, 2);
    rec.check_le("moment_mean_consistency",
                 std::abs(moments[0] - est.mean), 1e-12);
    rec.check_le("moment_square_error", std::abs(moments[1] - 1.0), 1e-12);
  }

  // Estimator error shrinks like 1/sqrt(shots).
  {
    Vector amps(2);
    amps << Complex(0.8, 0.0), Complex(0.6, 0.0);
    const ProjectiveState psi = gauge_fix(amps);
    const double truth = 0.8 * 0.8 - 0.6 * 0.6;
    const int seeds = std::min(std::max(cfg.trials / 10, 40), 100);
    const int rungs = 6;
    std::vector<double> log_shots(rungs), log_rms(rungs);
    for (int k = 0; k < rungs; ++k) {
      const std::uint64_t shots = 100ull << k;
      std::vector<double> sq(seeds);
      parallel_for(seeds, [&](int s) {
        const MeasurementRecord record = sample_measurement(
            pauli.sigma_z, psi, shots,
            cfg.seed ^ stream_of(9, static_cast<std::uint64_t>(k),
                                 static_cast<std::uint64_t>(s)),
            "slope");
        const double err = estimate_expectation(record).mean - truth;
        sq[s] = err * err;
      });
      double mean_sq = 0.0;
      for (double v : sq) mean_sq += v;
      mean_sq /= seeds;
      log_shots[k] = std::log(static_cast<double>(shots));
      log_rms[k] = 0.5 * std::log(mean_sq);
      rec.metric("estimator_rms_shots" + std::to_string(shots),
                 std::sqrt(mean_sq));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 0; k < rungs; ++k) {
      sx += log_shots[k];
      sy += log_rms[k];
      sxx += log_shots[k] * log_shots[k];
      sxy += log_shots[k] * log_rms[k];
    }
    const double slope =
        (rungs * sxy - sx * sy) / (rungs * sxx - sx * sx);
    rec.check_range("estimator_error_loglog_slope", slope, -0.6, -0.4);
  }

  // A deficient observable set is rejected with its missing directions.
  {
    bool raised = false;
    std::size_t missing = 0;
    try {
      reconstruct_density({pauli.sigma_z}, {0.3});
    } catch (const IncompleteObservableSet& e) {
      raised = true;
      missing = e.deficient_directions.size();
    }
    rec.check_true("incomplete_set_rejected", raised,
                   "reconstruction accepted a rank-deficient design");
    rec.check_true("incomplete_set_directions", missing == 2,
                   "expected two unconstrained directions");
  }
}

using SuiteFn = void (*)(const SuiteConfig&, SuiteReport&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"homomorphism", run_homomorphism}, {"jets", run_jets},
      {"dynamics", run_dynamics},         {"ccr", run_ccr},
      {"ehrenfest", run_ehrenfest},       {"degeneracy", run_degeneracy},
      {"tomography", run_tomography},
  };
  return table;
}

}  // namespace

double SuiteConfig::tolerance(const std::string& name,
                              double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

void SuiteConfig::validate() const {
  if (dims.empty()) throw std::invalid_argument("config: dims is empty");
  for (int d : dims) {
    if (d < 2 || d > 64) {
      throw std::invalid_argument("config: dims entries must lie in [2, 64]");
    }
  }
  if (trials < 1 || trials > 10000000) {
    throw std::invalid_argument("config: trials must lie in [1, 1e7]");
  }
  for (double v : {hbar, mass, omega}) {
    if (!(v > 0.0) || !(v <= 1e6) || !std::isfinite(v)) {
      throw std::invalid_argument(
          "config: hbar, mass, omega must be positive and bounded");
    }
  }
  const auto& known = known_tolerance_names();
  for (const auto& [name, value] : tolerances) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw std::invalid_argument("config: unknown tolerance '" + name + "'");
    }
    if (!(value > 0.0) || !(value < 1.0)) {
      throw std::invalid_argument("config: tolerance '" + name +
                                  "' must lie in (0, 1)");
    }
  }
  if (output_dir.empty()) {
    throw std::invalid_argument("config: output_dir is empty");
  }
}

SuiteConfig SuiteConfig::from_json(const nlohmann::json& j) {
  SuiteConfig cfg;
  if (j.contains("dims")) cfg.dims = j.at("dims").get<std::vector<int>>();
  if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("hbar")) cfg.hbar = j.at("hbar").get<double>();
  if (j.contains("mass")) cfg.mass = j.at("mass").get<double>();
  if (j.contains("omega")) cfg.omega = j.at("omega").get<double>();
  if (j.contains("tolerances")) {
    cfg.tolerances =
        j.at("tolerances").get<std::map<std::string, double>>();
  }
  if (j.contains("output_dir")) {
    cfg.output_dir = j.at("output_dir").get<std::string>();
  }
  cfg.validate();
  return cfg;
}

nlohmann::json SuiteConfig::to_json() const {
  return nlohmann::json{{"dims", dims},
                        {"trials", trials},
                        {"seed", seed},
                        {"hbar", hbar},
                        {"mass", mass},
                        {"omega", omega},
                        {"tolerances", tolerances},
                        {"output_dir", output_dir}};
}

nlohmann::json SuiteReport::to_json() const {
  return nlohmann::json{{"suite", suite},
                        {"pass", pass},
                        {"config", config.to_json()},
                        {"metrics", metrics},
                        {"failures", failures}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  config.validate();
  for (const auto& [suite, fn] : suite_table()) {
    if (suite != name) continue;
    std::filesystem::create_directories(config.output_dir);
    SuiteReport report;
    report.suite = name;
    report.config = config;
    fn(config, report);
    return report;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::string describe(const std::string& name) {
  if (name == "homomorphism") {
    return "Checks that evaluating operators at a state is an algebra "
           "homomorphism onto 2-jets: the star product of two jets matches "
           "the jet of the operator product over random operators and "
           "states, and is associative, unital, and bilinear.  Also checks "
           "that the Poisson bracket and Jordan product of Hermitian jets "
           "are real.";
  }
  if (name == "jets") {
    return "Validates the jet of the expectation function itself: analytic "
           "components agree with tangent-space finite differences at "
           "second order, the jet reconstructs the operator exactly, "
           "tangency and gauge invariance hold, Hermitian operators give "
           "real-structured jets, and the real-coordinate form round-trips.";
  }
  if (name == "dynamics") {
    return "Cross-validates dynamics pictures: Schrodinger and Heisenberg "
           "evolution give the same expectation values and (transported) "
           "jets; the real-coordinate Hamiltonian flow reproduces the "
           "spectral propagator with fourth-order step convergence; exact "
           "propagation conserves energy and spectra; and Hamilton's "
           "operator equations match the Heisenberg flow on the interior "
           "Fock block for polynomial Hamiltonians.";
  }
  if (name == "ccr") {
    return "Probes the truncated canonical commutator: [X, P] equals "
           "i*hbar off the top level with the exact -i*hbar*N corner "
           "defect, expectation witnesses match the closed form on random "
           "states, the uncertainty product respects hbar^2/4 on interior "
           "states with equality on coherent states, and the "
           "multiplicativity defect of evaluation equals i*hbar/2 on the "
           "ground state.";
  }
  if (name == "ehrenfest") {
    return "Follows a coherent state for one classical period and checks "
           "that <X>(t) and <P>(t) trace the classical harmonic trajectory "
           "to truncation accuracy, while the vacuum stays at rest.";
  }
  if (name == "degeneracy") {
    return "Exhibits two rays (Fock ground and first excited states) with "
           "identical first moments of the canonical pair that are fully "
           "separated at second order: their X-jets differ in the hessian "
           "and each jet still reconstructs the operator.";
  }
  if (name == "tomography") {
    return "Simulated state determination: Born-rule sampling with "
           "deterministic seeds, moment and standard-error estimates with "
           "the expected 1/sqrt(shots) error decay, exact and finite-shot "
           "density reconstruction from informationally complete bases, "
           "and rejection of deficient observable sets with the missing "
           "directions reported.";
  }
  if (name == "all") {
    return "Runs every suite in canonical order and writes one report per "
           "suite.";
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace ncval
