#include "ncval/tomography.hpp"

#include <algorithm>
#include <cmath>

#include "ncval/rng.hpp"

namespace ncval {

namespace {

// Collapse eigenvalues closer than the spectral tolerance into one outcome,
// accumulating the Born weights of their eigenspaces.
struct OutcomeTable {
  std::vector<double> values;
  std::vector<double> probabilities;
};

OutcomeTable outcome_table(const Operator& a, const ProjectiveState& psi) {
  const SpectralDecomposition eig = spectral_decompose(a);
  OutcomeTable table;
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double p = std::norm(eig.eigenvectors.col(k).dot(psi.amplitudes()));
    if (!table.values.empty() &&
        eig.eigenvalues[k] - table.values.back() <= kTolSpec) {
      table.probabilities.back() += p;
    } else {
      table.values.push_back(eig.eigenvalues[k]);
      table.probabilities.push_back(p);
    }
  }
  // Guard against rounding: renormalize the Born weights.
  double total = 0.0;
  for (double p : table.probabilities) total += p;
  for (double& p : table.probabilities) p /= total;
  return table;
}

}  // namespace

MeasurementRecord sample_measurement(const Operator& a,
                                     const ProjectiveState& psi,
                                     std::uint64_t shots, std::uint64_t seed,
                                     std::string observable_id) {
  if (a.dim() != psi.dim()) {
    throw std::invalid_argument("operator and state dimensions do not match");
  }
  if (shots == 0) {
    throw std::invalid_argument("shots must be positive");
  }
  const OutcomeTable table = outcome_table(a, psi);

  std::vector<double> cdf(table.probabilities.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < cdf.size(); ++k) {
    acc += table.probabilities[k];
    cdf[k] = acc;
  }
  cdf.back() = 1.0;

  MeasurementRecord record;
  record.observable_id = std::move(observable_id);
  record.eigenvalues = table.values;
  record.counts.assign(table.values.size(), 0);
  record.shots = shots;
  record.seed = seed;

  const CounterRng rng(seed, /*stream=*/0x746f6d6fULL);  // tomography stream
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform(shot);
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t k =
        std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    ++record.counts[k];
  }
  return record;
}

ExpectationEstimate estimate_expectation(const MeasurementRecord& record) {
  if (record.shots < 2) {
    throw std::invalid_argument("estimation requires at least 2 shots");
  }
  const double n = static_cast<double>(record.shots);
  double mean = 0.0;
  for (std::size_t k = 0; k < record.eigenvalues.size(); ++k) {
    mean += record.eigenvalues[k] * static_cast<double>(record.counts[k]);
  }
  mean /= n;
  double ssq = 0.0;
  for (std::size_t k = 0; k < record.eigenvalues.size(); ++k) {
    const double d = record.eigenvalues[k] - mean;
    ssq += d * d * static_cast<double>(record.counts[k]);
  }
  const double sample_var = ssq / (n - 1.0);
  return ExpectationEstimate{mean, std::sqrt(sample_var / n)};
}

std::vector<double> empirical_moments(const MeasurementRecord& record,
                                      int k_max) {
  if (k_max < 1) {
    throw std::invalid_argument("k_max must be at least 1");
  }
  if (record.shots == 0) {
    throw std::invalid_argument("record has no shots");
  }
  std::vector<double> moments(k_max, 0.0);
  for (std::size_t i = 0; i < record.eigenvalues.size(); ++i) {
    double power = 1.0;
    for (int k = 0; k < k_max; ++k) {
      power *= record.eigenvalues[i];
      moments[k] += power * static_cast<double>(record.counts[i]);
    }
  }
  for (double& m : moments) m /= static_cast<double>(record.shots);
  return moments;
}

namespace {
double purity_raw(const Matrix& rho) { return (rho * rho).trace().real(); }
}  // namespace

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 2) {
    throw std::invalid_argument("density matrix must be square, dim >= 2");
  }
  if (!entries_.allFinite()) {
    throw std::invalid_argument("density matrix entries must be finite");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kTolHerm) {
    throw std::invalid_argument("density matrix must be Hermitian");
  }
  if (std::abs(entries_.trace() - Complex(1.0, 0.0)) > 1e-10) {
    throw std::invalid_argument("density matrix must have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      0.5 * (entries_ + entries_.adjoint()));
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("density matrix must be positive semidefinite");
  }
  const double p = purity_raw(entries_);
  if (p < 1.0 / static_cast<double>(dim()) - 1e-10 || p > 1.0 + 1e-10) {
    throw std::invalid_argument("density matrix purity out of range");
  }
}

DensityMatrix pure_density(const ProjectiveState& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

Complex expectation(const Operator& a, const DensityMatrix& rho) {
  if (a.dim() != rho.dim()) {
    throw std::invalid_argument("operator and density dimensions do not match");
  }
  return (rho.matrix() * a.matrix()).trace();
}

std::vector<Operator> gellmann_basis(Eigen::Index dim) {
  if (dim < 2 || dim > 8) {
    throw std::invalid_argument("gellmann_basis supports 2 <= dim <= 8");
  }
  std::vector<Operator> basis;
  // Symmetric and antisymmetric off-diagonal families.
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = j + 1; k < dim; ++k) {
      Matrix sym = Matrix::Zero(dim, dim);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.emplace_back(std::move(sym));
      Matrix anti = Matrix::Zero(dim, dim);
      anti(j, k) = Complex(0.0, -1.0);
      anti(k, j) = Complex(0.0, 1.0);
      basis.emplace_back(std::move(anti));
    }
  }
  // Diagonal family h_l, normalized to tr(h^2) = 2.
  for (Eigen::Index l = 1; l < dim; ++l) {
    Matrix diag = Matrix::Zero(dim, dim);
    const double scale =
        std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (Eigen::Index m = 0; m < l; ++m) diag(m, m) = scale;
    diag(l, l) = -static_cast<double>(l) * scale;
    basis.emplace_back(std::move(diag));
  }
  return basis;
}

namespace {

// Real parametrization of Hermitian matrices: diagonal entries, then
// (re, im) of each upper-triangle entry.
Eigen::Index hermitian_param_count(Eigen::Index d) { return d * d; }

// Row of tr(rho O) as a linear functional of the parameters.
Eigen::RowVectorXd design_row(const Operator& o) {
  const Eigen::Index d = o.dim();
  Eigen::RowVectorXd row(hermitian_param_count(d));
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < d; ++i) row[c++] = o.matrix()(i, i).real();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      // rho_ij O_ji + rho_ji O_ij = 2 re(rho_ij) re(O_ij) + 2 im(rho_ij) im(O_ij)
      row[c++] = 2.0 * o.matrix()(i, j).real();
      row[c++] = 2.0 * o.matrix()(i, j).imag();
    }
  }
  return row;
}

Matrix hermitian_from_params(const Eigen::VectorXd& params, Eigen::Index d) {
  Matrix m = Matrix::Zero(d, d);
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = params[c++];
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      m(i, j) = Complex(params[c], params[c + 1]);
      m(j, i) = std::conj(m(i, j));
      c += 2;
    }
  }
  return m;
}

}  // namespace

DensityMatrix reconstruct_density(const std::vector<Operator>& observables,
                                  const std::vector<double>& expectation_values,
                                  double* condition_number) {
  if (observables.empty()) {
    throw std::invalid_argument("no observables supplied");
  }
  if (observables.size() != expectation_values.size()) {
    throw std::invalid_argument(
        "one expectation value per observable is required");
  }
  const Eigen::Index d = observables.front().dim();
  for (const auto& o : observables) {
    if (o.dim() != d) {
      throw std::invalid_argument("observable dimensions do not match");
    }
    if (!o.is_hermitian()) {
      throw std::invalid_argument("observables must be Hermitian");
    }
  }

  const Eigen::Index params = hermitian_param_count(d);
  const Eigen::Index rows = static_cast<Eigen::Index>(observables.size()) + 1;
  Eigen::MatrixXd design(rows, params);
  Eigen::VectorXd target(rows);
  for (Eigen::Index r = 0; r + 1 < rows; ++r) {
    design.row(r) = design_row(observables[static_cast<std::size_t>(r)]);
    target[r] = expectation_values[static_cast<std::size_t>(r)];
  }
  design.row(rows - 1) = design_row(Operator::identity(d));  // trace row
  target[rows - 1] = 1.0;

  // Full V: an underdetermined design (fewer independent rows than d^2
  // parameters) is detected by rank, and the missing directions live in the
  // trailing right-singular columns.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      design, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma[0];
  const double rank_tol = 1e-10 * sigma_max;
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma[rank] > rank_tol) ++rank;
  if (rank < params) {
    std::vector<Operator> directions;
    for (Eigen::Index k = rank; k < params; ++k) {
      directions.push_back(
          Operator(hermitian_from_params(svd.matrixV().col(k), d)));
    }
    throw IncompleteObservableSet(
        "observable set is informationally incomplete: design matrix is "
        "rank-deficient",
        std::move(directions));
  }
  if (condition_number != nullptr) {
    *condition_number = sigma_max / sigma[rank - 1];
  }

  const Eigen::VectorXd solution = svd.solve(target);
  const Matrix fitted = hermitian_from_params(solution, d);

  // Projection: clip negative eigenvalues, renormalize the trace.
  Eigen::SelfAdjointEigenSolver<Matrix> eig(fitted);
  Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
  const double total = clipped.sum();
  if (total <= 0.0) {
    throw std::runtime_error(
        "reconstruction collapsed: no positive spectral weight");
  }
  clipped /= total;
  Matrix rho = eig.eigenvectors() * clipped.asDiagonal() *
               eig.eigenvectors().adjoint();
  // Symmetrize rounding residue before validation.
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(std::move(rho));
}

DensityMatrix reconstruct_density(
    const std::vector<std::pair<Operator, MeasurementRecord>>& records,
    double* condition_number) {
  std::vector<Operator> observables;
  std::vector<double> means;
  observables.reserve(records.size());
  means.reserve(records.size());
  for (const auto& [op, record] : records) {
    observables.push_back(op);
    means.push_back(estimate_expectation(record).mean);
  }
  return reconstruct_density(observables, means, condition_number);
}

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) {
    throw std::invalid_argument("density dimensions do not match");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho1.matrix() - rho2.matrix());
  return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

double purity(const DensityMatrix& rho) { return purity_raw(rho.matrix()); }

}  // namespace ncval
