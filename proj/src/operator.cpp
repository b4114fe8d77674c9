#include "ncval/operator.hpp"

#include <stdexcept>

namespace ncval {

Operator::Operator(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("operator entries must form a square matrix");
  }
  if (entries_.rows() < 2) {
    throw std::invalid_argument("operator dimension must be at least 2");
  }
  if (!entries_.allFinite()) {
    throw std::invalid_argument("operator entries must be finite");
  }
}

double Operator::hermiticity_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

Operator Operator::identity(Eigen::Index dim) {
  return Operator(Matrix::Identity(dim, dim));
}

Operator Operator::zero(Eigen::Index dim) {
  return Operator(Matrix::Zero(dim, dim));
}

Operator operator+(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("operator dimensions do not match");
  }
  return Operator(a.entries_ + b.entries_);
}

Operator operator-(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("operator dimensions do not match");
  }
  return Operator(a.entries_ - b.entries_);
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("operator dimensions do not match");
  }
  return Operator(a.entries_ * b.entries_);
}

Operator operator*(const Complex& c, const Operator& a) {
  return Operator(c * a.entries_);
}

Operator operator*(double c, const Operator& a) {
  return Operator(c * a.entries_);
}

Operator make_operator(Eigen::Index dim, const Matrix& entries) {
  if (entries.rows() != dim || entries.cols() != dim) {
    throw std::invalid_argument("entries do not match the requested dimension");
  }
  return Operator(entries);
}

Operator commutator(const Operator& a, const Operator& b) {
  return a * b - b * a;
}

Operator anticommutator(const Operator& a, const Operator& b) {
  return a * b + b * a;
}

SpectralDecomposition spectral_decompose(const Operator& a, double tol) {
  if (!a.is_hermitian(tol)) {
    throw std::invalid_argument(
        "spectral_decompose requires a Hermitian operator");
  }
  // Symmetrize first so the solver sees an exactly self-adjoint input; the
  // defect is below `tol` by the gate above.
  const Matrix sym = 0.5 * (a.matrix() + a.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed to converge");
  }
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace ncval
