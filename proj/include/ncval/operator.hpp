#pragma once

#include <Eigen/Dense>
#include <complex>

namespace ncval {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;
using RealVector = Eigen::VectorXd;

// Numerical contracts shared across the library.  Values are pinned; suite
// configs may override the check thresholds but not these defaults.
inline constexpr double kTolHerm = 1e-10;   // Hermiticity acceptance
inline constexpr double kTolSpec = 1e-10;   // spectral reconstruction error
inline constexpr double kTolNorm = 1e-12;   // state normalization
inline constexpr double kGaugeEps = 1e-9;   // pivot modulus for gauge fixing
inline constexpr double kTolJet = 1e-9;     // jet component agreement
inline constexpr double kTolStar = 1e-8;    // star-product identities
inline constexpr double kTolDyn = 1e-8;     // dynamical cross-checks
inline constexpr double kTolTrunc = 1e-6;   // truncation-dominated comparisons

// Finite-dimensional linear operator on C^dim, dim >= 2.  Immutable after
// construction; all entries are validated finite.
class Operator {
 public:
  explicit Operator(Matrix entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }

  Operator adjoint() const { return Operator(entries_.adjoint()); }
  // Largest entrywise deviation from self-adjointness.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = kTolHerm) const {
    return hermiticity_defect() <= tol;
  }

  static Operator identity(Eigen::Index dim);
  static Operator zero(Eigen::Index dim);

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(const Complex& c, const Operator& a);
  friend Operator operator*(double c, const Operator& a);

 private:
  Matrix entries_;
};

// Checked factory: `entries` must be dim x dim with finite entries.
Operator make_operator(Eigen::Index dim, const Matrix& entries);

// AB - BA.  Dimensions must agree.
Operator commutator(const Operator& a, const Operator& b);
// AB + BA.
Operator anticommutator(const Operator& a, const Operator& b);

// Eigensystem of a Hermitian operator: ascending eigenvalues, orthonormal
// eigenvector columns.  Throws if the input fails the Hermiticity gate.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;
};
SpectralDecomposition spectral_decompose(const Operator& a,
                                         double tol = kTolHerm);

}  // namespace ncval
