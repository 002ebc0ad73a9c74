#pragma once

// Gamma matrices of 2D Minkowski space, the Krein fundamental symmetry and the
// pointwise operator symbols J[D,f] used by the causal and steep conditions.

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace nccausal {

using cplx = std::complex<double>;

/// Entrywise tolerance for the anti-Hermitian part accepted by Herm2/Herm4.
inline constexpr double kHermitianRejectTol = 1e-10;

/// Hermitian 2x2 matrix. Construction symmetrizes (M + M*)/2 and throws
/// Error{NotHermitian} when the anti-Hermitian part exceeds 1e-10.
class Herm2 {
 public:
  Herm2() : m_(Eigen::Matrix2cd::Zero()) {}
  explicit Herm2(const Eigen::Matrix2cd& m);

  static Herm2 diagonal(double a, double b);
  static Herm2 identity() { return diagonal(1.0, 1.0); }

  const Eigen::Matrix2cd& matrix() const noexcept { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }

  /// Ascending eigenvalues from the trace/determinant closed form.
  std::array<double, 2> eigenvalues() const noexcept;
  double max_eigenvalue() const noexcept { return eigenvalues()[1]; }

  Herm2 operator+(const Herm2& o) const { return Herm2(m_ + o.m_, Trusted{}); }
  Herm2 operator-(const Herm2& o) const { return Herm2(m_ - o.m_, Trusted{}); }
  Herm2 operator*(double s) const { return Herm2(m_ * s, Trusted{}); }

 private:
  struct Trusted {};
  Herm2(const Eigen::Matrix2cd& m, Trusted) : m_(m) {}
  Eigen::Matrix2cd m_;
};

/// Hermitian 4x4 matrix (symbols on spinor (x) internal space).
class Herm4 {
 public:
  Herm4() : m_(Eigen::Matrix4cd::Zero()) {}
  explicit Herm4(const Eigen::Matrix4cd& m);

  const Eigen::Matrix4cd& matrix() const noexcept { return m_; }

  /// Ascending eigenvalues (iterative self-adjoint solver).
  std::array<double, 4> eigenvalues() const;
  double max_eigenvalue() const { return eigenvalues()[3]; }

 private:
  Eigen::Matrix4cd m_;
};

struct CliffordBasis {
  Eigen::Matrix2cd gamma0;  // anti-Hermitian, squares to -1
  Eigen::Matrix2cd gamma1;  // Hermitian, squares to +1
  Eigen::Matrix2cd gammaM;  // grading gamma0 * gamma1
  Eigen::Matrix2cd J;       // fundamental symmetry i * gamma0
};

/// gamma0 = diag(i,-i), gamma1 = sigma_x. Fixed for the whole library.
const CliffordBasis& standard_basis();

/// J[D,f] at one event for a scalar f with gradient (dft, dfx).
/// Eigenvalues are -dft +- |dfx|.
Herm2 causal_symbol(double dft, double dfx);

/// J([D,f] + i gammaM). Eigenvalues are -dft +- sqrt(1 + dfx^2).
Herm2 steep_symbol(double dft, double dfx);

bool is_nsd(const Herm2& m, double tol);
bool is_nsd(const Herm4& m, double tol);
/// Validating overloads: throw Error{NotHermitian} for non-Hermitian input.
bool is_nsd(const Eigen::Matrix2cd& m, double tol);
bool is_nsd(const Eigen::Matrix4cd& m, double tol);

/// Kronecker product of two 2x2 complex matrices (left factor is the outer block index).
Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

}  // namespace nccausal
