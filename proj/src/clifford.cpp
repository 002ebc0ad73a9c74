#include "nccausal/clifford.hpp"

#include "nccausal/error.hpp"

#include <cmath>
#include <sstream>

namespace nccausal {

namespace {

template <typename Mat>
double anti_hermitian_part(const Mat& m) {
  return ((m - m.adjoint()) * 0.5).cwiseAbs().maxCoeff();
}

template <typename Mat>
Mat checked_symmetrize(const Mat& m) {
  if (!m.allFinite()) throw Error(ErrorKind::NotHermitian, "matrix has non-finite entries");
  const double skew = anti_hermitian_part(m);
  if (skew > kHermitianRejectTol) {
    std::ostringstream os;
    os << "anti-Hermitian part " << skew << " exceeds " << kHermitianRejectTol;
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  return (m + m.adjoint()) * 0.5;
}

CliffordBasis make_basis() {
  const cplx i(0.0, 1.0);
  CliffordBasis b;
  b.gamma0 << i, 0.0, 0.0, -i;
  b.gamma1 << 0.0, 1.0, 1.0, 0.0;
  b.gammaM = b.gamma0 * b.gamma1;
  b.J = i * b.gamma0;
  return b;
}

}  // namespace

Herm2::Herm2(const Eigen::Matrix2cd& m) : m_(checked_symmetrize(m)) {}

Herm2 Herm2::diagonal(double a, double b) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return Herm2(m, Trusted{});
}

std::array<double, 2> Herm2::eigenvalues() const noexcept {
  const double p = m_(0, 0).real();
  const double r = m_(1, 1).real();
  const double mean = 0.5 * (p + r);
  const double rad = std::hypot(0.5 * (p - r), std::abs(m_(0, 1)));
  return {mean - rad, mean + rad};
}

Herm4::Herm4(const Eigen::Matrix4cd& m) : m_(checked_symmetrize(m)) {}

std::array<double, 4> Herm4::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m_, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(1), ev(2), ev(3)};
}

const CliffordBasis& standard_basis() {
  static const CliffordBasis basis = make_basis();
  return basis;
}

Herm2 causal_symbol(double dft, double dfx) {
  const auto& b = standard_basis();
  const cplx i(0.0, 1.0);
  const Eigen::Matrix2cd commutator = -i * b.gamma0 * dft - i * b.gamma1 * dfx;
  return Herm2(b.J * commutator);
}

Herm2 steep_symbol(double dft, double dfx) {
  const auto& b = standard_basis();
  const cplx i(0.0, 1.0);
  const Eigen::Matrix2cd shifted = -i * b.gamma0 * dft - i * b.gamma1 * dfx + i * b.gammaM;
  return Herm2(b.J * shifted);
}

bool is_nsd(const Herm2& m, double tol) { return m.max_eigenvalue() <= tol; }
bool is_nsd(const Herm4& m, double tol) { return m.max_eigenvalue() <= tol; }
bool is_nsd(const Eigen::Matrix2cd& m, double tol) { return is_nsd(Herm2(m), tol); }
bool is_nsd(const Eigen::Matrix4cd& m, double tol) { return is_nsd(Herm4(m), tol); }

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

}  // namespace nccausal
