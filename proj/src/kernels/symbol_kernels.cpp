#include "nccausal/symbol_kernels.hpp"

#include "nccausal/clifford.hpp"
#include "nccausal/error.hpp"

#include <cmath>
#include <vector>

namespace nccausal::kernels {

namespace detail {

namespace {

SymbolCoefficients build_coefficients() {
  const auto& b = standard_basis();
  const cplx i(0.0, 1.0);
  const Eigen::Matrix2cd a = b.J * (-i * b.gamma0);
  const Eigen::Matrix2cd g = b.J * (-i * b.gamma1);
  const Eigen::Matrix2cd c = b.J * (i * b.gammaM);
  return {a(0, 0).real(), a(1, 1).real(), a(0, 1).real(), a(0, 1).imag(),
          g(0, 0).real(), g(1, 1).real(), g(0, 1).real(), g(0, 1).imag(),
          c(0, 0).real(), c(1, 1).real(), c(0, 1).real(), c(0, 1).imag()};
}

}  // namespace

const SymbolCoefficients& symbol_coefficients() noexcept {
  static const SymbolCoefficients k = build_coefficients();
  return k;
}

void max_eigenvalues_scalar(const SymbolCoefficients& k, double shift, const double* dft,
                            const double* dfx, double* out, std::size_t n) noexcept {
  for (std::size_t j = 0; j < n; ++j) {
    const double t = dft[j];
    const double x = dfx[j];
    const double p = (t * k.a00 + x * k.b00) + shift * k.c00;
    const double r = (t * k.a11 + x * k.b11) + shift * k.c11;
    const double cr = (t * k.a01r + x * k.b01r) + shift * k.c01r;
    const double ci = (t * k.a01i + x * k.b01i) + shift * k.c01i;
    const double mean = (p + r) * 0.5;
    const double half = (p - r) * 0.5;
    out[j] = mean + std::sqrt((half * half + cr * cr) + ci * ci);
  }
}

}  // namespace detail

std::string_view to_string(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_supported() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() noexcept {
  static const Isa isa = avx2_supported() ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

void max_eigenvalues(Isa isa, SymbolKind kind, std::span<const double> dft,
                     std::span<const double> dfx, std::span<double> out) {
  if (dft.size() != dfx.size() || dft.size() != out.size())
    throw Error(ErrorKind::InvalidArgument, "gradient and output spans differ in length");
  const double shift = kind == SymbolKind::Steep ? 1.0 : 0.0;
  const auto& k = detail::symbol_coefficients();
  if (isa == Isa::Avx2 && avx2_supported())
    detail::max_eigenvalues_avx2(k, shift, dft.data(), dfx.data(), out.data(), out.size());
  else
    detail::max_eigenvalues_scalar(k, shift, dft.data(), dfx.data(), out.data(), out.size());
}

void max_eigenvalues(SymbolKind kind, std::span<const double> dft, std::span<const double> dfx,
                     std::span<double> out) {
  max_eigenvalues(active_isa(), kind, dft, dfx, out);
}

std::size_t count_positive(SymbolKind kind, std::span<const double> dft,
                           std::span<const double> dfx, double tol) {
  std::vector<double> lam(dft.size());
  max_eigenvalues(kind, dft, dfx, lam);
  std::size_t n = 0;
  for (double v : lam)
    if (!(v <= tol)) ++n;
  return n;
}

}  // namespace nccausal::kernels
