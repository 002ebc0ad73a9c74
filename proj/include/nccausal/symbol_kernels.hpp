#pragma once

// Batched largest-eigenvalue kernels for the 2x2 causal/steep symbols.
//
// The scalar kernel is the reference; the AVX2 kernel evaluates four samples
// per lane group with the same operation order and is selected at runtime when
// the CPU supports it. Both assemble M = dft*A + dfx*B + shift*C from the
// constant Clifford products and return (p+r)/2 + sqrt(((p-r)/2)^2 + |c|^2).

#include <cstddef>
#include <span>
#include <string_view>

namespace nccausal::kernels {

enum class SymbolKind { Causal, Steep };

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

bool avx2_supported() noexcept;

/// ISA used by the dispatching entry points.
Isa active_isa() noexcept;

/// out[i] = largest eigenvalue of the symbol at gradient (dft[i], dfx[i]).
/// All spans must have equal length; throws Error{InvalidArgument} otherwise.
void max_eigenvalues(SymbolKind kind, std::span<const double> dft, std::span<const double> dfx,
                     std::span<double> out);

/// Same, forcing a specific implementation. Avx2 falls back to scalar when unsupported.
void max_eigenvalues(Isa isa, SymbolKind kind, std::span<const double> dft,
                     std::span<const double> dfx, std::span<double> out);

/// Number of samples whose largest eigenvalue exceeds tol.
std::size_t count_positive(SymbolKind kind, std::span<const double> dft,
                           std::span<const double> dfx, double tol);

namespace detail {

/// Real/imaginary parts of the entries (0,0), (1,1), (0,1) for the three
/// constant symbol generators.
struct SymbolCoefficients {
  double a00, a11, a01r, a01i;  // coefficient of dft
  double b00, b11, b01r, b01i;  // coefficient of dfx
  double c00, c11, c01r, c01i;  // grading shift (steep only)
};

const SymbolCoefficients& symbol_coefficients() noexcept;

void max_eigenvalues_scalar(const SymbolCoefficients& k, double shift, const double* dft,
                            const double* dfx, double* out, std::size_t n) noexcept;
void max_eigenvalues_avx2(const SymbolCoefficients& k, double shift, const double* dft,
                          const double* dfx, double* out, std::size_t n) noexcept;

}  // namespace detail

}  // namespace nccausal::kernels
