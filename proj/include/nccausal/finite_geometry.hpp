#pragma once

// The finite spectral triple (M2(C), C^2, D_F): pure states on the Bloch
// sphere, commutators with D_F and Connes' spectral distance between states.

#include "nccausal/clifford.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>

namespace nccausal {

/// D_F = diag(d1, d2) with d1 != d2.
class FiniteDirac {
 public:
  /// Throws Error{InvalidDirac} when |d1 - d2| <= 1e-12 or either value is not finite.
  FiniteDirac(double d1, double d2);

  double d1() const noexcept { return d1_; }
  double d2() const noexcept { return d2_; }
  double gap() const noexcept;  // |d1 - d2|
  Eigen::Matrix2cd matrix() const;

  bool operator==(const FiniteDirac&) const = default;

 private:
  double d1_;
  double d2_;
};

struct Bloch {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Normalized, phase-fixed vector of C^2 (the first component with modulus
/// above 1e-12 is real and nonnegative) with cached Bloch coordinates.
class InternalState {
 public:
  const Eigen::Vector2cd& vector() const noexcept { return xi_; }
  cplx xi1() const noexcept { return xi_(0); }
  cplx xi2() const noexcept { return xi_(1); }
  const Bloch& bloch() const noexcept { return bloch_; }

  bool operator==(const InternalState& o) const { return xi_ == o.xi_; }

 private:
  friend InternalState make_state(const Eigen::Vector2cd& v);
  Eigen::Vector2cd xi_;
  Bloch bloch_;
};

/// Throws Error{ZeroVector} when the norm is <= 1e-12.
InternalState make_state(const Eigen::Vector2cd& v);
InternalState make_state(cplx v1, cplx v2);

/// State at latitude z in [-1,1] and longitude theta: (sqrt((1+z)/2), sqrt((1-z)/2) e^{i theta}).
InternalState state_from_bloch(double z, double theta);

double latitude(const InternalState& s) noexcept;
bool is_pole(const InternalState& s) noexcept;
/// atan2(y, x) in (-pi, pi]; Error{PoleState} when |z| >= 1 - 1e-12.
double longitude(const InternalState& s);

/// Fubini-Study overlap test: true when |<a,b>| >= 1 - tol.
bool same_state(const InternalState& a, const InternalState& b, double tol);

/// xi^* a xi.
double state_eval(const InternalState& s, const Herm2& a);

/// Largest singular value of [D_F, a].
double commutator_norm(const FiniteDirac& df, const Herm2& a);

/// A Hermitian internal Dirac operator with distinct eigenvalues, stored with its
/// eigenbasis; FiniteDirac is the diagonal special case.
class DiracMatrix {
 public:
  explicit DiracMatrix(const FiniteDirac& df);
  /// Throws Error{NotHermitian} / Error{InvalidDirac} (degenerate spectrum).
  explicit DiracMatrix(const Eigen::Matrix2cd& m);

  const Eigen::Matrix2cd& matrix() const noexcept { return m_; }
  /// Unitary whose columns are the eigenvectors.
  const Eigen::Matrix2cd& eigenbasis() const noexcept { return u_; }
  double gap() const noexcept { return gap_; }

 private:
  Eigen::Matrix2cd m_;
  Eigen::Matrix2cd u_;
  double gap_;
};

/// Largest singular value of [D, a] for a general Hermitian Dirac matrix.
double commutator_norm(const DiracMatrix& d, const Herm2& a);

/// Latitude of s measured in the eigenbasis of d.
double latitude_in(const DiracMatrix& d, const InternalState& s);

struct ConjugatedDirac {
  DiracMatrix dirac;   // u D_F u^*
  Eigen::Matrix2cd u;  // induced state map xi -> u xi

  InternalState map(const InternalState& s) const { return make_state(u * s.vector()); }
};

/// Throws Error{NotUnitary} when |u u^* - I| > 1e-12 entrywise.
ConjugatedDirac unitary_conjugate(const FiniteDirac& df, const Eigen::Matrix2cd& u);

struct OptimizerOptions {
  std::uint64_t seed = 42;
  int starts = 32;
  /// Step length along the normalized ascent direction, in units of the
  /// off-diagonal feasible radius 1/gap.
  double step = 0.1;
  int max_iterations = 10000;
  double tolerance = 1e-10;
  double diagonal_clip = 1e6;

  bool operator==(const OptimizerOptions&) const = default;
};

class DistanceResult {
 public:
  static DistanceResult finite(double value);
  static DistanceResult infinite() { return DistanceResult(); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  /// Throws std::bad_optional_access for Infinite.
  double value() const { return value_.value(); }

 private:
  DistanceResult() = default;
  std::optional<double> value_;
};

/// Latitudes closer than this are treated as equal.
inline constexpr double kLatitudeTol = 1e-9;

struct AscentResult {
  double objective = 0.0;  // best |omega1(a) - omega2(a)| over starts
  Herm2 argmax;
  int iterations = 0;      // total over all starts
};

/// Multi-start projected gradient ascent of |xi^* a xi - phi^* a phi| over
/// Hermitian a with ||[D,a]|| <= 1 and diagonal (in D's eigenbasis) clipped to
/// +-opts.diagonal_clip.
AscentResult maximize_separation(const DiracMatrix& d, const InternalState& s1,
                                 const InternalState& s2, const OptimizerOptions& opts);

/// Connes distance. Infinite when the latitudes (in D's eigenbasis) differ by
/// more than 1e-9; otherwise the optimizer's value.
DistanceResult spectral_distance(const FiniteDirac& df, const InternalState& s1,
                                 const InternalState& s2, const OptimizerOptions& opts);
DistanceResult spectral_distance(const DiracMatrix& d, const InternalState& s1,
                                 const InternalState& s2, const OptimizerOptions& opts);

/// 2 sqrt(1 - z^2) |sin(dtheta/2)| / |d1 - d2| for states on the same parallel.
/// Throws Error{InvalidArgument} when the latitudes differ.
double parallel_distance(const FiniteDirac& df, const InternalState& s1, const InternalState& s2);

struct DivergenceProbe {
  bool exceeded = false;
  double objective = 0.0;
  int iterations = 0;
};

/// Ascent with the diagonal unconstrained and a step doubling while the
/// objective grows; reports whether the objective passes threshold before
/// opts.max_iterations. Diagnostic for the unbounded (cross-latitude) case.
DivergenceProbe divergence_probe(const DiracMatrix& d, const InternalState& s1,
                                 const InternalState& s2, const OptimizerOptions& opts,
                                 double threshold = 1e6);

}  // namespace nccausal
