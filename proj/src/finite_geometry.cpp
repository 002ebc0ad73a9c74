#include "nccausal/finite_geometry.hpp"

#include "nccausal/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace nccausal {

namespace {

constexpr double kZeroNorm = 1e-12;
constexpr double kPoleTol = 1e-12;

Bloch bloch_of(const Eigen::Vector2cd& xi) {
  const cplx p = std::conj(xi(0)) * xi(1);
  return {2.0 * p.real(), 2.0 * p.imag(), std::norm(xi(0)) - std::norm(xi(1))};
}

double largest_singular_value(const Eigen::Matrix2cd& c) {
  const Herm2 gram(c.adjoint() * c);
  return std::sqrt(std::max(0.0, gram.max_eigenvalue()));
}

// Coordinates of a Hermitian 2x2 matrix b in the Dirac eigenbasis.
struct Params {
  double b11 = 0.0;
  double b22 = 0.0;
  cplx b12{0.0, 0.0};

  double frob_dist(const Params& o) const {
    return std::sqrt((b11 - o.b11) * (b11 - o.b11) + (b22 - o.b22) * (b22 - o.b22) +
                     2.0 * std::norm(b12 - o.b12));
  }
};

// Rank-two difference W = xi xi^* - phi phi^* expressed in the Dirac eigenbasis.
// The separation objective is tr(b W) = b11 W11 + b22 W22 + 2 Re(b12 conj(W12)).
struct Separation {
  double w11;
  double w22;
  cplx w12;
  double norm;  // Frobenius

  Separation(const DiracMatrix& d, const InternalState& s1, const InternalState& s2) {
    const Eigen::Vector2cd x = d.eigenbasis().adjoint() * s1.vector();
    const Eigen::Vector2cd y = d.eigenbasis().adjoint() * s2.vector();
    w11 = std::norm(x(0)) - std::norm(y(0));
    w22 = std::norm(x(1)) - std::norm(y(1));
    w12 = x(0) * std::conj(x(1)) - y(0) * std::conj(y(1));
    norm = std::sqrt(w11 * w11 + w22 * w22 + 2.0 * std::norm(w12));
  }

  double value(const Params& b) const {
    return b.b11 * w11 + b.b22 * w22 + 2.0 * (b.b12 * std::conj(w12)).real();
  }

  // b + len * sign * W / |W|.
  Params step(const Params& b, double len, double sign) const {
    const double s = sign * len / norm;
    return {b.b11 + s * w11, b.b22 + s * w22, b.b12 + s * w12};
  }
};

Params project(Params b, double radius, double clip) {
  b.b11 = std::clamp(b.b11, -clip, clip);
  b.b22 = std::clamp(b.b22, -clip, clip);
  const double m = std::abs(b.b12);
  if (m > radius) b.b12 *= radius / m;
  return b;
}

Herm2 to_matrix(const DiracMatrix& d, const Params& b) {
  Eigen::Matrix2cd m;
  m << b.b11, b.b12, std::conj(b.b12), b.b22;
  const Eigen::Matrix2cd& u = d.eigenbasis();
  return Herm2(u * m * u.adjoint());
}

void check_options(const OptimizerOptions& opts) {
  if (opts.starts < 1 || opts.max_iterations < 1 || !(opts.step > 0.0) ||
      !(opts.tolerance > 0.0) || !(opts.diagonal_clip > 0.0))
    throw Error(ErrorKind::InvalidArgument, "optimizer options out of range");
}

}  // namespace

FiniteDirac::FiniteDirac(double d1, double d2) : d1_(d1), d2_(d2) {
  if (!std::isfinite(d1) || !std::isfinite(d2) || std::abs(d1 - d2) <= 1e-12) {
    std::ostringstream os;
    os << "D_F = diag(" << d1 << ", " << d2 << ") needs finite, distinct eigenvalues";
    throw Error(ErrorKind::InvalidDirac, os.str());
  }
}

double FiniteDirac::gap() const noexcept { return std::abs(d1_ - d2_); }

Eigen::Matrix2cd FiniteDirac::matrix() const {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = d1_;
  m(1, 1) = d2_;
  return m;
}

InternalState make_state(const Eigen::Vector2cd& v) {
  if (!v.allFinite()) throw Error(ErrorKind::ZeroVector, "state vector has non-finite entries");
  const double n = v.norm();
  if (n <= kZeroNorm) throw Error(ErrorKind::ZeroVector, "state vector norm <= 1e-12");

  Eigen::Vector2cd w = v;
  // Already-normalized input is left untouched so canonical states are fixed points.
  if (std::abs(n - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) w /= n;

  const int lead = std::abs(w(0)) > kZeroNorm ? 0 : 1;
  const cplx orig = w(lead);
  const double mag = std::abs(orig);
  const cplx phase = orig / mag;
  if (phase != cplx(1.0, 0.0)) w *= std::conj(phase);
  w(lead) = cplx(mag, 0.0);

  InternalState s;
  s.xi_ = w;
  s.bloch_ = bloch_of(w);
  return s;
}

InternalState make_state(cplx v1, cplx v2) { return make_state(Eigen::Vector2cd(v1, v2)); }

InternalState state_from_bloch(double z, double theta) {
  z = std::clamp(z, -1.0, 1.0);
  return make_state(cplx(std::sqrt(0.5 * (1.0 + z)), 0.0),
                    std::polar(std::sqrt(0.5 * (1.0 - z)), theta));
}

double latitude(const InternalState& s) noexcept { return s.bloch().z; }

bool is_pole(const InternalState& s) noexcept { return std::abs(s.bloch().z) >= 1.0 - kPoleTol; }

double longitude(const InternalState& s) {
  if (is_pole(s)) throw Error(ErrorKind::PoleState, "longitude is undefined at a pole");
  const double th = std::atan2(s.bloch().y, s.bloch().x);
  return th == -std::numbers::pi ? std::numbers::pi : th;
}

bool same_state(const InternalState& a, const InternalState& b, double tol) {
  const Bloch& p = a.bloch();
  const Bloch& q = b.bloch();
  return std::hypot(p.x - q.x, p.y - q.y, p.z - q.z) <= tol;
}

double state_eval(const InternalState& s, const Herm2& a) {
  return (s.vector().adjoint() * a.matrix() * s.vector())(0, 0).real();
}

double commutator_norm(const FiniteDirac& df, const Herm2& a) {
  const Eigen::Matrix2cd d = df.matrix();
  return largest_singular_value(d * a.matrix() - a.matrix() * d);
}

DiracMatrix::DiracMatrix(const FiniteDirac& df)
    : m_(df.matrix()), u_(Eigen::Matrix2cd::Identity()), gap_(df.gap()) {}

DiracMatrix::DiracMatrix(const Eigen::Matrix2cd& m) : m_(Herm2(m).matrix()) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m_);
  gap_ = es.eigenvalues()(1) - es.eigenvalues()(0);
  if (!(gap_ > 1e-12)) throw Error(ErrorKind::InvalidDirac, "Dirac matrix has a degenerate spectrum");
  u_ = es.eigenvectors();
}

double commutator_norm(const DiracMatrix& d, const Herm2& a) {
  return largest_singular_value(d.matrix() * a.matrix() - a.matrix() * d.matrix());
}

double latitude_in(const DiracMatrix& d, const InternalState& s) {
  const Eigen::Vector2cd v = d.eigenbasis().adjoint() * s.vector();
  return std::norm(v(0)) - std::norm(v(1));
}

ConjugatedDirac unitary_conjugate(const FiniteDirac& df, const Eigen::Matrix2cd& u) {
  if (!u.allFinite() ||
      (u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorKind::NotUnitary, "u u^* differs from the identity by more than 1e-12");
  return {DiracMatrix(Eigen::Matrix2cd(u * df.matrix() * u.adjoint())), u};
}

DistanceResult DistanceResult::finite(double value) {
  if (!(value >= 0.0)) throw Error(ErrorKind::InvalidArgument, "distance must be nonnegative");
  DistanceResult r;
  r.value_ = value;
  return r;
}

AscentResult maximize_separation(const DiracMatrix& d, const InternalState& s1,
                                 const InternalState& s2, const OptimizerOptions& opts) {
  check_options(opts);
  const Separation sep(d, s1, s2);
  const double radius = 1.0 / d.gap();
  const double clip = opts.diagonal_clip;

  AscentResult best;
  if (sep.norm < 1e-300) return best;

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double len = opts.step * radius;
  const double stop = opts.tolerance * std::max(1.0, radius);

  double best_value = -1.0;
  Params best_b;
  for (int start = 0; start < opts.starts; ++start) {
    Params b{normal(rng) * radius, normal(rng) * radius,
             cplx(normal(rng), normal(rng)) * radius};
    b = project(b, radius, clip);
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
      const double g = sep.value(b);
      const Params next = project(sep.step(b, len, g < 0.0 ? -1.0 : 1.0), radius, clip);
      const double moved = next.frob_dist(b);
      b = next;
      if (moved <= stop) break;
    }
    best.iterations += it;
    const double v = std::abs(sep.value(b));
    if (v > best_value) {
      best_value = v;
      best_b = b;
    }
  }
  best.objective = best_value;
  best.argmax = to_matrix(d, best_b);
  return best;
}

DistanceResult spectral_distance(const DiracMatrix& d, const InternalState& s1,
                                 const InternalState& s2, const OptimizerOptions& opts) {
  if (std::abs(latitude_in(d, s1) - latitude_in(d, s2)) > kLatitudeTol)
    return DistanceResult::infinite();
  return DistanceResult::finite(maximize_separation(d, s1, s2, opts).objective);
}

DistanceResult spectral_distance(const FiniteDirac& df, const InternalState& s1,
                                 const InternalState& s2, const OptimizerOptions& opts) {
  return spectral_distance(DiracMatrix(df), s1, s2, opts);
}

double parallel_distance(const FiniteDirac& df, const InternalState& s1, const InternalState& s2) {
  const double z1 = latitude(s1);
  const double z2 = latitude(s2);
  if (std::abs(z1 - z2) > kLatitudeTol)
    throw Error(ErrorKind::InvalidArgument, "states lie on different parallels");
  if (is_pole(s1) || is_pole(s2)) return 0.0;
  const double z = 0.5 * (z1 + z2);
  const double dtheta = longitude(s1) - longitude(s2);
  return 2.0 * std::sqrt(std::max(0.0, 1.0 - z * z)) * std::abs(std::sin(0.5 * dtheta)) / df.gap();
}

DivergenceProbe divergence_probe(const DiracMatrix& d, const InternalState& s1,
                                 const InternalState& s2, const OptimizerOptions& opts,
                                 double threshold) {
  check_options(opts);
  const Separation sep(d, s1, s2);
  DivergenceProbe probe;
  if (sep.norm < 1e-300) return probe;

  const double radius = 1.0 / d.gap();
  const double unclipped = std::numeric_limits<double>::infinity();
  double len = opts.step * radius;
  Params b;
  double g = 0.0;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const Params next = project(sep.step(b, len, g < 0.0 ? -1.0 : 1.0), radius, unclipped);
    const double gn = sep.value(next);
    if (std::abs(gn) > std::abs(g)) {
      len *= 2.0;
    } else {
      len *= 0.5;
    }
    b = next;
    g = gn;
    probe.iterations = it;
    probe.objective = std::abs(g);
    if (probe.objective > threshold) {
      probe.exceeded = true;
      break;
    }
  }
  return probe;
}

}  // namespace nccausal
