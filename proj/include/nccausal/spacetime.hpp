#pragma once

// Causal structure of 2D Minkowski space: the light-cone order, Lorentzian
// distance, piecewise-linear causal curves, and the operator-symbol tests for
// causal and steep functions.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace nccausal {

struct Event {
  double t = 0.0;
  double x = 0.0;

  bool operator==(const Event&) const = default;
};

/// q - p is future-directed causal (or zero).
bool causally_precedes(const Event& p, const Event& q) noexcept;

/// sqrt(dt^2 - dx^2) when p precedes q, else 0.
double lorentzian_distance(const Event& p, const Event& q) noexcept;

/// Piecewise-linear curve whose segments are future-directed causal
/// (dt >= |dx| and dt > 0).
class Curve {
 public:
  /// Throws Error{NonCausalSegment} naming the first offending segment, or
  /// Error{InvalidArgument} for fewer than two vertices.
  explicit Curve(std::vector<Event> vertices);

  const std::vector<Event>& vertices() const noexcept { return vertices_; }
  std::size_t segments() const noexcept { return vertices_.size() - 1; }

 private:
  std::vector<Event> vertices_;
};

/// Index of the first segment violating the causal-curve invariant, or -1.
long first_noncausal_segment(std::span<const Event> vertices) noexcept;

double proper_time(const Curve& c);
/// Validating form; throws Error{NonCausalSegment}.
double proper_time(std::span<const Event> vertices);

struct ProperTimeOptions {
  std::uint64_t seed = 42;
  int starts = 4;
  int max_sweeps = 400;
  double tolerance = 1e-13;
};

struct ProperTimeResult {
  double value = 0.0;
  std::vector<Event> vertices;  // best curve found, p first and q last
};

/// Brute-force maximization of proper time over PL causal curves with
/// n_segments pieces (coordinate ascent on interior vertices, seeded
/// multi-start). Throws Error{NotCausallyRelated} when p does not precede q.
ProperTimeResult max_proper_time_curve(const Event& p, const Event& q, int n_segments,
                                       const ProperTimeOptions& opts = {});
double max_proper_time(const Event& p, const Event& q, int n_segments,
                       const ProperTimeOptions& opts = {});

/// Uniform rectangular sample of events, row-major with t outer.
struct Grid2D {
  double t_min = 0.0;
  double t_max = 1.0;
  double x_min = 0.0;
  double x_max = 1.0;
  int nt = 101;
  int nx = 101;

  /// Throws Error{InvalidArgument} for inverted/non-finite bounds or nt, nx < 1.
  void validate() const;
  std::size_t size() const noexcept { return static_cast<std::size_t>(nt) * nx; }
  Event at(int it, int ix) const noexcept;
  std::vector<Event> points() const;
  /// Same rectangle with (n - 1) * factor + 1 points per axis.
  Grid2D refined(int factor) const;
  bool contains(const Event& e) const noexcept;

  bool operator==(const Grid2D&) const = default;
};

struct Gradient {
  double dt = 0.0;
  double dx = 0.0;
};

/// Scalar function with its analytic gradient.
struct ScalarField {
  std::function<double(const Event&)> value;
  std::function<Gradient(const Event&)> gradient;
};

/// Central-difference step used to validate ScalarField gradients.
inline constexpr double kGradientStep = 1e-5;

struct FunctionCheck {
  bool holds = true;                   // matrix predicate at every point
  std::size_t points = 0;
  std::size_t violations = 0;          // points failing the matrix predicate
  std::size_t predicate_disagreements = 0;  // matrix vs scalar inequality
  double worst_eigenvalue = 0.0;       // largest symbol eigenvalue seen
};

/// NSD tolerance of the symbol tests, scaled by max(1, |gradient|).
inline constexpr double kSymbolTol = 1e-9;

/// Evaluates the causal symbol J[D,f] on every grid point and cross-checks it
/// against dt f >= |dx f|. Throws Error{GradientMismatch}.
FunctionCheck check_causal_function(const ScalarField& f, const Grid2D& grid);
/// Same for J([D,f] + i gammaM) against dt f >= sqrt(1 + (dx f)^2).
FunctionCheck check_steep_function(const ScalarField& f, const Grid2D& grid);

bool is_causal_function(const ScalarField& f, const Grid2D& grid);
bool is_steep_function(const ScalarField& f, const Grid2D& grid);

/// f(t,x) = t cosh(beta) + x sinh(beta).
ScalarField boosted_time(double beta);

/// Default boost family: beta in [-40, 40] with step 0.5.
std::vector<double> default_boost_grid();

struct FunctionalResult {
  double value = 0.0;
  double beta = 0.0;  // minimizing boost
};

/// inf over steep boosted time functions of max(0, f(q) - f(p)), searched on
/// boost_grid and refined by golden section to 1e-10 in beta. Every family
/// member used is checked steep on a grid spanning p and q.
FunctionalResult lorentz_distance_functional_detail(const Event& p, const Event& q,
                                                    std::span<const double> boost_grid);
double lorentz_distance_functional(const Event& p, const Event& q,
                                   std::span<const double> boost_grid);
double lorentz_distance_functional(const Event& p, const Event& q);

}  // namespace nccausal
