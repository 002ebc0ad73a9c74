#include "nccausal/spacetime.hpp"

#include "golden_section.hpp"
#include "nccausal/error.hpp"
#include "nccausal/symbol_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace nccausal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// sqrt(dt^2 - dx^2) written as a product to keep null separations exact.
double interval(double dt, double dx) noexcept {
  const double ax = std::abs(dx);
  return std::sqrt(std::max(0.0, (dt - ax) * (dt + ax)));
}

// Proper time of the segment a -> b, or -inf when it is not future causal.
double segment_time(const Event& a, const Event& b) noexcept {
  const double dt = b.t - a.t;
  const double dx = b.x - a.x;
  if (dt < std::abs(dx)) return kNegInf;
  return interval(dt, dx);
}

std::vector<Event> random_causal_curve(const Event& p, const Event& q, int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Event> v;
  v.reserve(n + 1);
  v.push_back(p);
  for (int k = 1; k < n; ++k) {
    const Event& prev = v.back();
    const int remaining = n - k + 1;
    const double span = q.t - prev.t;
    const double t = prev.t + span * (0.5 + unit(rng)) / remaining;
    const double lo = std::max(prev.x - (t - prev.t), q.x - (q.t - t));
    const double hi = std::min(prev.x + (t - prev.t), q.x + (q.t - t));
    const double x = hi > lo ? lo + (hi - lo) * unit(rng) : 0.5 * (lo + hi);
    v.push_back({t, x});
  }
  v.push_back(q);
  return v;
}

double curve_time(const std::vector<Event>& v) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) total += std::max(0.0, segment_time(v[k], v[k + 1]));
  return total;
}

// One coordinate-ascent pass over the interior vertices; returns the gain.
double sweep(std::vector<Event>& v) {
  double gain = 0.0;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    const Event a = v[k - 1];
    const Event b = v[k + 1];
    Event& m = v[k];
    const double before = segment_time(a, m) + segment_time(m, b);

    const double xlo = std::max(a.x - (m.t - a.t), b.x - (b.t - m.t));
    const double xhi = std::min(a.x + (m.t - a.t), b.x + (b.t - m.t));
    if (xhi > xlo) {
      const auto [x, neg] = detail::golden_minimize(
          [&](double x) { return -(segment_time(a, {m.t, x}) + segment_time({m.t, x}, b)); },
          xlo, xhi, 1e-12 * std::max(1.0, xhi - xlo));
      if (-neg > segment_time(a, m) + segment_time(m, b)) m.x = x;
    }
    const double tlo = a.t + std::abs(m.x - a.x);
    const double thi = b.t - std::abs(b.x - m.x);
    if (thi > tlo) {
      const auto [t, neg] = detail::golden_minimize(
          [&](double t) { return -(segment_time(a, {t, m.x}) + segment_time({t, m.x}, b)); },
          tlo, thi, 1e-12 * std::max(1.0, thi - tlo));
      if (-neg > segment_time(a, m) + segment_time(m, b)) m.t = t;
    }
    gain += segment_time(a, m) + segment_time(m, b) - before;
  }
  return gain;
}

FunctionCheck check_function(kernels::SymbolKind kind, const ScalarField& f, const Grid2D& grid) {
  grid.validate();
  const std::vector<Event> pts = grid.points();
  std::vector<double> dft(pts.size()), dfx(pts.size()), lam(pts.size());
  const double h = kGradientStep;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Event& e = pts[i];
    const Gradient g = f.gradient(e);
    const double fd_t = (f.value({e.t + h, e.x}) - f.value({e.t - h, e.x})) / (2.0 * h);
    const double fd_x = (f.value({e.t, e.x + h}) - f.value({e.t, e.x - h})) / (2.0 * h);
    const double err = std::hypot(fd_t - g.dt, fd_x - g.dx);
    if (!(err <= std::max(1e-5, 1e-3 * std::hypot(g.dt, g.dx)))) {
      std::ostringstream os;
      os << "supplied gradient (" << g.dt << ", " << g.dx << ") at (" << e.t << ", " << e.x
         << ") differs from central differences (" << fd_t << ", " << fd_x << ")";
      throw Error(ErrorKind::GradientMismatch, os.str());
    }
    dft[i] = g.dt;
    dfx[i] = g.dx;
  }
  kernels::max_eigenvalues(kind, dft, dfx, lam);

  FunctionCheck out;
  out.points = pts.size();
  out.worst_eigenvalue = pts.empty() ? 0.0 : lam[0];
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double tol = kSymbolTol * std::max({1.0, std::abs(dft[i]), std::abs(dfx[i])});
    const bool matrix_ok = lam[i] <= tol;
    const double margin = kind == kernels::SymbolKind::Causal
                              ? dft[i] - std::abs(dfx[i])
                              : dft[i] - std::sqrt(1.0 + dfx[i] * dfx[i]);
    const bool scalar_ok = margin >= -tol;
    if (!matrix_ok) ++out.violations;
    if (matrix_ok != scalar_ok) ++out.predicate_disagreements;
    out.worst_eigenvalue = std::max(out.worst_eigenvalue, lam[i]);
  }
  out.holds = out.violations == 0;
  return out;
}

void check_boost_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "boost grid is empty");
  for (double b : grid) {
    if (!std::isfinite(b)) throw Error(ErrorKind::InvalidArgument, "boost grid has non-finite values");
    const bool mirrored = std::any_of(grid.begin(), grid.end(),
                                      [b](double c) { return std::abs(c + b) <= 1e-12; });
    if (!mirrored) throw Error(ErrorKind::InvalidArgument, "boost grid is not symmetric around 0");
  }
}

}  // namespace

bool causally_precedes(const Event& p, const Event& q) noexcept {
  return q.t - p.t >= std::abs(q.x - p.x);
}

double lorentzian_distance(const Event& p, const Event& q) noexcept {
  if (!causally_precedes(p, q)) return 0.0;
  return interval(q.t - p.t, q.x - p.x);
}

long first_noncausal_segment(std::span<const Event> v) noexcept {
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const double dt = v[k + 1].t - v[k].t;
    const double dx = v[k + 1].x - v[k].x;
    if (!(dt > 0.0) || !(dt >= std::abs(dx))) return static_cast<long>(k);
  }
  return -1;
}

Curve::Curve(std::vector<Event> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw Error(ErrorKind::InvalidArgument, "a curve needs at least two vertices");
  const long bad = first_noncausal_segment(vertices_);
  if (bad >= 0) {
    std::ostringstream os;
    os << "segment " << bad << " is not future-directed causal";
    throw Error(ErrorKind::NonCausalSegment, os.str());
  }
}

double proper_time(const Curve& c) {
  double total = 0.0;
  const auto& v = c.vertices();
  for (std::size_t k = 0; k + 1 < v.size(); ++k)
    total += interval(v[k + 1].t - v[k].t, v[k + 1].x - v[k].x);
  return total;
}

double proper_time(std::span<const Event> vertices) {
  return proper_time(Curve(std::vector<Event>(vertices.begin(), vertices.end())));
}

ProperTimeResult max_proper_time_curve(const Event& p, const Event& q, int n_segments,
                                       const ProperTimeOptions& opts) {
  if (n_segments < 1) throw Error(ErrorKind::InvalidArgument, "n_segments must be >= 1");
  if (!causally_precedes(p, q)) throw Error(ErrorKind::NotCausallyRelated, "q is not in the causal future of p");
  if (p == q || n_segments == 1) return {lorentzian_distance(p, q), {p, q}};
  if (lorentzian_distance(p, q) == 0.0) {
    // Null separation: every causal curve runs along the light ray.
    std::vector<Event> v(n_segments + 1);
    for (int k = 0; k <= n_segments; ++k) {
      const double s = static_cast<double>(k) / n_segments;
      v[k] = {p.t + s * (q.t - p.t), p.x + s * (q.x - p.x)};
    }
    v.back() = q;
    return {0.0, std::move(v)};
  }

  std::mt19937_64 rng(opts.seed);
  ProperTimeResult best{-1.0, {}};
  for (int s = 0; s < std::max(1, opts.starts); ++s) {
    std::vector<Event> v = random_causal_curve(p, q, n_segments, rng);
    for (int it = 0; it < opts.max_sweeps; ++it) {
      if (sweep(v) <= opts.tolerance * std::max(1.0, curve_time(v))) break;
    }
    const double value = curve_time(v);
    if (value > best.value) best = {value, std::move(v)};
  }
  return best;
}

double max_proper_time(const Event& p, const Event& q, int n_segments, const ProperTimeOptions& opts) {
  return max_proper_time_curve(p, q, n_segments, opts).value;
}

void Grid2D::validate() const {
  if (!std::isfinite(t_min) || !std::isfinite(t_max) || !std::isfinite(x_min) ||
      !std::isfinite(x_max) || t_max < t_min || x_max < x_min || nt < 1 || nx < 1)
    throw Error(ErrorKind::InvalidArgument, "grid rectangle or resolution is invalid");
}

Event Grid2D::at(int it, int ix) const noexcept {
  const double t = nt == 1 ? t_min : t_min + (t_max - t_min) * it / (nt - 1);
  const double x = nx == 1 ? x_min : x_min + (x_max - x_min) * ix / (nx - 1);
  return {t, x};
}

std::vector<Event> Grid2D::points() const {
  std::vector<Event> out;
  out.reserve(size());
  for (int it = 0; it < nt; ++it)
    for (int ix = 0; ix < nx; ++ix) out.push_back(at(it, ix));
  return out;
}

Grid2D Grid2D::refined(int factor) const {
  Grid2D g = *this;
  g.nt = (nt - 1) * factor + 1;
  g.nx = (nx - 1) * factor + 1;
  return g;
}

bool Grid2D::contains(const Event& e) const noexcept {
  return e.t >= t_min && e.t <= t_max && e.x >= x_min && e.x <= x_max;
}

FunctionCheck check_causal_function(const ScalarField& f, const Grid2D& grid) {
  return check_function(kernels::SymbolKind::Causal, f, grid);
}

FunctionCheck check_steep_function(const ScalarField& f, const Grid2D& grid) {
  return check_function(kernels::SymbolKind::Steep, f, grid);
}

bool is_causal_function(const ScalarField& f, const Grid2D& grid) {
  return check_causal_function(f, grid).holds;
}

bool is_steep_function(const ScalarField& f, const Grid2D& grid) {
  return check_steep_function(f, grid).holds;
}

ScalarField boosted_time(double beta) {
  const double c = std::cosh(beta);
  const double s = std::sinh(beta);
  return {[c, s](const Event& e) { return e.t * c + e.x * s; },
          [c, s](const Event&) { return Gradient{c, s}; }};
}

std::vector<double> default_boost_grid() {
  std::vector<double> g;
  for (int k = -80; k <= 80; ++k) g.push_back(0.5 * k);
  return g;
}

FunctionalResult lorentz_distance_functional_detail(const Event& p, const Event& q,
                                                    std::span<const double> boost_grid) {
  check_boost_grid(boost_grid);
  std::vector<double> betas(boost_grid.begin(), boost_grid.end());
  std::sort(betas.begin(), betas.end());

  Grid2D span_grid{std::min(p.t, q.t) - 1.0, std::max(p.t, q.t) + 1.0,
                   std::min(p.x, q.x) - 1.0, std::max(p.x, q.x) + 1.0, 5, 5};
  const double dt = q.t - p.t;
  const double dx = q.x - p.x;
  // f(q) - f(p) for the boosted time, in light-cone form to avoid cancellation.
  auto increment = [&](double beta) {
    if (!is_steep_function(boosted_time(beta), span_grid)) return std::numeric_limits<double>::infinity();
    return 0.5 * ((dt + dx) * std::exp(beta) + (dt - dx) * std::exp(-beta));
  };

  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double v = increment(betas[i]);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  FunctionalResult out{std::max(0.0, best_value), betas[best]};
  if (out.value == 0.0 || betas.size() < 2) return out;

  const double lo = betas[best == 0 ? 0 : best - 1];
  const double hi = betas[std::min(best + 1, betas.size() - 1)];
  const auto [beta, value] = detail::golden_minimize(increment, lo, hi, 1e-10);
  if (value < best_value) out = {std::max(0.0, value), beta};
  return out;
}

double lorentz_distance_functional(const Event& p, const Event& q, std::span<const double> boost_grid) {
  return lorentz_distance_functional_detail(p, q, boost_grid).value;
}

double lorentz_distance_functional(const Event& p, const Event& q) {
  const std::vector<double> grid = default_boost_grid();
  return lorentz_distance_functional(p, q, grid);
}

}  // namespace nccausal
