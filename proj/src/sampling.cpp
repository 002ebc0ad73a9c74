#include "nccausal/sampling.hpp"

#include <cmath>
#include <numbers>

namespace nccausal::sampling {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Event event(Rng& rng, double range) { return {uniform(rng, -range, range), uniform(rng, -range, range)}; }

std::pair<Event, Event> timelike_pair(Rng& rng, double max_dt, double ratio) {
  const Event p = event(rng);
  const double dt = uniform(rng, 1e-3, max_dt);
  const double dx = uniform(rng, -ratio, ratio) * dt;
  return {p, {p.t + dt, p.x + dx}};
}

std::pair<Event, Event> spacelike_pair(Rng& rng, double max_dx, double ratio) {
  const Event p = event(rng);
  const double mag = uniform(rng, 1e-2, max_dx);
  const double dx = uniform(rng, 0.0, 1.0) < 0.5 ? -mag : mag;
  const double dt = uniform(rng, -ratio, ratio) * mag;
  return {p, {p.t + dt, p.x + dx}};
}

std::pair<Event, Event> null_pair(Rng& rng, double max_dt) {
  // Dyadic coordinates keep q - p exactly on the light cone.
  auto dyadic = [](double v) { return std::ldexp(std::round(std::ldexp(v, 20)), -20); };
  const Event e = event(rng);
  const Event p{dyadic(e.t), dyadic(e.x)};
  const double dt = dyadic(uniform(rng, 1e-2, max_dt));
  const double dx = uniform(rng, 0.0, 1.0) < 0.5 ? -dt : dt;
  return {p, {p.t + dt, p.x + dx}};
}

InternalState state(Rng& rng) {
  return state_from_bloch(uniform(rng, -1.0, 1.0), uniform(rng, -std::numbers::pi, std::numbers::pi));
}

InternalState state_on(Rng& rng, std::span<const double> latitudes) {
  const auto idx = std::uniform_int_distribution<std::size_t>(0, latitudes.size() - 1)(rng);
  return state_from_bloch(latitudes[idx], uniform(rng, -std::numbers::pi, std::numbers::pi));
}

ProductState product_state(Rng& rng, std::span<const double> latitudes, double range) {
  const Event e = event(rng, range);
  return {e, state_on(rng, latitudes)};
}

Eigen::Matrix2cd unitary(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Matrix2cd g;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) g(r, c) = cplx(normal(rng), normal(rng));
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
  Eigen::Matrix2cd q = qr.householderQ();
  return q;
}

FiniteDirac dirac(Rng& rng) {
  const double d1 = uniform(rng, -3.0, 3.0);
  double d2 = uniform(rng, -3.0, 3.0);
  if (std::abs(d1 - d2) < 0.1) d2 = d1 + (d2 >= d1 ? 0.1 : -0.1);
  return {d1, d2};
}

}  // namespace nccausal::sampling
