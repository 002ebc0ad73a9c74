#pragma once

// Seeded random generators for events, states and operators, shared by the
// invariant suites and the tests.

#include "nccausal/finite_geometry.hpp"
#include "nccausal/product_causality.hpp"
#include "nccausal/spacetime.hpp"

#include <random>
#include <span>
#include <utility>

namespace nccausal::sampling {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);

/// Event with both coordinates uniform in [-range, range].
Event event(Rng& rng, double range = 3.0);

/// q strictly inside the future cone of p: dt in (0, max_dt], |dx| <= ratio * dt.
std::pair<Event, Event> timelike_pair(Rng& rng, double max_dt = 3.0, double ratio = 0.95);
/// |dx| > |dt| with |dt| <= ratio * |dx|.
std::pair<Event, Event> spacelike_pair(Rng& rng, double max_dx = 3.0, double ratio = 0.95);
/// dt = |dx| > 0 exactly.
std::pair<Event, Event> null_pair(Rng& rng, double max_dt = 3.0);

/// Uniform on the Bloch sphere.
InternalState state(Rng& rng);
/// Latitude drawn from the given set, longitude uniform.
InternalState state_on(Rng& rng, std::span<const double> latitudes);

ProductState product_state(Rng& rng, std::span<const double> latitudes, double range = 3.0);

/// Haar-like random 2x2 unitary (QR of a complex Gaussian matrix).
Eigen::Matrix2cd unitary(Rng& rng);

FiniteDirac dirac(Rng& rng);

}  // namespace nccausal::sampling
