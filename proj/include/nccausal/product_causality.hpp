#pragma once

// Causal order on the pure states of the almost commutative geometry
// R^{1,1} x M2(C): events carrying an internal Bloch-sphere state.

#include "nccausal/clifford.hpp"
#include "nccausal/finite_geometry.hpp"
#include "nccausal/spacetime.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace nccausal {

struct ProductState {
  Event event;
  InternalState internal;

  bool operator==(const ProductState&) const = default;
};

/// J[D,a] at one event for a matrix-valued a, with D = D_M (x) 1 + gammaM (x) D_F
/// and J = i gamma0 (x) 1. Inputs are a(p), d_t a(p), d_x a(p).
Herm4 product_symbol(const Herm2& a_val, const Herm2& da_dt, const Herm2& da_dx,
                     const FiniteDirac& df);

/// Angular separation of two longitudes along the shorter arc, in [0, pi].
/// The speed condition uses this branch (no winding).
double longitude_gap(double theta1, double theta2) noexcept;

enum class NotRelatedReason { BaseNotCausal, LatitudeMismatch, SpeedLimitExceeded };

std::string_view to_string(NotRelatedReason r) noexcept;

/// Values of the three conditions, kept for reporting.
struct CausalConditions {
  bool base_causal = false;
  double latitude1 = 0.0;
  double latitude2 = 0.0;
  bool pole = false;          // longitude clause vacuous
  double dtheta_min = 0.0;    // 0 when pole
  double proper_time = 0.0;   // Lorentzian distance of the events
  double speed_bound = 0.0;   // |d1 - d2| * proper_time
  double speed_margin() const noexcept { return speed_bound - dtheta_min; }
};

struct CausalVerdict {
  std::optional<NotRelatedReason> reason;  // empty iff Related
  CausalConditions conditions;

  bool related() const noexcept { return !reason.has_value(); }
};

inline constexpr double kSpeedSlack = 1e-12;

/// omega_{p,xi} <= omega_{q,phi}: p precedes q, equal latitudes (1e-9), and the
/// longitude gap is at most |d1 - d2| times the Lorentzian distance. The first
/// failing condition is reported.
CausalVerdict causally_related(const ProductState& w1, const ProductState& w2, const FiniteDirac& df);

/// |d1 - d2|, the bound on internal angular speed per unit proper time.
double speed_bound(const FiniteDirac& df) noexcept;

struct LongitudeArc {
  enum class Kind { Empty, Arc, FullCircle };
  Kind kind = Kind::Empty;
  double center = 0.0;
  double half_width = 0.0;

  double theta_min() const noexcept { return center - half_width; }
  double theta_max() const noexcept { return center + half_width; }
  bool contains(double theta) const noexcept;
};

/// Longitudes reachable at q from w. Throws Error{PoleState} when w is at a pole.
LongitudeArc reachable_longitudes(const ProductState& w, const Event& q, const FiniteDirac& df);

/// Curve in R^{1,1} x S^1 with unwrapped longitude.
struct ProductVertex {
  Event event;
  double theta = 0.0;
};

/// Checks the base projection is a causal Curve and every segment obeys
/// dtheta^2 <= (d1 - d2)^2 (dt^2 - dx^2), allowing |dtheta| to exceed the bound by
/// at most slack per segment. Returns the first failing segment or -1.
long first_invalid_product_segment(const std::vector<ProductVertex>& curve, const FiniteDirac& df,
                                   double slack = 0.0);

struct CurveOracleOptions {
  ProperTimeOptions base;
  double slack = 1e-3;  // total angular slack spread over the segments
};

/// Independent check by construction: maximize proper time over PL base
/// curves from p to q, spread the longitude change theta_phi + 2 pi k - theta_xi
/// (k in {-1,0,1}) along it, and test the product-metric causality of every
/// segment.
bool curve_oracle(const ProductState& w1, const ProductState& w2, const FiniteDirac& df,
                  int n_segments, const CurveOracleOptions& opts = {});

}  // namespace nccausal
