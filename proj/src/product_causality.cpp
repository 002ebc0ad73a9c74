#include "nccausal/product_causality.hpp"

#include "nccausal/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nccausal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

Herm4 product_symbol(const Herm2& a_val, const Herm2& da_dt, const Herm2& da_dx,
                     const FiniteDirac& df) {
  const auto& b = standard_basis();
  const cplx i(0.0, 1.0);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd d = df.matrix();
  const Eigen::Matrix2cd internal_commutator = d * a_val.matrix() - a_val.matrix() * d;

  const Eigen::Matrix4cd commutator = kron(-i * b.gamma0, da_dt.matrix()) +
                                      kron(-i * b.gamma1, da_dx.matrix()) +
                                      kron(b.gammaM, internal_commutator);
  return Herm4(kron(b.J, id) * commutator);
}

double longitude_gap(double theta1, double theta2) noexcept {
  double d = std::fmod(std::abs(theta1 - theta2), kTwoPi);
  if (d > std::numbers::pi) d = kTwoPi - d;
  return d;
}

std::string_view to_string(NotRelatedReason r) noexcept {
  switch (r) {
    case NotRelatedReason::BaseNotCausal: return "BaseNotCausal";
    case NotRelatedReason::LatitudeMismatch: return "LatitudeMismatch";
    case NotRelatedReason::SpeedLimitExceeded: return "SpeedLimitExceeded";
  }
  return "Unknown";
}

double speed_bound(const FiniteDirac& df) noexcept { return df.gap(); }

CausalVerdict causally_related(const ProductState& w1, const ProductState& w2, const FiniteDirac& df) {
  CausalVerdict v;
  CausalConditions& c = v.conditions;
  c.base_causal = causally_precedes(w1.event, w2.event);
  c.latitude1 = latitude(w1.internal);
  c.latitude2 = latitude(w2.internal);
  c.proper_time = lorentzian_distance(w1.event, w2.event);
  c.speed_bound = speed_bound(df) * c.proper_time;
  c.pole = is_pole(w1.internal) || is_pole(w2.internal);
  c.dtheta_min = c.pole ? 0.0 : longitude_gap(longitude(w1.internal), longitude(w2.internal));

  if (!c.base_causal) {
    v.reason = NotRelatedReason::BaseNotCausal;
  } else if (std::abs(c.latitude1 - c.latitude2) > kLatitudeTol) {
    v.reason = NotRelatedReason::LatitudeMismatch;
  } else if (!c.pole && c.dtheta_min > c.speed_bound + kSpeedSlack) {
    v.reason = NotRelatedReason::SpeedLimitExceeded;
  }
  return v;
}

bool LongitudeArc::contains(double theta) const noexcept {
  switch (kind) {
    case Kind::Empty: return false;
    case Kind::FullCircle: return true;
    case Kind::Arc: return longitude_gap(theta, center) <= half_width + kSpeedSlack;
  }
  return false;
}

LongitudeArc reachable_longitudes(const ProductState& w, const Event& q, const FiniteDirac& df) {
  const double center = longitude(w.internal);
  LongitudeArc arc;
  arc.center = center;
  if (!causally_precedes(w.event, q)) return arc;
  const double half = speed_bound(df) * lorentzian_distance(w.event, q);
  if (half >= std::numbers::pi) {
    arc.kind = LongitudeArc::Kind::FullCircle;
    arc.half_width = std::numbers::pi;
  } else {
    arc.kind = LongitudeArc::Kind::Arc;
    arc.half_width = half;
  }
  return arc;
}

long first_invalid_product_segment(const std::vector<ProductVertex>& curve, const FiniteDirac& df,
                                   double slack) {
  const double gap = df.gap();
  for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
    const Event& a = curve[k].event;
    const Event& b = curve[k + 1].event;
    const double dt = b.t - a.t;
    const double dx = b.x - a.x;
    if (!(dt > 0.0) || !(dt >= std::abs(dx))) return static_cast<long>(k);
    const double tau = std::sqrt(std::max(0.0, (dt - std::abs(dx)) * (dt + std::abs(dx))));
    const double dtheta = std::abs(curve[k + 1].theta - curve[k].theta);
    if (dtheta > gap * tau + slack) return static_cast<long>(k);
  }
  return -1;
}

bool curve_oracle(const ProductState& w1, const ProductState& w2, const FiniteDirac& df,
                  int n_segments, const CurveOracleOptions& opts) {
  if (!causally_precedes(w1.event, w2.event)) return false;
  // Internal motion is confined to a parallel, so a connecting curve needs equal latitudes.
  if (std::abs(latitude(w1.internal) - latitude(w2.internal)) > kLatitudeTol) return false;

  const bool pole = is_pole(w1.internal) || is_pole(w2.internal);
  if (w1.event == w2.event) {
    return pole || longitude_gap(longitude(w1.internal), longitude(w2.internal)) <= opts.slack;
  }

  const ProperTimeResult base = max_proper_time_curve(w1.event, w2.event, n_segments, opts.base);
  if (pole) return first_noncausal_segment(base.vertices) < 0;

  const double theta1 = longitude(w1.internal);
  const double theta2 = longitude(w2.internal);
  const std::size_t segs = base.vertices.size() - 1;
  std::vector<double> weight(segs);
  double total = 0.0;
  for (std::size_t k = 0; k < segs; ++k) {
    const Event& a = base.vertices[k];
    const Event& b = base.vertices[k + 1];
    const double ax = std::abs(b.x - a.x);
    weight[k] = std::sqrt(std::max(0.0, (b.t - a.t - ax) * (b.t - a.t + ax)));
    total += weight[k];
  }
  for (double& w : weight) w = total > 0.0 ? w / total : 1.0 / static_cast<double>(segs);

  const double per_segment_slack = opts.slack / static_cast<double>(segs);
  for (int k = -1; k <= 1; ++k) {
    const double delta = theta2 + kTwoPi * k - theta1;
    std::vector<ProductVertex> curve;
    curve.reserve(segs + 1);
    double theta = theta1;
    curve.push_back({base.vertices[0], theta});
    for (std::size_t s = 0; s < segs; ++s) {
      theta += delta * weight[s];
      curve.push_back({base.vertices[s + 1], theta});
    }
    if (first_invalid_product_segment(curve, df, per_segment_slack) < 0) return true;
  }
  return false;
}

}  // namespace nccausal
