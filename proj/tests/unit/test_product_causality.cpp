#include "nccausal/error.hpp"
#include "nccausal/product_causality.hpp"
#include "nccausal/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace nccausal;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
const Eigen::Matrix2cd Id = Eigen::Matrix2cd::Identity();

// J[D,a] assembled directly from the explicit 4x4 operators.
Eigen::Matrix4cd reference_symbol(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& at,
                                  const Eigen::Matrix2cd& ax, const FiniteDirac& df) {
  const cplx i(0, 1);
  Eigen::Matrix2cd g0, g1;
  g0 << i, 0, 0, -i;
  g1 << 0, 1, 1, 0;
  const Eigen::Matrix2cd gm = g0 * g1;
  const Eigen::Matrix2cd comm = df.matrix() * a - a * df.matrix();
  const Eigen::Matrix4cd J = kron(i * g0, Id);
  return J * (kron(-i * g0, at) + kron(-i * g1, ax) + kron(gm, comm));
}

ProductState ps(Event e, double z, double theta) { return {e, state_from_bloch(z, theta)}; }

}  // namespace

TEST_SUITE("product_causality") {
  TEST_CASE("product symbol examples") {
    const FiniteDirac df(0, 1);
    const Herm2 zero;
    CHECK(product_symbol(Herm2::identity() * 3.0, zero, zero, df).matrix().cwiseAbs().maxCoeff() == 0.0);
    const Herm4 t = product_symbol(zero, Herm2::identity(), zero, df);
    CHECK((t.matrix() + Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(is_nsd(t, 1e-12));
    const auto ev = product_symbol(Herm2::identity(), Herm2::identity() * 0.3, Herm2::identity() * -1.2, df)
                        .eigenvalues();
    CHECK(ev[0] == Approx(-1.5));
    CHECK(ev[1] == Approx(-1.5));
    CHECK(ev[2] == Approx(0.9));
    CHECK(ev[3] == Approx(0.9));
  }

  TEST_CASE("product symbol matches the direct assembly") {
    sampling::Rng rng(12);
    auto herm = [&] {
      Eigen::Matrix2cd m;
      const cplx off(sampling::uniform(rng, -1, 1), sampling::uniform(rng, -1, 1));
      m << sampling::uniform(rng, -1, 1), off, std::conj(off), sampling::uniform(rng, -1, 1);
      return m;
    };
    const FiniteDirac df(-1, 2);
    for (int k = 0; k < 100; ++k) {
      const Eigen::Matrix2cd a = herm(), at = herm(), ax = herm();
      const Eigen::Matrix4cd ref = reference_symbol(a, at, ax, df);
      CHECK((ref - ref.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
      CHECK((product_symbol(Herm2(a), Herm2(at), Herm2(ax), df).matrix() - ref).cwiseAbs().maxCoeff() < 1e-14);
    }
  }

  TEST_CASE("speed bound examples") {
    CHECK(speed_bound(FiniteDirac(1, 2)) == 1.0);
    CHECK(speed_bound(FiniteDirac(0, 1)) == 1.0);
    CHECK(speed_bound(FiniteDirac(-3, 3)) == 6.0);
  }

  TEST_CASE("longitude gap uses the short arc") {
    CHECK(longitude_gap(0.1, -0.1) == Approx(0.2));
    CHECK(longitude_gap(3.0, -3.0) == Approx(2 * kPi - 6.0));
    CHECK(longitude_gap(0, kPi) == Approx(kPi));
  }

  TEST_CASE("causally related examples") {
    const FiniteDirac df(1, 2);
    const ProductState w = ps({0, 0}, 0, 0);
    CHECK(causally_related(w, w, df).related());
    const CausalVerdict ok = causally_related(w, ps({2, 0}, 0, 1.5), df);
    CHECK(ok.related());
    CHECK(ok.conditions.speed_margin() == Approx(0.5));
    const CausalVerdict fast = causally_related(w, ps({2, 0}, 0, kPi), df);
    REQUIRE_FALSE(fast.related());
    CHECK(*fast.reason == NotRelatedReason::SpeedLimitExceeded);
    const CausalVerdict lat = causally_related(w, ps({2, 0}, 0.4, 0), df);
    CHECK(*lat.reason == NotRelatedReason::LatitudeMismatch);
    const CausalVerdict base = causally_related(w, ps({1, 2}, 0, 0), df);
    CHECK(*base.reason == NotRelatedReason::BaseNotCausal);
    CHECK(to_string(NotRelatedReason::LatitudeMismatch).find("Latitude") != std::string_view::npos);
  }

  TEST_CASE("poles have no longitude constraint") {
    const FiniteDirac df(0, 1);
    const ProductState n1{{0, 0}, make_state(1, 0)}, n2{{0.5, 0.2}, make_state(cplx(0, 1), 0)};
    const CausalVerdict v = causally_related(n1, n2, df);
    CHECK(v.related());
    CHECK(v.conditions.pole);
    CHECK_FALSE(causally_related(n1, {{1, 0}, make_state(0, 1)}, df).related());
  }

  TEST_CASE("reachable longitude examples") {
    const FiniteDirac df(0, 1);
    const ProductState w = ps({0, 0}, 0.2, 0.5);
    CHECK(reachable_longitudes(w, {1, 3}, df).kind == LongitudeArc::Kind::Empty);
    const LongitudeArc full = reachable_longitudes(w, {kPi, 0}, df);
    CHECK(full.kind == LongitudeArc::Kind::FullCircle);
    CHECK(full.half_width == Approx(kPi));
    const LongitudeArc point = reachable_longitudes(w, {1, 1}, df);
    CHECK(point.kind == LongitudeArc::Kind::Arc);
    CHECK(point.half_width == 0.0);
    CHECK(point.contains(0.5));
    CHECK_FALSE(point.contains(0.5 + 1e-6));
    const LongitudeArc arc = reachable_longitudes(w, {2, 0}, df);
    CHECK(arc.half_width == Approx(2.0));
    CHECK(arc.contains(2.4));
    CHECK(arc.contains(-1.4));
    CHECK_FALSE(arc.contains(2.6));
    try {
      reachable_longitudes({{0, 0}, make_state(1, 0)}, {1, 0}, df);
      FAIL("expected PoleState");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PoleState);
    }
  }

  TEST_CASE("reachable arc agrees with the predicate") {
    sampling::Rng rng(13);
    const FiniteDirac df(0, 1.5);
    for (int k = 0; k < 300; ++k) {
      const ProductState w = ps(sampling::event(rng), sampling::uniform(rng, -0.9, 0.9), sampling::uniform(rng, -3, 3));
      const Event q = sampling::event(rng);
      const double th = sampling::uniform(rng, -kPi, kPi);
      const LongitudeArc arc = reachable_longitudes(w, q, df);
      const CausalVerdict v = causally_related(w, {q, state_from_bloch(latitude(w.internal), th)}, df);
      if (v.conditions.base_causal && std::abs(v.conditions.speed_margin()) < 1e-9) continue;
      CHECK(arc.contains(th) == v.related());
    }
  }

  TEST_CASE("product segments") {
    const FiniteDirac df(0, 1);
    const std::vector<ProductVertex> ok = {{{0, 0}, 0}, {{1, 0}, 1}, {{2, 0.5}, 1.5}};
    CHECK(first_invalid_product_segment(ok, df) == -1);
    const std::vector<ProductVertex> fast = {{{0, 0}, 0}, {{1, 0}, 1.1}};
    CHECK(first_invalid_product_segment(fast, df) == 0);
    CHECK(first_invalid_product_segment(fast, df, 0.2) == -1);
    const std::vector<ProductVertex> back = {{{0, 0}, 0}, {{1, 0}, 0}, {{0.5, 0}, 0}};
    CHECK(first_invalid_product_segment(back, df) == 1);
  }

  TEST_CASE("curve oracle examples") {
    const FiniteDirac df(1, 2);
    const ProductState w = ps({0, 0}, 0, 0);
    CHECK(curve_oracle(w, w, df, 4));
    CHECK_FALSE(curve_oracle(w, ps({2, 0}, 0, kPi), df, 4));
    CHECK_FALSE(curve_oracle(w, ps({2, 0}, 0.3, 0), df, 4));
    CHECK_FALSE(curve_oracle(w, ps({1, 2}, 0, 0), df, 4));
    CHECK(curve_oracle(w, ps({2, 0}, 0, 2.0), df, 4));
    CHECK(curve_oracle(w, ps({5, 3}, 0, -4.0), df, 6));
  }

  TEST_CASE("predicate matches the curve oracle on random pairs") {
    sampling::Rng rng(14);
    const FiniteDirac df(0.5, -0.25);
    int related = 0;
    for (int k = 0; k < 200; ++k) {
      const auto [p, q] = sampling::timelike_pair(rng, 2.0);
      const double z = sampling::uniform(rng, -0.9, 0.9), th = sampling::uniform(rng, -kPi, kPi);
      const double shift = sampling::uniform(rng, -1.5, 1.5) * df.gap() * lorentzian_distance(p, q);
      const ProductState a = ps(p, z, th), b = ps(q, z, th + shift);
      const CausalVerdict v = causally_related(a, b, df);
      if (std::abs(v.conditions.speed_margin()) < 1e-3) continue;
      related += v.related();
      CHECK(v.related() == curve_oracle(a, b, df, 4));
    }
    CHECK(related > 20);
  }
}
