#include "nccausal/error.hpp"
#include "nccausal/sampling.hpp"
#include "nccausal/separating_search.hpp"

#include <doctest.h>

#include <cmath>

using namespace nccausal;
using doctest::Approx;

namespace {

ProductState ps(Event e, double z, double theta) { return {e, state_from_bloch(z, theta)}; }

SearchResult run(const ProductState& a, const ProductState& b, const FiniteDirac& df, std::uint64_t seed = 42) {
  SearchOptions opts;
  opts.seed = seed;
  return separating_element_search(a, b, df, Dictionary::standard(a.event, b.event), search_grid(a.event, b.event),
                                   opts);
}

}  // namespace

TEST_SUITE("separating_search") {
  TEST_CASE("profiles have consistent gradients") {
    const Dictionary d = Dictionary::standard({0, 0}, {1, 0.3});
    const double h = 1e-6;
    for (const auto& e : d.entries()) {
      const Event at{0.37, -0.21};
      const Gradient g = e.profile.gradient(at);
      const double dt = (e.profile.value({at.t + h, at.x}) - e.profile.value({at.t - h, at.x})) / (2 * h);
      const double dx = (e.profile.value({at.t, at.x + h}) - e.profile.value({at.t, at.x - h})) / (2 * h);
      CHECK(g.dt == Approx(dt).epsilon(1e-6).scale(1.0));
      CHECK(g.dx == Approx(dx).epsilon(1e-6).scale(1.0));
    }
  }

  TEST_CASE("standard dictionary layout") {
    const Dictionary d = Dictionary::standard({0, 0}, {2, 1});
    CHECK(d.size() == 24);
    REQUIRE(d.time_function_index() >= 0);
    const auto& tf = d.entries()[d.time_function_index()];
    CHECK(tf.generator == Generator::Identity);
    CHECK(tf.profile.kind == Profile::Kind::BoostedTanh);
    CHECK(tf.profile.beta == 0.0);
    for (const auto& e : d.entries())
      if (e.generator == Generator::SigmaX || e.generator == Generator::SigmaY)
        CHECK(e.profile.kind == Profile::Kind::Bump);
    CHECK_THROWS_AS(Dictionary({}), Error);
  }

  TEST_CASE("element derivatives and symbol") {
    const Dictionary d = Dictionary::standard({0, 0}, {1, 0});
    std::vector<double> c(d.size(), 0.0);
    c[d.time_function_index()] = 1.0;
    const CausalElement el(d, c);
    const FiniteDirac df(0, 1);
    const Event e{0.5, 0.1};
    const double slope = el.d_dt(e)(0, 0).real();
    CHECK(slope > 0.0);
    const Herm4 s = el.symbol(e, df);
    CHECK((s.matrix() + slope * Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(el.max_symbol_eigenvalue(search_grid({0, 0}, {1, 0}), df) < 0.0);
  }

  // omega2(a) < omega1(a) needs a = +sigma_z when the first latitude is higher.
  TEST_CASE("latitude mismatch yields a constant sigma_z witness") {
    const FiniteDirac df(0, 1);
    const ProductState a = ps({0, 0}, 0.5, 0.3), b = ps({1, 0.2}, -0.2, 1.0);
    const SearchResult r = run(a, b, df);
    REQUIRE(r.witness.has_value());
    CHECK(r.verified);
    CHECK(r.objective < -1e-6);
    CHECK(r.witness->evaluate(b) - r.witness->evaluate(a) == Approx(r.objective));
    // The leading coefficient sits on the constant sigma_z entry.
    const auto& coeffs = r.witness->coefficients();
    const auto& entries = r.witness->dictionary().entries();
    std::size_t lead = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (std::abs(coeffs[k]) > std::abs(coeffs[lead])) lead = k;
    CHECK(entries[lead].profile.kind == Profile::Kind::Constant);
    CHECK(entries[lead].generator == Generator::SigmaZ);
    CHECK(coeffs[lead] > 0.0);
  }

  TEST_CASE("spacelike pair yields a scalar causal witness") {
    const FiniteDirac df(0, 1);
    const SearchResult r = run(ps({0, 0}, 0.1, 0.2), ps({0.3, 1.0}, 0.1, 0.2), df);
    REQUIRE(r.witness.has_value());
    CHECK(r.verified);
    CHECK(r.max_eigenvalue <= 1e-12);
  }

  TEST_CASE("past-directed pair is separated") {
    const FiniteDirac df(0, 1);
    CHECK(run(ps({1, 0}, 0, 0), ps({0, 0}, 0, 0), df).witness.has_value());
  }

  TEST_CASE("related pairs have no witness") {
    const FiniteDirac df(0, 1);
    CHECK_FALSE(run(ps({0, 0}, 0, 0), ps({2, 0.5}, 0, 1.5), df).witness.has_value());
    CHECK_FALSE(run(ps({0, 0}, 0.4, 1), ps({1, 0}, 0.4, 1), df).witness.has_value());
    CHECK_FALSE(run(ps({0, 0}, 0.4, 1), ps({0, 0}, 0.4, 1), df).witness.has_value());
  }

  TEST_CASE("witnesses are re-verified on the refined grid") {
    const FiniteDirac df(0, 1);
    const ProductState a = ps({0, 0}, 0, 0), b = ps({0.5, 1.5}, 0, 0);
    const Grid2D g = search_grid(a.event, b.event);
    const SearchResult r = run(a, b, df);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->max_symbol_eigenvalue(g.refined(2), df) <= 1e-12);
    for (int f : {4, 8, 16}) CHECK(r.witness->max_symbol_eigenvalue(g.refined(f), df) <= 1e-9);
  }

  TEST_CASE("search is deterministic for a seed") {
    const FiniteDirac df(0, 1);
    const ProductState a = ps({0, 0}, 0, 0), b = ps({1, 2}, 0, 0);
    const SearchResult r1 = run(a, b, df, 5), r2 = run(a, b, df, 5);
    REQUIRE(r1.witness.has_value());
    REQUIRE(r2.witness.has_value());
    CHECK(r1.witness->coefficients() == r2.witness->coefficients());
  }

  TEST_CASE("grid too small") {
    const FiniteDirac df(0, 1);
    const ProductState a = ps({0, 0}, 0, 0), b = ps({1, 0}, 0, 0);
    try {
      separating_element_search(a, b, df, Dictionary::standard(a.event, b.event), Grid2D{-0.5, 1.5, -0.5, 0.5, 5, 5});
      FAIL("expected GridTooSmall");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::GridTooSmall);
    }
  }
}
