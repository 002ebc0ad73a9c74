#include "nccausal/verify.hpp"

#include "nccausal/clifford.hpp"
#include "nccausal/error.hpp"
#include "nccausal/sampling.hpp"
#include "nccausal/separating_search.hpp"
#include "nccausal/symbol_kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace nccausal {

namespace {

using sampling::Rng;
using sampling::uniform;
constexpr double kPi = std::numbers::pi;

class Tally {
 public:
  Tally(std::string suite, std::string name) { r_.suite = std::move(suite), r_.name = std::move(name); }

  void check(bool ok, double err = 0.0) {
    ++r_.checked;
    if (!ok) ++r_.violations;
    if (std::isfinite(err)) r_.max_error = std::max(r_.max_error, err);
  }

  InvariantResult result() const { return r_; }

 private:
  InvariantResult r_;
};

double max_abs(const Eigen::Matrix2cd& m) { return m.cwiseAbs().maxCoeff(); }

// Product state reached from w by a random base step and a same-parallel
// longitude shift of up to 1.5 times the speed bound, or an unrelated state.
ProductState step_from(Rng& rng, const ProductState& w, const FiniteDirac& df) {
  const double kind = uniform(rng, 0.0, 1.0);
  Event q;
  if (kind < 0.6) {
    const double dt = uniform(rng, 0.0, 2.0);
    q = {w.event.t + dt, w.event.x + uniform(rng, -1.0, 1.0) * dt};
  } else if (kind < 0.75) {
    const double dt = uniform(rng, 0.0, 2.0);
    q = {w.event.t + dt, w.event.x + (uniform(rng, 0.0, 1.0) < 0.5 ? -dt : dt)};
  } else {
    q = sampling::event(rng);
  }
  const double mode = uniform(rng, 0.0, 1.0);
  if (mode < 0.15 || is_pole(w.internal)) return {q, w.internal};
  if (mode < 0.25) {
    const std::array<double, 3> lats = {-0.5, 0.0, 0.5};
    return {q, sampling::state_on(rng, lats)};
  }
  const double reach = speed_bound(df) * lorentzian_distance(w.event, q);
  const double shift = uniform(rng, -1.5, 1.5) * reach;
  return {q, state_from_bloch(latitude(w.internal), longitude(w.internal) + shift)};
}

std::vector<InvariantResult> clifford_suite(Rng& rng) {
  std::vector<InvariantResult> out;
  const auto& b = standard_basis();
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  {
    Tally t("clifford", "basis_identities");
    const std::array<const Eigen::Matrix2cd*, 2> g = {&b.gamma0, &b.gamma1};
    const double eta[2] = {-1.0, 1.0};
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c) {
        const double err = max_abs(*g[a] * *g[c] + *g[c] * *g[a] - (a == c ? 2.0 * eta[a] : 0.0) * id);
        t.check(err <= 1e-14, err);
      }
    for (double err : {max_abs(b.J * b.J - id), max_abs(b.J.adjoint() - b.J),
                       max_abs(b.J * b.gammaM + b.gammaM * b.J),
                       max_abs(b.gamma0.adjoint() + b.J * b.gamma0 * b.J),
                       max_abs(b.gamma1.adjoint() + b.J * b.gamma1 * b.J)})
      t.check(err <= 1e-14, err);
    out.push_back(t.result());
  }
  {
    Tally tc("clifford", "causal_symbol_spectrum");
    Tally ts("clifford", "steep_symbol_spectrum");
    Tally tl("clifford", "causal_symbol_linearity");
    for (int i = 0; i < 1000; ++i) {
      const double a = uniform(rng, -5, 5), c = uniform(rng, -5, 5);
      const auto ec = causal_symbol(a, c).eigenvalues();
      const double errc = std::max(std::abs(ec[0] - (-a - std::abs(c))), std::abs(ec[1] - (-a + std::abs(c))));
      tc.check(errc <= 1e-12, errc);
      const auto es = steep_symbol(a, c).eigenvalues();
      const double r = std::sqrt(1.0 + c * c);
      const double errs = std::max(std::abs(es[0] - (-a - r)), std::abs(es[1] - (-a + r)));
      ts.check(errs <= 1e-12, errs);
      const double lam = uniform(rng, -3, 3), a2 = uniform(rng, -5, 5), c2 = uniform(rng, -5, 5);
      const double errl = max_abs(causal_symbol(lam * a + a2, lam * c + c2).matrix() -
                                  (causal_symbol(a, c) * lam + causal_symbol(a2, c2)).matrix());
      tl.check(errl <= 1e-12, errl);
    }
    out.push_back(tc.result());
    out.push_back(ts.result());
    out.push_back(tl.result());
  }
  {
    Tally t("clifford", "simd_kernel_matches_reference");
    const std::size_t n = 4099;
    std::vector<double> dft(n), dfx(n), ref(n), fast(n);
    for (std::size_t i = 0; i < n; ++i) {
      dft[i] = uniform(rng, -10, 10);
      dfx[i] = uniform(rng, -10, 10);
    }
    for (auto kind : {kernels::SymbolKind::Causal, kernels::SymbolKind::Steep}) {
      kernels::max_eigenvalues(kernels::Isa::Scalar, kind, dft, dfx, ref);
      kernels::max_eigenvalues(kernels::active_isa(), kind, dft, dfx, fast);
      for (std::size_t i = 0; i < n; ++i) {
        const Herm2 m = kind == kernels::SymbolKind::Causal ? causal_symbol(dft[i], dfx[i])
                                                            : steep_symbol(dft[i], dfx[i]);
        const double err = std::max(std::abs(ref[i] - fast[i]), std::abs(ref[i] - m.max_eigenvalue()));
        t.check(err <= 1e-12, err);
      }
    }
    out.push_back(t.result());
  }
  return out;
}

std::vector<InvariantResult> finite_suite(const Scene& scene, Rng& rng) {
  std::vector<InvariantResult> out;
  const FiniteDirac& df = scene.dirac;
  const OptimizerOptions& opts = scene.optimizer;
  auto dist = [&](const InternalState& a, const InternalState& b) {
    return spectral_distance(df, a, b, opts).value();
  };
  {
    Tally t("finite", "distance_symmetric_and_triangle");
    for (int i = 0; i < 30; ++i) {
      const double z = uniform(rng, -0.95, 0.95);
      const auto a = state_from_bloch(z, uniform(rng, -kPi, kPi));
      const auto b = state_from_bloch(z, uniform(rng, -kPi, kPi));
      const auto c = state_from_bloch(z, uniform(rng, -kPi, kPi));
      const double ab = dist(a, b), ba = dist(b, a), bc = dist(b, c), ac = dist(a, c);
      t.check(std::abs(ab - ba) <= 1e-6, std::abs(ab - ba));
      t.check(ac <= ab + bc + 1e-6, std::max(0.0, ac - ab - bc));
    }
    out.push_back(t.result());
  }
  {
    Tally t("finite", "longitude_shift_invariance");
    for (int i = 0; i < 30; ++i) {
      const double z = uniform(rng, -0.95, 0.95);
      const double t1 = uniform(rng, -kPi, kPi), t2 = uniform(rng, -kPi, kPi), delta = uniform(rng, -kPi, kPi);
      const double d0 = dist(state_from_bloch(z, t1), state_from_bloch(z, t2));
      const double d1 = dist(state_from_bloch(z, t1 + delta), state_from_bloch(z, t2 + delta));
      t.check(std::abs(d0 - d1) <= 1e-6, std::abs(d0 - d1));
    }
    out.push_back(t.result());
  }
  {
    Tally t("finite", "commutator_norm_formula");
    for (int i = 0; i < 1000; ++i) {
      Eigen::Matrix2cd m;
      const cplx off(uniform(rng, -2, 2), uniform(rng, -2, 2));
      m << uniform(rng, -2, 2), off, std::conj(off), uniform(rng, -2, 2);
      const double err = std::abs(commutator_norm(df, Herm2(m)) - df.gap() * std::abs(off));
      t.check(err <= 1e-12, err);
    }
    out.push_back(t.result());
  }
  {
    Tally t("finite", "optimizer_matches_closed_form");
    for (int i = 0; i < 100; ++i) {
      const double z = uniform(rng, -0.99, 0.99);
      const auto a = state_from_bloch(z, uniform(rng, -kPi, kPi));
      const auto b = state_from_bloch(z, uniform(rng, -kPi, kPi));
      const double err = std::abs(dist(a, b) - parallel_distance(df, a, b));
      t.check(err <= 1e-6, err);
    }
    out.push_back(t.result());
  }
  {
    Tally t("finite", "cross_latitude_diverges");
    const DiracMatrix d(df);
    for (int i = 0; i < 50; ++i) {
      const auto a = sampling::state(rng);
      auto b = sampling::state(rng);
      while (std::abs(latitude(a) - latitude(b)) <= 1e-6) b = sampling::state(rng);
      const bool inf = spectral_distance(df, a, b, opts).is_infinite();
      const DivergenceProbe probe = divergence_probe(d, a, b, opts);
      t.check(inf && probe.exceeded, probe.objective);
    }
    out.push_back(t.result());
  }
  {
    Tally t("finite", "unitary_rotation_invariance");
    for (int i = 0; i < 20; ++i) {
      const double z = uniform(rng, -0.9, 0.9);
      const auto a = state_from_bloch(z, uniform(rng, -kPi, kPi));
      const auto b = state_from_bloch(z, uniform(rng, -kPi, kPi));
      const ConjugatedDirac cd = unitary_conjugate(df, sampling::unitary(rng));
      const DistanceResult rotated = spectral_distance(cd.dirac, cd.map(a), cd.map(b), opts);
      const double err = rotated.is_infinite() ? INFINITY : std::abs(rotated.value() - dist(a, b));
      t.check(err <= 1e-6, err);
    }
    out.push_back(t.result());
  }
  return out;
}

ScalarField field_of(double (*f)(double, double), Gradient (*g)(double, double)) {
  return {[f](const Event& e) { return f(e.t, e.x); }, [g](const Event& e) { return g(e.t, e.x); }};
}

std::vector<ScalarField> causal_fields() {
  return {
      field_of([](double t, double) { return t; }, [](double, double) { return Gradient{1.0, 0.0}; }),
      field_of([](double t, double) { return std::atan(t); },
               [](double t, double) { return Gradient{1.0 / (1.0 + t * t), 0.0}; }),
      field_of([](double t, double x) { return std::tanh(t + x); },
               [](double t, double x) {
                 const double c = std::cosh(t + x);
                 return Gradient{1.0 / (c * c), 1.0 / (c * c)};
               }),
      field_of([](double t, double x) { return t + 0.5 * std::tanh(x); },
               [](double, double x) {
                 const double c = std::cosh(x);
                 return Gradient{1.0, 0.5 / (c * c)};
               }),
  };
}

std::vector<InvariantResult> spacetime_suite(const Scene& scene, Rng& rng) {
  std::vector<InvariantResult> out;
  auto lattice = [&] {
    return Event{std::round(uniform(rng, -3.5, 3.5)), std::round(uniform(rng, -3.5, 3.5))};
  };
  {
    Tally t("spacetime", "causal_order_is_partial_order");
    for (int i = 0; i < 1000; ++i) {
      const Event p = lattice(), q = lattice(), r = lattice();
      t.check(causally_precedes(p, p));
      if (causally_precedes(p, q) && causally_precedes(q, p)) t.check(p == q);
      if (causally_precedes(p, q) && causally_precedes(q, r)) t.check(causally_precedes(p, r));
    }
    out.push_back(t.result());
  }
  {
    Tally t("spacetime", "reverse_triangle_inequality");
    for (int i = 0; i < 1000; ++i) {
      const auto [p, q] = sampling::timelike_pair(rng);
      const double dt = uniform(rng, 1e-3, 3.0);
      const Event r{q.t + dt, q.x + uniform(rng, -0.95, 0.95) * dt};
      const double lhs = lorentzian_distance(p, r);
      const double rhs = lorentzian_distance(p, q) + lorentzian_distance(q, r);
      t.check(lhs >= rhs - 1e-12, std::max(0.0, rhs - lhs));
    }
    out.push_back(t.result());
  }
  {
    Tally t("spacetime", "distance_antisymmetry");
    for (int i = 0; i < 1000; ++i) {
      const Event p = sampling::event(rng), q = sampling::event(rng);
      t.check(lorentzian_distance(p, p) == 0.0);
      if (lorentzian_distance(p, q) > 0.0) t.check(lorentzian_distance(q, p) == 0.0);
    }
    out.push_back(t.result());
  }
  const Grid2D grid{scene.grid.t_min, scene.grid.t_max, scene.grid.x_min, scene.grid.x_max, 41, 41};
  {
    Tally t("spacetime", "causal_functions_form_convex_cone");
    const auto fields = causal_fields();
    for (std::size_t i = 0; i < fields.size(); ++i) {
      t.check(is_causal_function(fields[i], grid));
      for (std::size_t j = 0; j < fields.size(); ++j) {
        const double lam = uniform(rng, 0.0, 5.0);
        const ScalarField &f = fields[i], &g = fields[j];
        const ScalarField sum{[=](const Event& e) { return lam * f.value(e) + g.value(e); },
                              [=](const Event& e) {
                                const Gradient a = f.gradient(e), b = g.gradient(e);
                                return Gradient{lam * a.dt + b.dt, lam * a.dx + b.dx};
                              }};
        const FunctionCheck c = check_causal_function(sum, grid);
        t.check(c.holds, std::max(0.0, c.worst_eigenvalue));
      }
    }
    out.push_back(t.result());
  }
  {
    Tally t("spacetime", "max_proper_time_below_distance");
    for (int i = 0; i < 20; ++i) {
      const auto [p, q] = sampling::timelike_pair(rng);
      const double d = lorentzian_distance(p, q);
      double prev_gap = INFINITY;
      for (int n : {1, 2, 4, 8}) {
        const double v = max_proper_time(p, q, n, {rng(), 4, 400, 1e-13});
        const double gap = d - v;
        t.check(v <= d + 1e-9 && gap <= prev_gap + 1e-9, std::abs(gap));
        prev_gap = gap;
      }
    }
    out.push_back(t.result());
  }
  {
    Tally t("spacetime", "functional_equals_distance");
    for (int i = 0; i < 100; ++i) {
      const auto [p, q] = sampling::timelike_pair(rng);
      const double err = std::abs(lorentz_distance_functional(p, q) - lorentzian_distance(p, q));
      t.check(err <= 1e-9, err);
      const auto [a, b] = sampling::spacelike_pair(rng);
      const double v = lorentz_distance_functional(a, b);
      t.check(v == 0.0, v);
    }
    out.push_back(t.result());
  }
  {
    Tally t("spacetime", "matrix_and_scalar_predicates_agree");
    const std::size_t n = 10000;
    std::vector<double> dft(n), dfx(n), lam(n);
    for (std::size_t i = 0; i < n; ++i) {
      dft[i] = uniform(rng, -5, 5);
      dfx[i] = uniform(rng, -5, 5);
    }
    kernels::max_eigenvalues(kernels::SymbolKind::Causal, dft, dfx, lam);
    for (std::size_t i = 0; i < n; ++i) t.check((lam[i] <= 0.0) == (dft[i] >= std::abs(dfx[i])));
    kernels::max_eigenvalues(kernels::SymbolKind::Steep, dft, dfx, lam);
    for (std::size_t i = 0; i < n; ++i)
      t.check((lam[i] <= 0.0) == (dft[i] >= std::sqrt(1.0 + dfx[i] * dfx[i])));
    for (const auto& f : causal_fields()) {
      const FunctionCheck c = check_causal_function(f, grid);
      const FunctionCheck s = check_steep_function(f, grid);
      t.check(c.predicate_disagreements == 0 && s.predicate_disagreements == 0);
    }
    out.push_back(t.result());
  }
  return out;
}

std::vector<InvariantResult> product_suite(const Scene& scene, Rng& rng) {
  std::vector<InvariantResult> out;
  const FiniteDirac& df = scene.dirac;
  const std::array<double, 4> lats = {-0.5, 0.0, 0.5, 1.0};
  auto related = [&](const ProductState& a, const ProductState& b) { return causally_related(a, b, df).related(); };
  {
    Tally t("product", "causal_relation_is_partial_order");
    for (int i = 0; i < 1000; ++i) {
      const ProductState a = sampling::product_state(rng, lats);
      const ProductState b = step_from(rng, a, df);
      const ProductState c = step_from(rng, b, df);
      t.check(related(a, a));
      if (related(a, b) && related(b, a))
        t.check(a.event == b.event && same_state(a.internal, b.internal, 1e-9));
      if (related(a, b) && related(b, c)) t.check(related(a, c));
    }
    out.push_back(t.result());
  }
  {
    Tally t("product", "agrees_with_curve_oracle");
    for (int i = 0; i < 200; ++i) {
      const ProductState a = sampling::product_state(rng, lats);
      const ProductState b = step_from(rng, a, df);
      const CausalVerdict v = causally_related(a, b, df);
      if (v.conditions.base_causal && std::abs(v.conditions.speed_margin()) < 1e-3) continue;
      t.check(v.related() == curve_oracle(a, b, df, 4));
    }
    out.push_back(t.result());
  }
  {
    Tally t("product", "restricts_to_spacetime_order");
    for (int i = 0; i < 1000; ++i) {
      const ProductState a = sampling::product_state(rng, lats);
      const ProductState b{sampling::event(rng), a.internal};
      t.check(related(a, b) == causally_precedes(a.event, b.event));
    }
    out.push_back(t.result());
  }
  {
    Tally t("product", "lightlike_rigidity");
    for (int i = 0; i < 100; ++i) {
      const auto [p, q] = sampling::null_pair(rng);
      const double z = uniform(rng, -0.9, 0.9), th = uniform(rng, -kPi, kPi);
      const InternalState s = state_from_bloch(z, th);
      const InternalState other = i % 2 == 0 ? s : state_from_bloch(z, th + uniform(rng, 0.01, 3.0));
      t.check(related({p, s}, {q, other}) == same_state(s, other, 1e-9));
    }
    out.push_back(t.result());
  }
  {
    Tally t("product", "cone_elements_are_monotone");
    int pairs = 0;
    while (pairs < 10) {
      const ProductState a = sampling::product_state(rng, lats, 1.5);
      const ProductState b = step_from(rng, a, df);
      if (!related(a, b) || a.event == b.event) continue;
      ++pairs;
      const Dictionary dict = Dictionary::standard(a.event, b.event);
      const Grid2D g = search_grid(a.event, b.event, 2.0, 9);
      for (std::size_t k = 0; k < dict.size(); ++k) {
        for (double sign : {1.0, -1.0}) {
          std::vector<double> c(dict.size(), 0.0);
          c[k] = sign;
          const CausalElement el(dict, c);
          if (el.max_symbol_eigenvalue(g, df) > 1e-12) continue;
          const double err = el.evaluate(a) - el.evaluate(b);
          t.check(err <= 1e-9, std::max(0.0, err));
        }
      }
    }
    out.push_back(t.result());
  }
  {
    Tally t("product", "scalar_symbol_doubles_spectrum");
    for (int i = 0; i < 500; ++i) {
      const double f = uniform(rng, -3, 3), ft = uniform(rng, -3, 3), fx = uniform(rng, -3, 3);
      const auto ev = product_symbol(Herm2::diagonal(f, f), Herm2::diagonal(ft, ft), Herm2::diagonal(fx, fx), df)
                          .eigenvalues();
      const auto e2 = causal_symbol(ft, fx).eigenvalues();
      double err = 0.0;
      for (int j = 0; j < 4; ++j) err = std::max(err, std::abs(ev[j] - e2[j / 2]));
      t.check(err <= 1e-12, err);
    }
    out.push_back(t.result());
  }
  {
    Tally t("product", "separating_elements");
    const SearchOptions sopts{rng(), {1e1, 1e3, 1e5}, 30, 1, 1.0, 1e-12, 1e-6, 2};
    for (int i = 0; i < 3; ++i) {
      const double z1 = uniform(rng, -0.9, 0.9);
      const double z2 = z1 + (z1 > 0 ? -1.0 : 1.0) * uniform(rng, 0.05, 0.5);
      const auto [p, q] = sampling::timelike_pair(rng);
      const ProductState a{p, state_from_bloch(z1, 0.3)}, b{q, state_from_bloch(z2, 0.3)};
      t.check(separating_element_search(a, b, df, Dictionary::standard(p, q), search_grid(p, q), sopts)
                  .witness.has_value());
      const auto [r, s] = sampling::spacelike_pair(rng);
      const InternalState st = state_from_bloch(z1, 1.0);
      t.check(separating_element_search({r, st}, {s, st}, df, Dictionary::standard(r, s), search_grid(r, s), sopts)
                  .witness.has_value());
      t.check(!separating_element_search({p, st}, {q, st}, df, Dictionary::standard(p, q), search_grid(p, q), sopts)
                   .witness.has_value());
    }
    out.push_back(t.result());
  }
  return out;
}

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
  if (name == "all") return Suite::All;
  if (name == "clifford") return Suite::Clifford;
  if (name == "finite") return Suite::Finite;
  if (name == "spacetime") return Suite::Spacetime;
  if (name == "product") return Suite::Product;
  return std::nullopt;
}

std::string_view to_string(Suite s) noexcept {
  switch (s) {
    case Suite::All: return "all";
    case Suite::Clifford: return "clifford";
    case Suite::Finite: return "finite";
    case Suite::Spacetime: return "spacetime";
    case Suite::Product: return "product";
  }
  return "all";
}

std::vector<InvariantResult> run_invariants(const Scene& scene, Suite suite, std::uint64_t seed) {
  std::vector<InvariantResult> out;
  auto append = [&out](std::vector<InvariantResult> r) { out.insert(out.end(), r.begin(), r.end()); };
  // Each suite gets its own stream so filtering does not change the samples.
  if (suite == Suite::All || suite == Suite::Clifford) {
    Rng rng(seed);
    append(clifford_suite(rng));
  }
  if (suite == Suite::All || suite == Suite::Finite) {
    Rng rng(seed + 1);
    append(finite_suite(scene, rng));
  }
  if (suite == Suite::All || suite == Suite::Spacetime) {
    Rng rng(seed + 2);
    append(spacetime_suite(scene, rng));
  }
  if (suite == Suite::All || suite == Suite::Product) {
    Rng rng(seed + 3);
    append(product_suite(scene, rng));
  }
  return out;
}

void write_invariant_csv(std::ostream& out, const std::vector<InvariantResult>& results) {
  out << "suite,invariant,checked,violations,max_error,passed\n";
  for (const auto& r : results)
    out << r.suite << ',' << r.name << ',' << r.checked << ',' << r.violations << ','
        << format_double(r.max_error) << ',' << (r.passed() ? 1 : 0) << '\n';
}

}  // namespace nccausal
