#include "nccausal/commands.hpp"

#include "nccausal/product_causality.hpp"

#include <cmath>

namespace nccausal {

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::UnknownState:
    case ErrorKind::InvalidDirac:
    case ErrorKind::InvalidArgument:
    case ErrorKind::PoleState:
    case ErrorKind::NotHermitian:
    case ErrorKind::NotUnitary:
    case ErrorKind::ZeroVector:
    case ErrorKind::GridTooSmall:
      return exit_code::kUsage;
    default:
      return exit_code::kInternal;
  }
}

int cmd_check(const Scene& scene, const std::string& name1, const std::string& name2, std::ostream& out) {
  const ProductState& w1 = scene.state(name1);
  const ProductState& w2 = scene.state(name2);
  const CausalVerdict v = causally_related(w1, w2, scene.dirac);
  const CausalConditions& c = v.conditions;
  out << "pair: " << name1 << " -> " << name2 << '\n';
  out << "base_causal: " << (c.base_causal ? "yes" : "no") << " (proper_time " << format_double(c.proper_time)
      << ")\n";
  out << "latitudes: " << format_double(c.latitude1) << ' ' << format_double(c.latitude2) << '\n';
  if (c.pole)
    out << "longitude: pole state, no constraint\n";
  else
    out << "dtheta_min: " << format_double(c.dtheta_min) << " bound " << format_double(c.speed_bound) << '\n';
  out << "speed_margin " << (c.speed_margin() >= 0.0 ? ">= 0" : "< 0") << ": " << format_double(c.speed_margin())
      << '\n';
  if (v.related()) {
    out << "verdict: Related\n";
    return exit_code::kOk;
  }
  out << "verdict: NotRelated\n";
  switch (*v.reason) {
    case NotRelatedReason::BaseNotCausal:
      out << "reason: base events are not causally ordered\n";
      break;
    case NotRelatedReason::LatitudeMismatch:
      out << "reason: latitude differs (no finite-speed path between parallels)\n";
      break;
    case NotRelatedReason::SpeedLimitExceeded:
      out << "reason: longitude change exceeds the speed bound\n";
      break;
  }
  return exit_code::kNotRelated;
}

std::optional<DistanceKind> parse_distance_kind(std::string_view s) {
  if (s == "internal") return DistanceKind::Internal;
  if (s == "lorentzian") return DistanceKind::Lorentzian;
  if (s == "functional") return DistanceKind::Functional;
  return std::nullopt;
}

std::string_view to_string(DistanceKind k) noexcept {
  switch (k) {
    case DistanceKind::Internal: return "internal";
    case DistanceKind::Lorentzian: return "lorentzian";
    case DistanceKind::Functional: return "functional";
  }
  return "internal";
}

namespace {

double distance_value(const Scene& scene, DistanceKind kind, const ProductState& w1, const ProductState& w2) {
  switch (kind) {
    case DistanceKind::Internal: {
      const DistanceResult r = spectral_distance(scene.dirac, w1.internal, w2.internal, scene.optimizer);
      return r.is_infinite() ? INFINITY : r.value();
    }
    case DistanceKind::Lorentzian:
      return lorentzian_distance(w1.event, w2.event);
    case DistanceKind::Functional:
      return lorentz_distance_functional(w1.event, w2.event);
  }
  return NAN;
}

}  // namespace

void report_distance(const Scene& scene, DistanceKind kind, const ProductState& w1, const ProductState& w2,
                     std::ostream& out) {
  const double v = distance_value(scene, kind, w1, w2);
  out << to_string(kind) << ": " << (std::isinf(v) ? std::string("infinite") : format_double(v)) << '\n';
  if (kind == DistanceKind::Functional) {
    const double exact = lorentzian_distance(w1.event, w2.event);
    out << "lorentzian: " << format_double(exact) << '\n';
    out << "gap: " << format_double(std::abs(v - exact)) << '\n';
  }
}

int cmd_distance(const Scene& scene, DistanceKind kind, const std::string& name1, const std::string& name2,
                 std::ostream& out) {
  report_distance(scene, kind, scene.state(name1), scene.state(name2), out);
  return exit_code::kOk;
}

void write_distance_table(const Scene& scene, const std::vector<DistanceKind>& kinds, std::ostream& csv) {
  csv << "name1,name2,kind,value\n";
  for (const auto& a : scene.states)
    for (const auto& b : scene.states) {
      if (a.name == b.name) continue;
      for (DistanceKind k : kinds)
        csv << a.name << ',' << b.name << ',' << to_string(k) << ','
            << format_double(distance_value(scene, k, a.state, b.state)) << '\n';
    }
}

int cmd_reachable(const Scene& scene, const std::string& source, const Event& q, std::ostream& out) {
  const ProductState& w = scene.state(source);
  const LongitudeArc arc = reachable_longitudes(w, q, scene.dirac);
  out << "from: " << source << " at (" << format_double(w.event.t) << ", " << format_double(w.event.x)
      << "), latitude " << format_double(latitude(w.internal)) << '\n';
  out << "to event: (" << format_double(q.t) << ", " << format_double(q.x) << ")\n";
  switch (arc.kind) {
    case LongitudeArc::Kind::Empty:
      out << "reachable: none (event not in the causal future)\n";
      return exit_code::kNotRelated;
    case LongitudeArc::Kind::Arc:
      out << "reachable: arc [" << format_double(arc.theta_min()) << ", " << format_double(arc.theta_max())
          << "] half_width " << format_double(arc.half_width) << '\n';
      return exit_code::kOk;
    case LongitudeArc::Kind::FullCircle:
      out << "reachable: full circle\n";
      return exit_code::kOk;
  }
  return exit_code::kOk;
}

void write_scan_csv(const Scene& scene, const std::string& source, const Grid2D& grid, std::ostream& csv) {
  const ProductState& w = scene.state(source);
  if (is_pole(w.internal)) throw Error(ErrorKind::PoleState, "scan source '" + source + "' is at a pole");
  if (grid.nt < 2 || grid.nx < 2) throw Error(ErrorKind::InvalidArgument, "scan resolution must be >= 2 per axis");
  grid.validate();
  csv << "t,x,theta_min,theta_max,reachable\n";
  for (const Event& e : grid.points()) {
    const LongitudeArc arc = reachable_longitudes(w, e, scene.dirac);
    csv << format_double(e.t) << ',' << format_double(e.x) << ',';
    switch (arc.kind) {
      case LongitudeArc::Kind::Empty: csv << "nan,nan,0\n"; break;
      case LongitudeArc::Kind::Arc:
        csv << format_double(arc.theta_min()) << ',' << format_double(arc.theta_max()) << ",1\n";
        break;
      case LongitudeArc::Kind::FullCircle:
        csv << format_double(arc.theta_min()) << ',' << format_double(arc.theta_max()) << ",2\n";
        break;
    }
  }
}

int cmd_verify(const Scene& scene, Suite suite, std::ostream& out, std::ostream* csv) {
  const auto results = run_invariants(scene, suite, scene.optimizer.seed);
  bool ok = true;
  for (const auto& r : results) {
    out << (r.passed() ? "PASS " : "FAIL ") << r.suite << '/' << r.name << " checked=" << r.checked
        << " violations=" << r.violations << " max_error=" << format_double(r.max_error) << '\n';
    ok = ok && r.passed();
  }
  if (csv != nullptr) write_invariant_csv(*csv, results);
  return ok ? exit_code::kOk : exit_code::kInternal;
}

}  // namespace nccausal
