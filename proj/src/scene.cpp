#include "nccausal/scene.hpp"

#include "nccausal/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace nccausal {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) parse_fail(where + ": missing field '" + key + "'");
  return obj.at(key);
}

double number(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number()) parse_fail(where + ": field '" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) parse_fail(where + ": field '" + key + "' must be finite");
  return d;
}

int integer(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer()) parse_fail(where + ": field '" + key + "' must be an integer");
  return v.get<int>();
}

cplx complex_pair(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    parse_fail(where + ": complex numbers are [re, im] pairs");
  return {v[0].get<double>(), v[1].get<double>()};
}

NamedState parse_state(const json& s, std::size_t index) {
  const std::string where = "states[" + std::to_string(index) + "]";
  const json& name = field(s, "name", where);
  if (!name.is_string() || name.get<std::string>().empty()) parse_fail(where + ": name must be a non-empty string");
  const json& ev = field(s, "event", where);
  const Event event{number(ev, "t", where + ".event"), number(ev, "x", where + ".event")};

  InternalState internal;
  if (s.contains("internal")) {
    const json& v = s.at("internal");
    if (!v.is_array() || v.size() != 2) parse_fail(where + ": internal must hold two complex entries");
    try {
      internal = make_state(complex_pair(v[0], where), complex_pair(v[1], where));
    } catch (const Error& e) {
      parse_fail(where + ": " + e.what());
    }
  } else if (s.contains("bloch")) {
    const json& b = s.at("bloch");
    const double z = number(b, "z", where + ".bloch");
    if (z < -1.0 || z > 1.0) parse_fail(where + ": bloch.z must lie in [-1, 1]");
    internal = state_from_bloch(z, number(b, "theta", where + ".bloch"));
  } else {
    parse_fail(where + ": needs 'internal' or 'bloch'");
  }
  return {name.get<std::string>(), {event, internal}};
}

}  // namespace

const ProductState& Scene::state(std::string_view name) const {
  for (const auto& s : states)
    if (s.name == name) return s.state;
  throw Error(ErrorKind::UnknownState, "no state named '" + std::string(name) + "'");
}

Scene Scene::reference() {
  using std::numbers::pi;
  Scene s;
  s.dirac = FiniteDirac(0.0, 1.0);
  s.states = {
      {"origin", {{0.0, 0.0}, state_from_bloch(0.0, 0.0)}},
      {"later", {{2.0, 0.5}, state_from_bloch(0.0, 1.5)}},
      {"too_fast", {{2.0, 0.5}, state_from_bloch(0.0, pi)}},
      {"other_parallel", {{2.0, 0.0}, state_from_bloch(0.5, 0.0)}},
      {"spacelike", {{0.5, 2.0}, state_from_bloch(0.0, 0.0)}},
      {"north", {{0.0, 0.0}, state_from_bloch(1.0, 0.0)}},
      {"north_later", {{1.0, 0.3}, state_from_bloch(1.0, 0.0)}},
      {"far", {{5.0, 3.0}, state_from_bloch(0.0, 0.0)}},
  };
  s.grid = {-1.0, 4.0, -3.0, 3.0, 51, 61};
  return s;
}

Scene parse_scene(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("scene must be a JSON object");

  Scene scene;
  const json& dirac = field(doc, "dirac", "scene");
  scene.dirac = FiniteDirac(number(dirac, "d1", "dirac"), number(dirac, "d2", "dirac"));

  const json& states = field(doc, "states", "scene");
  if (!states.is_array()) parse_fail("states must be an array");
  scene.states.clear();
  std::set<std::string> names;
  for (std::size_t i = 0; i < states.size(); ++i) {
    NamedState ns = parse_state(states[i], i);
    if (!names.insert(ns.name).second) parse_fail("duplicate state name '" + ns.name + "'");
    scene.states.push_back(std::move(ns));
  }

  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    scene.grid = {number(g, "t_min", "grid"), number(g, "t_max", "grid"), number(g, "x_min", "grid"),
                  number(g, "x_max", "grid"), integer(g, "nt", "grid"),   integer(g, "nx", "grid")};
    try {
      scene.grid.validate();
    } catch (const Error& e) {
      parse_fail(std::string("grid: ") + e.what());
    }
  }

  if (doc.contains("optimizer")) {
    const json& o = doc.at("optimizer");
    OptimizerOptions& opt = scene.optimizer;
    if (o.contains("seed")) {
      if (!o.at("seed").is_number_unsigned()) parse_fail("optimizer.seed must be a nonnegative integer");
      opt.seed = o.at("seed").get<std::uint64_t>();
    }
    if (o.contains("starts")) opt.starts = integer(o, "starts", "optimizer");
    if (o.contains("step")) opt.step = number(o, "step", "optimizer");
    if (o.contains("max_iterations")) opt.max_iterations = integer(o, "max_iterations", "optimizer");
    if (o.contains("tolerance")) opt.tolerance = number(o, "tolerance", "optimizer");
    if (o.contains("diagonal_clip")) opt.diagonal_clip = number(o, "diagonal_clip", "optimizer");
    if (opt.starts < 1 || opt.max_iterations < 1 || !(opt.step > 0.0) || !(opt.tolerance > 0.0) ||
        !(opt.diagonal_clip > 0.0))
      parse_fail("optimizer settings out of range");
  }
  return scene;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open scene file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str());
}

std::string serialize_scene(const Scene& scene) {
  json doc;
  doc["dirac"] = {{"d1", scene.dirac.d1()}, {"d2", scene.dirac.d2()}};
  json states = json::array();
  for (const auto& s : scene.states) {
    const auto& v = s.state.internal.vector();
    states.push_back({{"name", s.name},
                      {"event", {{"t", s.state.event.t}, {"x", s.state.event.x}}},
                      {"internal", {{v(0).real(), v(0).imag()}, {v(1).real(), v(1).imag()}}}});
  }
  doc["states"] = std::move(states);
  const Grid2D& g = scene.grid;
  doc["grid"] = {{"t_min", g.t_min}, {"t_max", g.t_max}, {"x_min", g.x_min},
                 {"x_max", g.x_max}, {"nt", g.nt},       {"nx", g.nx}};
  const OptimizerOptions& o = scene.optimizer;
  doc["optimizer"] = {{"seed", o.seed},
                      {"starts", o.starts},
                      {"step", o.step},
                      {"max_iterations", o.max_iterations},
                      {"tolerance", o.tolerance},
                      {"diagonal_clip", o.diagonal_clip}};
  return doc.dump(2) + "\n";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace nccausal
