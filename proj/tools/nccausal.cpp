#include "nccausal/commands.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace nccausal;

namespace {

struct Common {
  std::string scene_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--scene", c.scene_path, "Scene JSON file (built-in reference scene if omitted)");
  cmd->add_option("--seed", c.seed, "Seed for randomized procedures (default: scene seed, 42)");
  cmd->add_option("--out", c.out_path, "CSV output path");
}

Scene load(const Common& c) {
  Scene s = c.scene_path.empty() ? Scene::reference() : load_scene(c.scene_path);
  if (c.seed) s.optimizer.seed = *c.seed;
  return s;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "' for writing");
  return f;
}

Event event_of(const std::vector<double>& v) { return {v.at(0), v.at(1)}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal structure of two-dimensional Minkowski space times a two-state internal space"};
  app.require_subcommand(1);
  Common common;

  auto* check = app.add_subcommand("check", "Decide whether one named state causally precedes another");
  std::string name1, name2;
  check->add_option("name1", name1)->required();
  check->add_option("name2", name2)->required();
  add_common(check, common);

  auto* distance = app.add_subcommand("distance", "Internal, Lorentzian or functional distance");
  std::string kind_text;
  std::vector<double> p_ev, q_ev;
  distance->add_option("kind", kind_text, "internal | lorentzian | functional | all (table only)")->required();
  distance->add_option("name1", name1);
  distance->add_option("name2", name2);
  distance->add_option("--p", p_ev, "Source event t x (instead of names)")->expected(2);
  distance->add_option("--q", q_ev, "Target event t x (instead of names)")->expected(2);
  add_common(distance, common);

  auto* reachable = app.add_subcommand("reachable", "Longitudes reachable at an event from a named state");
  std::string source;
  std::vector<double> at;
  reachable->add_option("source", source)->required();
  reachable->add_option("--at", at, "Target event t x")->expected(2)->required();
  add_common(reachable, common);

  auto* scan = app.add_subcommand("scan", "Reachable longitude arcs over an event grid, as CSV");
  std::vector<double> t_range, x_range;
  std::vector<int> resolution;
  scan->add_option("source", source)->required();
  scan->add_option("--t-range", t_range, "t_min t_max (default: scene grid)")->expected(2);
  scan->add_option("--x-range", x_range, "x_min x_max (default: scene grid)")->expected(2);
  scan->add_option("--resolution", resolution, "nt nx (default: scene grid)")->expected(2);
  add_common(scan, common);

  auto* verify = app.add_subcommand("verify", "Run the seeded invariant suites");
  std::string suite_text = "all";
  verify->add_option("--suite", suite_text, "all | clifford | finite | spacetime | product");
  add_common(verify, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  try {
    const Scene scene = load(common);
    if (*check) return cmd_check(scene, name1, name2, std::cout);

    if (*distance) {
      std::vector<DistanceKind> kinds;
      if (kind_text == "all") {
        kinds = {DistanceKind::Internal, DistanceKind::Lorentzian, DistanceKind::Functional};
      } else if (auto k = parse_distance_kind(kind_text)) {
        kinds = {*k};
      } else {
        std::cerr << "unknown distance kind '" << kind_text << "'\n";
        return exit_code::kUsage;
      }
      const bool by_name = !name1.empty() && !name2.empty();
      const bool by_event = !p_ev.empty() && !q_ev.empty();
      if (by_name || by_event) {
        if (kinds.size() != 1) {
          std::cerr << "a single distance kind is required for a pair\n";
          return exit_code::kUsage;
        }
        if (by_name) return cmd_distance(scene, kinds[0], name1, name2, std::cout);
        if (kinds[0] == DistanceKind::Internal) {
          std::cerr << "internal distance needs state names\n";
          return exit_code::kUsage;
        }
        const InternalState s = state_from_bloch(0.0, 0.0);
        report_distance(scene, kinds[0], {event_of(p_ev), s}, {event_of(q_ev), s}, std::cout);
        return exit_code::kOk;
      }
      if (common.out_path.empty()) {
        write_distance_table(scene, kinds, std::cout);
      } else {
        std::ofstream f = open_csv(common.out_path);
        write_distance_table(scene, kinds, f);
      }
      return exit_code::kOk;
    }

    if (*reachable) return cmd_reachable(scene, source, event_of(at), std::cout);

    if (*scan) {
      Grid2D g = scene.grid;
      if (!t_range.empty()) g.t_min = t_range[0], g.t_max = t_range[1];
      if (!x_range.empty()) g.x_min = x_range[0], g.x_max = x_range[1];
      if (!resolution.empty()) g.nt = resolution[0], g.nx = resolution[1];
      if (common.out_path.empty()) {
        write_scan_csv(scene, source, g, std::cout);
      } else {
        std::ofstream f = open_csv(common.out_path);
        write_scan_csv(scene, source, g, f);
      }
      return exit_code::kOk;
    }

    if (*verify) {
      const auto suite = parse_suite(suite_text);
      if (!suite) {
        std::cerr << "unknown suite '" << suite_text << "'\n";
        return exit_code::kUsage;
      }
      if (common.out_path.empty()) return cmd_verify(scene, *suite, std::cout, nullptr);
      std::ofstream f = open_csv(common.out_path);
      return cmd_verify(scene, *suite, std::cout, &f);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return exit_code::kInternal;
  }
  return exit_code::kUsage;
}
