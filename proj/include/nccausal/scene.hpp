#pragma once

// Scene files: a finite Dirac operator, named product states, a sampling
// rectangle and optimizer settings, stored as JSON.
//
//   {
//     "dirac": {"d1": 0.0, "d2": 1.0},
//     "states": [
//       {"name": "a", "event": {"t": 0.0, "x": 0.0},
//        "internal": [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]]}
//     ],
//     "grid": {"t_min": -1, "t_max": 4, "x_min": -3, "x_max": 3, "nt": 51, "nx": 61},
//     "optimizer": {"seed": 42, "starts": 32, "step": 0.1,
//                   "max_iterations": 10000, "tolerance": 1e-10}
//   }
//
// Complex numbers are [re, im] pairs; angles are radians. A state may give
// "bloch": {"z": ..., "theta": ...} instead of "internal".

#include "nccausal/finite_geometry.hpp"
#include "nccausal/product_causality.hpp"
#include "nccausal/spacetime.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace nccausal {

struct NamedState {
  std::string name;
  ProductState state;

  bool operator==(const NamedState&) const = default;
};

struct Scene {
  FiniteDirac dirac{0.0, 1.0};
  std::vector<NamedState> states;
  Grid2D grid{-1.0, 4.0, -3.0, 3.0, 51, 61};
  OptimizerOptions optimizer;

  /// Throws Error{UnknownState}.
  const ProductState& state(std::string_view name) const;

  bool operator==(const Scene&) const = default;

  /// Built-in scene used when no file is given.
  static Scene reference();
};

/// Throws Error{ParseError} on malformed JSON, missing fields or duplicate
/// names, and Error{InvalidDirac} for d1 == d2.
Scene parse_scene(std::string_view json_text);
Scene load_scene(const std::string& path);
std::string serialize_scene(const Scene& scene);

/// Locale-independent text with 17 significant digits ("%.17g" style); "inf", "-inf", "nan".
std::string format_double(double v);

}  // namespace nccausal
