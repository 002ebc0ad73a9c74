#pragma once

// Seeded invariant suites run by `nccausal verify`.

#include "nccausal/scene.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace nccausal {

enum class Suite { All, Clifford, Finite, Spacetime, Product };

std::optional<Suite> parse_suite(std::string_view name);
std::string_view to_string(Suite s) noexcept;

struct InvariantResult {
  std::string suite;
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  double max_error = 0.0;  // worst residual seen; meaning depends on the invariant

  bool passed() const noexcept { return violations == 0; }
};

std::vector<InvariantResult> run_invariants(const Scene& scene, Suite suite, std::uint64_t seed);

/// Rows `suite,invariant,checked,violations,max_error,passed`.
void write_invariant_csv(std::ostream& out, const std::vector<InvariantResult>& results);

}  // namespace nccausal
