#pragma once

// Command implementations behind the nccausal executable. Reports go to the
// given stream; CSV goes to whatever stream the caller opened.

#include "nccausal/error.hpp"
#include "nccausal/scene.hpp"
#include "nccausal/verify.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nccausal {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kUsage = 2;
inline constexpr int kNotRelated = 10;
}  // namespace exit_code

/// Input problems map to kUsage, everything else to kInternal.
int exit_code_for(ErrorKind kind) noexcept;

int cmd_check(const Scene& scene, const std::string& name1, const std::string& name2, std::ostream& out);

enum class DistanceKind { Internal, Lorentzian, Functional };

std::optional<DistanceKind> parse_distance_kind(std::string_view s);
std::string_view to_string(DistanceKind k) noexcept;

/// One-line report for a pair of product states. Internal uses the internal
/// states; the other kinds use the events.
void report_distance(const Scene& scene, DistanceKind kind, const ProductState& w1,
                     const ProductState& w2, std::ostream& out);
int cmd_distance(const Scene& scene, DistanceKind kind, const std::string& name1,
                 const std::string& name2, std::ostream& out);

/// Rows `name1,name2,kind,value` over all ordered pairs of distinct states.
void write_distance_table(const Scene& scene, const std::vector<DistanceKind>& kinds, std::ostream& csv);

int cmd_reachable(const Scene& scene, const std::string& source, const Event& q, std::ostream& out);

/// Rows `t,x,theta_min,theta_max,reachable` over grid (t outer). reachable is
/// 0 for no reachable longitude (bounds "nan"), 1 for an arc, 2 for the full
/// circle. Throws Error{PoleState} for a polar source.
void write_scan_csv(const Scene& scene, const std::string& source, const Grid2D& grid, std::ostream& csv);

/// Prints one line per invariant and optionally writes the invariant CSV.
int cmd_verify(const Scene& scene, Suite suite, std::ostream& out, std::ostream* csv);

}  // namespace nccausal
