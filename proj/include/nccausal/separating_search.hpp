#pragma once

// Search for an element of the causal cone that separates two product states.
//
// Candidates are a(t,x) = sum_k c_k u_k(t,x) H_k with bounded smooth profiles
// u_k and H_k in {I, sigma_z, sigma_x, sigma_y}. Cone membership is the pointwise
// NSD condition on the product symbol J[D,a], enforced on a sample grid. A
// verified candidate with omega2(a) < omega1(a) proves the states unrelated.

#include "nccausal/product_causality.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace nccausal {

struct Profile {
  enum class Kind { Constant, BoostedTanh, Bump };
  Kind kind = Kind::Constant;
  double beta = 0.0;   // BoostedTanh: boost rapidity
  double scale = 1.0;  // BoostedTanh: inverse length
  Event center;        // BoostedTanh, Bump
  double width = 1.0;  // Bump: Gaussian width

  double value(const Event& e) const noexcept;
  Gradient gradient(const Event& e) const noexcept;
  /// Length over which the profile changes appreciably: e^{-|beta|} / scale
  /// for BoostedTanh, width for Bump, infinity for Constant.
  double feature_length() const noexcept;
};

enum class Generator { Identity = 0, SigmaZ = 1, SigmaX = 2, SigmaY = 3 };

const Eigen::Matrix2cd& generator_matrix(Generator g);

struct DictionaryEntry {
  Profile profile;
  Generator generator = Generator::Identity;
};

class Dictionary {
 public:
  explicit Dictionary(std::vector<DictionaryEntry> entries);

  /// Profiles {1, tanh(boosted time) for each beta, Gaussian bumps at the
  /// midpoint of p and q and at p and q}, each times {I, sigma_z, sigma_x,
  /// sigma_y}; profiles are centred on the midpoint and scaled to the events'
  /// separation. At most 64 entries.
  static Dictionary standard(const Event& p, const Event& q,
                             const std::vector<double>& betas = {-3.0, -1.5, 0.0, 1.5, 3.0});

  const std::vector<DictionaryEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  /// Index of tanh(scale (t - t_c)) I, the strictly causal entry used for repair,
  /// or -1 when absent.
  long time_function_index() const noexcept { return time_index_; }

 private:
  std::vector<DictionaryEntry> entries_;
  long time_index_ = -1;
};

/// Hermitian-valued a(t,x) selected by coefficients over a dictionary.
class CausalElement {
 public:
  CausalElement(Dictionary dictionary, std::vector<double> coefficients);

  const Dictionary& dictionary() const noexcept { return dictionary_; }
  const std::vector<double>& coefficients() const noexcept { return coefficients_; }

  Herm2 value(const Event& e) const;
  Herm2 d_dt(const Event& e) const;
  Herm2 d_dx(const Event& e) const;
  Herm4 symbol(const Event& e, const FiniteDirac& df) const;

  /// omega_{p,xi}(a) = xi^* a(p) xi.
  double evaluate(const ProductState& w) const;

  /// Largest eigenvalue of the symbol over the grid. Stops at the first point
  /// whose eigenvalue exceeds stop_above.
  double max_symbol_eigenvalue(const Grid2D& grid, const FiniteDirac& df,
                               double stop_above = std::numeric_limits<double>::infinity()) const;

 private:
  Dictionary dictionary_;
  std::vector<double> coefficients_;
};

struct SearchOptions {
  std::uint64_t seed = 42;
  std::vector<double> penalty_weights = {1e1, 1e3, 1e5};
  int iterations_per_stage = 60;
  int random_starts = 1;
  double coefficient_bound = 1.0;  // box |c_k| <= bound
  double nsd_tol = 1e-12;          // verification tolerance on symbol eigenvalues
  double significance = 1e-6;      // witness needs omega2 - omega1 below -significance
  int verify_refinement = 2;       // minimum refinement of the verification grid
  /// The verification grid is refined further until its spacing is at most
  /// feature_length / verify_points_per_feature for every active entry, up to
  /// max_verify_refinement.
  int verify_points_per_feature = 2;
  int max_verify_refinement = 32;
};

struct SearchResult {
  std::optional<CausalElement> witness;  // set iff a verified separating element was found
  double objective = 0.0;                // omega2(a) - omega1(a) of the final candidate
  double max_eigenvalue = 0.0;           // on the verification grid (first violation if not verified)
  bool verified = false;                 // final candidate NSD on the verification grid
  bool from_penalty = false;             // penalty phase improved on the best single entry
};

/// Minimizes omega2(a) - omega1(a) over the dictionary's coefficient box subject
/// to pointwise NSD of the product symbol on grid (penalty method, then repair
/// with the time function and exact re-verification on a finer grid).
/// Throws Error{GridTooSmall} unless grid contains both events with a margin of
/// at least their separation max(|dt|, |dx|).
SearchResult separating_element_search(const ProductState& w1, const ProductState& w2,
                                       const FiniteDirac& df, const Dictionary& dictionary,
                                       const Grid2D& grid, const SearchOptions& opts = {});

/// Rectangle around p and q with the given margin (in units of the separation,
/// floored at 0.1) and resolution per axis.
Grid2D search_grid(const Event& p, const Event& q, double margin_factor = 2.0, int resolution = 13);

}  // namespace nccausal
