#include "nccausal/separating_search.hpp"

#include "nccausal/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace nccausal {

namespace {

struct Candidate {
  std::vector<double> coefficients;
  bool from_penalty = false;
};

double separation(const Event& p, const Event& q) noexcept {
  return std::max(std::abs(q.t - p.t), std::abs(q.x - p.x));
}

double length_scale(const Event& p, const Event& q) noexcept {
  return std::max(separation(p, q), 0.1);
}

void require_grid(const Event& p, const Event& q, const Grid2D& grid) {
  grid.validate();
  const double margin = separation(p, q);
  const bool ok = grid.t_min <= std::min(p.t, q.t) - margin && grid.t_max >= std::max(p.t, q.t) + margin &&
                  grid.x_min <= std::min(p.x, q.x) - margin && grid.x_max >= std::max(p.x, q.x) + margin;
  if (!ok) {
    std::ostringstream os;
    os << "grid must contain both events with a margin of at least " << margin;
    throw Error(ErrorKind::GridTooSmall, os.str());
  }
}

double expectation(const InternalState& s, const Eigen::Matrix2cd& h) {
  return (s.vector().adjoint() * h * s.vector())(0, 0).real();
}

// Symbols of every dictionary entry at every grid point, point-major.
class SymbolTable {
 public:
  SymbolTable(const Dictionary& dict, const std::vector<Event>& points, const FiniteDirac& df)
      : k_(dict.size()), n_(points.size()), table_(k_ * n_) {
    for (std::size_t g = 0; g < n_; ++g) {
      for (std::size_t k = 0; k < k_; ++k) {
        const auto& entry = dict.entries()[k];
        const Eigen::Matrix2cd& h = generator_matrix(entry.generator);
        const double u = entry.profile.value(points[g]);
        const Gradient du = entry.profile.gradient(points[g]);
        table_[g * k_ + k] =
            product_symbol(Herm2(u * h), Herm2(du.dt * h), Herm2(du.dx * h), df).matrix();
      }
    }
  }

  Eigen::Matrix4cd combine(std::size_t g, const std::vector<double>& c) const {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    for (std::size_t k = 0; k < k_; ++k)
      if (c[k] != 0.0) m += c[k] * table_[g * k_ + k];
    return m;
  }

  const Eigen::Matrix4cd& at(std::size_t g, std::size_t k) const { return table_[g * k_ + k]; }
  std::size_t points() const noexcept { return n_; }
  std::size_t entries() const noexcept { return k_; }

 private:
  std::size_t k_;
  std::size_t n_;
  std::vector<Eigen::Matrix4cd> table_;
};

double max_eigenvalue(const Eigen::Matrix4cd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(3);
}

class PenaltyProblem {
 public:
  PenaltyProblem(const SymbolTable& table, std::vector<double> objective, double bound)
      : table_(table), objective_(std::move(objective)), bound_(bound) {}

  double linear(const std::vector<double>& c) const {
    double v = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) v += objective_[k] * c[k];
    return v;
  }

  double value(const std::vector<double>& c, double mu) const {
    double pen = 0.0;
    for (std::size_t g = 0; g < table_.points(); ++g) {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(table_.combine(g, c), Eigen::EigenvaluesOnly);
      for (int j = 0; j < 4; ++j) {
        const double l = es.eigenvalues()(j);
        if (l > 0.0) pen += l * l;
      }
    }
    return linear(c) + mu * pen;
  }

  std::vector<double> gradient(const std::vector<double>& c, double mu) const {
    std::vector<double> grad = objective_;
    for (std::size_t g = 0; g < table_.points(); ++g) {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(table_.combine(g, c));
      for (int j = 0; j < 4; ++j) {
        const double l = es.eigenvalues()(j);
        if (l <= 0.0) continue;
        const Eigen::Vector4cd v = es.eigenvectors().col(j);
        for (std::size_t k = 0; k < grad.size(); ++k)
          grad[k] += 2.0 * mu * l * (v.adjoint() * table_.at(g, k) * v)(0, 0).real();
      }
    }
    return grad;
  }

  void project(std::vector<double>& c) const {
    for (double& v : c) v = std::clamp(v, -bound_, bound_);
  }

  // Projected gradient descent with backtracking, one penalty weight per stage.
  std::vector<double> minimize(std::vector<double> c, const SearchOptions& opts) const {
    double step = 1.0;
    for (double mu : opts.penalty_weights) {
      double f = value(c, mu);
      for (int it = 0; it < opts.iterations_per_stage; ++it) {
        const std::vector<double> grad = gradient(c, mu);
        bool moved = false;
        for (int halving = 0; halving < 40; ++halving) {
          std::vector<double> trial = c;
          for (std::size_t k = 0; k < c.size(); ++k) trial[k] -= step * grad[k];
          project(trial);
          const double ft = value(trial, mu);
          if (ft < f) {
            c = std::move(trial);
            f = ft;
            step *= 2.0;
            moved = true;
            break;
          }
          step *= 0.5;
        }
        if (!moved) break;
      }
    }
    return c;
  }

 private:
  const SymbolTable& table_;
  std::vector<double> objective_;
  double bound_;
};

}  // namespace

double Profile::value(const Event& e) const noexcept {
  switch (kind) {
    case Kind::Constant: return 1.0;
    case Kind::BoostedTanh:
      return std::tanh(scale * (std::cosh(beta) * (e.t - center.t) + std::sinh(beta) * (e.x - center.x)));
    case Kind::Bump: {
      const double r2 = (e.t - center.t) * (e.t - center.t) + (e.x - center.x) * (e.x - center.x);
      return std::exp(-0.5 * r2 / (width * width));
    }
  }
  return 0.0;
}

Gradient Profile::gradient(const Event& e) const noexcept {
  switch (kind) {
    case Kind::Constant: return {0.0, 0.0};
    case Kind::BoostedTanh: {
      const double ch = std::cosh(beta);
      const double sh = std::sinh(beta);
      const double s = std::cosh(scale * (ch * (e.t - center.t) + sh * (e.x - center.x)));
      const double d = scale / (s * s);
      return {d * ch, d * sh};
    }
    case Kind::Bump: {
      const double v = value(e);
      const double w2 = width * width;
      return {-v * (e.t - center.t) / w2, -v * (e.x - center.x) / w2};
    }
  }
  return {0.0, 0.0};
}

double Profile::feature_length() const noexcept {
  switch (kind) {
    case Kind::Constant: return std::numeric_limits<double>::infinity();
    case Kind::BoostedTanh: return std::exp(-std::abs(beta)) / scale;
    case Kind::Bump: return width;
  }
  return std::numeric_limits<double>::infinity();
}

const Eigen::Matrix2cd& generator_matrix(Generator g) {
  static const std::array<Eigen::Matrix2cd, 4> mats = [] {
    const cplx i(0.0, 1.0);
    std::array<Eigen::Matrix2cd, 4> m;
    m[0] << 1.0, 0.0, 0.0, 1.0;
    m[1] << 1.0, 0.0, 0.0, -1.0;
    m[2] << 0.0, 1.0, 1.0, 0.0;
    m[3] << 0.0, -i, i, 0.0;
    return m;
  }();
  return mats[static_cast<int>(g)];
}

Dictionary::Dictionary(std::vector<DictionaryEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty() || entries_.size() > 64)
    throw Error(ErrorKind::InvalidArgument, "dictionary needs between 1 and 64 entries");
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const auto& e = entries_[k];
    if (e.generator == Generator::Identity && e.profile.kind == Profile::Kind::BoostedTanh &&
        e.profile.beta == 0.0 && e.profile.scale > 0.0) {
      time_index_ = static_cast<long>(k);
      break;
    }
  }
}

Dictionary Dictionary::standard(const Event& p, const Event& q, const std::vector<double>& betas) {
  const double len = length_scale(p, q);
  const Event mid{0.5 * (p.t + q.t), 0.5 * (p.x + q.x)};
  std::vector<DictionaryEntry> out;
  const auto diagonal = {Generator::Identity, Generator::SigmaZ};
  const auto all = {Generator::Identity, Generator::SigmaZ, Generator::SigmaX, Generator::SigmaY};

  // Off-diagonal entries of the algebra must decay, so sigma_x/sigma_y only ride on bumps.
  for (Generator g : diagonal) out.push_back({Profile{}, g});
  for (double beta : betas) {
    Profile pr;
    pr.kind = Profile::Kind::BoostedTanh;
    pr.beta = beta;
    pr.scale = 1.0 / len;
    pr.center = mid;
    for (Generator g : diagonal) out.push_back({pr, g});
  }
  for (const auto& [center, width] : {std::pair{mid, len}, std::pair{p, 0.5 * len}, std::pair{q, 0.5 * len}}) {
    Profile pr;
    pr.kind = Profile::Kind::Bump;
    pr.center = center;
    pr.width = width;
    for (Generator g : all) out.push_back({pr, g});
  }
  return Dictionary(std::move(out));
}

CausalElement::CausalElement(Dictionary dictionary, std::vector<double> coefficients)
    : dictionary_(std::move(dictionary)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != dictionary_.size())
    throw Error(ErrorKind::InvalidArgument, "coefficient count does not match the dictionary");
}

Herm2 CausalElement::value(const Event& e) const {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    const auto& entry = dictionary_.entries()[k];
    m += coefficients_[k] * entry.profile.value(e) * generator_matrix(entry.generator);
  }
  return Herm2(m);
}

Herm2 CausalElement::d_dt(const Event& e) const {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    const auto& entry = dictionary_.entries()[k];
    m += coefficients_[k] * entry.profile.gradient(e).dt * generator_matrix(entry.generator);
  }
  return Herm2(m);
}

Herm2 CausalElement::d_dx(const Event& e) const {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    const auto& entry = dictionary_.entries()[k];
    m += coefficients_[k] * entry.profile.gradient(e).dx * generator_matrix(entry.generator);
  }
  return Herm2(m);
}

Herm4 CausalElement::symbol(const Event& e, const FiniteDirac& df) const {
  return product_symbol(value(e), d_dt(e), d_dx(e), df);
}

double CausalElement::evaluate(const ProductState& w) const {
  return state_eval(w.internal, value(w.event));
}

double CausalElement::max_symbol_eigenvalue(const Grid2D& grid, const FiniteDirac& df, double stop_above) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < grid.nt && worst <= stop_above; ++it)
    for (int ix = 0; ix < grid.nx && worst <= stop_above; ++ix)
      worst = std::max(worst, symbol(grid.at(it, ix), df).max_eigenvalue());
  return worst;
}

Grid2D search_grid(const Event& p, const Event& q, double margin_factor, int resolution) {
  const double m = margin_factor * length_scale(p, q);
  return {std::min(p.t, q.t) - m, std::max(p.t, q.t) + m, std::min(p.x, q.x) - m,
          std::max(p.x, q.x) + m, resolution, resolution};
}

SearchResult separating_element_search(const ProductState& w1, const ProductState& w2,
                                       const FiniteDirac& df, const Dictionary& dictionary,
                                       const Grid2D& grid, const SearchOptions& opts) {
  require_grid(w1.event, w2.event, grid);
  const std::size_t n = dictionary.size();
  const double bound = opts.coefficient_bound;

  std::vector<double> objective(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& e = dictionary.entries()[k];
    const Eigen::Matrix2cd& h = generator_matrix(e.generator);
    objective[k] = e.profile.value(w2.event) * expectation(w2.internal, h) -
                   e.profile.value(w1.event) * expectation(w1.internal, h);
  }

  const SymbolTable table(dictionary, grid.points(), df);
  const PenaltyProblem problem(table, objective, bound);

  // Best single entry that is NSD on the grid.
  std::vector<double> single(n, 0.0);
  double single_value = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (double sign : {1.0, -1.0}) {
      const double v = sign * bound * objective[k];
      if (v >= single_value) continue;
      bool feasible = true;
      for (std::size_t g = 0; g < table.points() && feasible; ++g)
        feasible = max_eigenvalue(sign * table.at(g, k)) <= opts.nsd_tol;
      if (feasible) {
        std::fill(single.begin(), single.end(), 0.0);
        single[k] = sign * bound;
        single_value = v;
      }
    }
  }

  std::vector<Candidate> candidates;
  candidates.push_back({single, false});
  std::vector<std::vector<double>> starts = {single, std::vector<double>(n, 0.0)};
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(-bound, bound);
  for (int s = 0; s < opts.random_starts; ++s) {
    std::vector<double> c(n);
    for (double& v : c) v = unit(rng);
    starts.push_back(std::move(c));
  }
  for (auto& start : starts) candidates.push_back({problem.minimize(std::move(start), opts), true});

  const Grid2D coarse = grid.refined(std::max(1, opts.verify_refinement));
  const std::vector<Event> coarse_points = coarse.points();
  const long repair = dictionary.time_function_index();

  std::vector<std::pair<CausalElement, bool>> repaired;
  for (auto& cand : candidates) {
    CausalElement element(dictionary, cand.coefficients);
    double worst = element.max_symbol_eigenvalue(coarse, df);
    for (int attempt = 0; attempt < 3 && worst > opts.nsd_tol && repair >= 0; ++attempt) {
      // The time function's symbol is -(d_t u) times the identity, so adding it
      // lowers every eigenvalue by at least eps * min d_t u.
      const Profile& pr = dictionary.entries()[repair].profile;
      double slope = std::numeric_limits<double>::infinity();
      for (const Event& e : coarse_points) slope = std::min(slope, pr.gradient(e).dt);
      if (!(slope > 0.0)) break;
      std::vector<double> c = element.coefficients();
      c[repair] += (worst + opts.nsd_tol) / slope * (1.0 + 1e-9);
      element = CausalElement(dictionary, std::move(c));
      worst = element.max_symbol_eigenvalue(coarse, df);
    }
    if (worst <= opts.nsd_tol) repaired.emplace_back(std::move(element), cand.from_penalty);
  }
  auto value_of = [&](const CausalElement& el) { return el.evaluate(w2) - el.evaluate(w1); };
  std::stable_sort(repaired.begin(), repaired.end(),
                   [&](const auto& a, const auto& b) { return value_of(a.first) < value_of(b.first); });

  const double spacing = std::max((grid.t_max - grid.t_min) / std::max(1, grid.nt - 1),
                                  (grid.x_max - grid.x_min) / std::max(1, grid.nx - 1));
  SearchResult best;
  for (auto& [element, from_penalty] : repaired) {
    double feature = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k)
      if (element.coefficients()[k] != 0.0)
        feature = std::min(feature, dictionary.entries()[k].profile.feature_length());
    int factor = std::max(1, opts.verify_refinement);
    if (std::isfinite(feature) && spacing > 0.0)
      factor = std::max(factor, static_cast<int>(std::ceil(spacing * opts.verify_points_per_feature / feature)));
    factor = std::min(factor, std::max(1, opts.max_verify_refinement));
    const double worst = element.max_symbol_eigenvalue(grid.refined(factor), df, opts.nsd_tol);
    const bool verified = worst <= opts.nsd_tol;
    if (!best.witness || verified) {
      best.objective = value_of(element);
      best.max_eigenvalue = worst;
      best.verified = verified;
      best.from_penalty = from_penalty;
      best.witness = element;
    }
    if (verified) break;
  }
  if (!(best.verified && best.objective < -opts.significance)) best.witness.reset();
  return best;
}

}  // namespace nccausal
