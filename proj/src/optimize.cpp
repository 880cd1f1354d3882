#include "probclone/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>
#include <tuple>
#include <vector>

#include "probclone/random.hpp"

namespace probclone {

std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::Sum23: return "sum23";
    case Objective::Sum23Slice: return "sum23-slice";
    case Objective::Gamma1: return "gamma1";
    case Objective::Equal: return "equal";
  }
  return "?";
}

Objective parse_objective(std::string_view text) {
  for (auto o : {Objective::Sum23, Objective::Sum23Slice, Objective::Gamma1, Objective::Equal}) {
    if (text == to_string(o)) return o;
  }
  throw std::invalid_argument("unknown objective '" + std::string(text) +
                              "' (expected sum23, sum23-slice, gamma1 or equal)");
}

double objective_value(Objective o, const Efficiencies<double>& eff) {
  switch (o) {
    case Objective::Sum23:
    case Objective::Sum23Slice: return eff[1] + eff[2];
    case Objective::Gamma1: return eff[0];
    case Objective::Equal: return std::min({eff[0], eff[1], eff[2]});
  }
  return 0.0;
}

double OptimumReport::value() const {
  if (numeric_value) return *numeric_value;
  return analytic_value.value_or(std::numeric_limits<double>::quiet_NaN());
}

FlagOverlaps<Rational> optimal_flags(Case c) {
  return c == Case::ThreeBit ? FlagOverlaps<Rational>::real(-1, 1) : FlagOverlaps<Rational>::real(-1, -1);
}

ReducedFlags<Rational> optimal_corner(Case c) { return reduce(optimal_flags(c), c); }

namespace {

void attach_certificate(OptimumReport& r, const HermitianMatrix3<double>& gram) {
  r.certificate = build_matrix(gram, r.argmax, r.flags);
  r.min_eigenvalue = min_eigenvalue(r.certificate.m);
  r.certificate_psd = is_psd(r.certificate);
}

}  // namespace

OptimumReport analytic_optimum(Case c) {
  const auto corner = optimal_corner(c);
  const auto opt = gamma2_on_slice(corner.q, corner.s, c);

  OptimumReport r;
  r.which = c;
  r.objective = Objective::Sum23Slice;
  r.argmax_exact = Efficiencies<Rational>{{opt.gamma1, opt.gamma2, opt.gamma2}};
  r.flags_exact = optimal_flags(c);
  r.analytic_exact = opt.gamma2 + opt.gamma2;
  r.analytic_value = r.analytic_exact->to_double();
  r.analytic_form = r.analytic_exact->str();
  r.argmax = r.argmax_exact->cast<double>();
  r.flags = r.flags_exact->cast<double>();

  const auto gram = cloned_state_gram(c);
  r.exact_certificate = build_matrix(gram, *r.argmax_exact, *r.flags_exact);
  r.exact_certificate_psd = is_psd(*r.exact_certificate);
  attach_certificate(r, gram.cast<double>());
  return r;
}

namespace {

constexpr double kInfeasible = -std::numeric_limits<double>::infinity();

/// Free coordinates of one objective: leading efficiency coordinates, then
/// Re P12, [Im P12], Re P13, [Im P13]. The remaining coordinate t is pushed
/// to the feasibility boundary.
class SearchSpace {
 public:
  SearchSpace(Case c, Objective o, const SearchOptions& opts)
      : objective_(o), complex_(opts.complex_flags), tol_(opts.tol),
        gram_(cloned_state_gram(c).cast<double>()) {
    switch (o) {
      case Objective::Sum23Slice: add(0.0, 1.0); break;
      case Objective::Sum23:
        add(0.0, 1.0);
        add(-1.0, 1.0);
        break;
      case Objective::Gamma1:
        add(0.0, 1.0);
        add(0.0, 1.0);
        break;
      case Objective::Equal: break;
    }
    flag_offset_ = lo_.size();
    for (int k = 0; k < (complex_ ? 4 : 2); ++k) add(-1.0, 1.0);
  }

  std::size_t dims() const { return lo_.size(); }
  double lo(std::size_t k) const { return lo_[k]; }
  double hi(std::size_t k) const { return hi_[k]; }

  FlagOverlaps<double> flags(const std::vector<double>& z) const {
    const std::size_t f = flag_offset_;
    if (complex_) return {{z[f], z[f + 1]}, {z[f + 2], z[f + 3]}, {0.0, 0.0}};
    return FlagOverlaps<double>::real(z[f], z[f + 1]);
  }

  std::pair<double, double> t_range(const std::vector<double>& z) const {
    if (objective_ == Objective::Sum23) return {std::abs(z[1]) / 2.0, 1.0 - std::abs(z[1]) / 2.0};
    return {0.0, 1.0};
  }

  Efficiencies<double> efficiencies(const std::vector<double>& z, double t) const {
    Efficiencies<double> e;
    switch (objective_) {
      case Objective::Sum23Slice: e.gamma = {z[0], t, t}; break;
      case Objective::Sum23: e.gamma = {z[0], t + z[1] / 2.0, t - z[1] / 2.0}; break;
      case Objective::Gamma1: e.gamma = {t, z[0], z[1]}; break;
      case Objective::Equal: e.gamma = {t, t, t}; break;
    }
    for (auto& g : e.gamma) g = std::clamp(g, 0.0, 1.0);
    return e;
  }

  double score(double t) const {
    return objective_ == Objective::Sum23 || objective_ == Objective::Sum23Slice ? 2.0 * t : t;
  }

  bool feasible(const Efficiencies<double>& e, const FlagOverlaps<double>& p) const {
    return is_psd(build_matrix(gram_, e, p), tol_);
  }

  /// Best boundary value reachable from z, and the t attaining it.
  std::pair<double, double> evaluate(const std::vector<double>& z) const {
    const auto p = flags(z);
    if (p.p12.norm2() > 1.0 || p.p13.norm2() > 1.0) return {kInfeasible, 0.0};
    const auto [t_lo, t_hi] = t_range(z);
    auto ok = [&](double t) { return feasible(efficiencies(z, t), p); };
    const auto t = max_feasible(ok, t_lo, t_hi);
    if (!t) return {kInfeasible, 0.0};
    return {score(*t), *t};
  }

  const HermitianMatrix3<double>& gram() const { return gram_; }

 private:
  void add(double lo, double hi) {
    lo_.push_back(lo);
    hi_.push_back(hi);
  }

  Objective objective_;
  bool complex_;
  double tol_;
  HermitianMatrix3<double> gram_;
  std::vector<double> lo_, hi_;
  std::size_t flag_offset_ = 0;
};

struct Candidate {
  std::vector<double> z;
  double value = kInfeasible;
  double t = 0.0;
  std::size_t evaluations = 0;
};

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += threads) fn(i);
    });
  }
}

Candidate refine(const SearchSpace& space, Candidate start, const std::vector<double>& initial_step,
                 int levels) {
  std::vector<double> step = initial_step;
  for (int level = 0; level < levels; ++level) {
    for (int sweep = 0; sweep < 200; ++sweep) {
      bool improved = false;
      for (std::size_t k = 0; k < space.dims(); ++k) {
        for (double dir : {1.0, -1.0}) {
          std::vector<double> trial = start.z;
          trial[k] = std::clamp(trial[k] + dir * step[k], space.lo(k), space.hi(k));
          if (trial[k] == start.z[k]) continue;
          const auto [value, t] = space.evaluate(trial);
          ++start.evaluations;
          if (value > start.value + 1e-15) {
            start.z = std::move(trial);
            start.value = value;
            start.t = t;
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
    for (auto& s : step) s *= 0.5;
  }
  return start;
}

bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.z < b.z;  // lexicographic tie-break
}

}  // namespace

OptimumReport numeric_search(Case c, Objective objective, const SearchOptions& opts) {
  if (opts.resolution < 8) throw std::invalid_argument("search resolution must be at least 8");
  const SearchSpace space(c, objective, opts);
  const std::size_t dims = space.dims();
  const auto res = static_cast<std::size_t>(opts.resolution);

  std::size_t grid_size = 1;
  for (std::size_t k = 0; k < dims; ++k) grid_size *= res;

  auto node = [&](std::size_t index) {
    std::vector<double> z(dims);
    for (std::size_t k = 0; k < dims; ++k) {
      const std::size_t i = index % res;
      index /= res;
      z[k] = space.lo(k) + (space.hi(k) - space.lo(k)) * static_cast<double>(i) / static_cast<double>(res - 1);
    }
    return z;
  };

  std::vector<Candidate> grid(grid_size);
  parallel_for(grid_size, opts.threads, [&](std::size_t i) {
    Candidate cand{node(i)};
    std::tie(cand.value, cand.t) = space.evaluate(cand.z);
    cand.evaluations = 1;
    grid[i] = std::move(cand);
  });

  std::size_t evaluations = grid_size;
  std::vector<std::size_t> order(grid_size);
  std::iota(order.begin(), order.end(), 0);
  const auto keep = std::min<std::size_t>(static_cast<std::size_t>(std::max(opts.grid_starts, 1)), grid_size);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) { return better(grid[a], grid[b]); });

  std::vector<Candidate> starts;
  for (std::size_t i = 0; i < keep; ++i) starts.push_back(grid[order[i]]);
  Rng rng = make_rng(opts.seed, 0);
  for (int r = 0; r < opts.random_starts; ++r) {
    Candidate cand;
    for (std::size_t k = 0; k < dims; ++k) {
      cand.z.push_back(std::uniform_real_distribution<double>(space.lo(k), space.hi(k))(rng));
    }
    std::tie(cand.value, cand.t) = space.evaluate(cand.z);
    cand.evaluations = 1;
    starts.push_back(std::move(cand));
  }

  std::vector<double> step(dims);
  for (std::size_t k = 0; k < dims; ++k) step[k] = (space.hi(k) - space.lo(k)) / static_cast<double>(res - 1);

  std::vector<Candidate> refined(starts.size());
  parallel_for(starts.size(), opts.threads, [&](std::size_t i) {
    refined[i] = starts[i].value == kInfeasible ? starts[i] : refine(space, starts[i], step, opts.refine_iterations);
  });

  Candidate best;
  for (const auto& cand : refined) {
    evaluations += cand.evaluations;
    if (best.z.empty() || better(cand, best)) best = cand;
  }

  OptimumReport r;
  r.which = c;
  r.objective = objective;
  r.evaluations = evaluations;
  if (best.value == kInfeasible) return r;
  r.argmax = space.efficiencies(best.z, best.t);
  r.flags = space.flags(best.z);
  r.numeric_value = objective_value(objective, r.argmax);
  attach_certificate(r, space.gram());

  if (objective == Objective::Sum23 || objective == Objective::Sum23Slice) {
    const auto exact = analytic_optimum(c);
    r.analytic_exact = exact.analytic_exact;
    r.analytic_value = exact.analytic_value;
    r.analytic_form = exact.analytic_form;
  }
  return r;
}

OptimumReport equal_gamma_optimum(Case c, const SearchOptions& opts) {
  OptimumReport r = numeric_search(c, Objective::Equal, opts);
  const auto corner = optimal_corner(c);
  r.analytic_value = intersection_x0(corner.q.to_double(), corner.s.to_double(), c);
  r.analytic_form = c == Case::TwoBit ? "(6-2*sqrt(2))/7" : "(124-24*sqrt(2))/127";
  return r;
}

}  // namespace probclone
