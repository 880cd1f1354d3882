#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "probclone/feasibility.hpp"
#include "probclone/funcspace.hpp"
#include "probclone/rational.hpp"

namespace probclone {

enum class Objective {
  Sum23,       ///< gamma_2 + gamma_3, unrestricted
  Sum23Slice,  ///< gamma_2 + gamma_3 with gamma_2 = gamma_3
  Gamma1,      ///< gamma_1 alone
  Equal,       ///< common value of gamma_1 = gamma_2 = gamma_3
};

std::string_view to_string(Objective o);
/// "sum23", "sum23-slice", "gamma1", "equal"
Objective parse_objective(std::string_view text);

double objective_value(Objective o, const Efficiencies<double>& eff);

struct SearchOptions {
  int resolution = 12;         ///< grid nodes per search coordinate (>= 8)
  int refine_iterations = 40;  ///< pattern-search step halvings
  int grid_starts = 4;         ///< best grid points handed to refinement
  int random_starts = 4;       ///< extra uniformly random refinement starts
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool complex_flags = false;  ///< also search Im P12, Im P13
  double tol = 1e-12;          ///< PSD tolerance used while searching
};

struct OptimumReport {
  Case which = Case::ThreeBit;
  Objective objective = Objective::Sum23Slice;

  /// Closed-form optimum where one is known. analytic_exact is set when it is
  /// rational; analytic_form is a human readable rendering in either case.
  std::optional<Rational> analytic_exact;
  std::optional<double> analytic_value;
  std::string analytic_form;

  std::optional<double> numeric_value;

  Efficiencies<double> argmax;
  FlagOverlaps<double> flags;
  std::optional<Efficiencies<Rational>> argmax_exact;
  std::optional<FlagOverlaps<Rational>> flags_exact;

  FeasibilityPoint<double> certificate;
  double min_eigenvalue = 0.0;
  bool certificate_psd = false;
  std::optional<FeasibilityPoint<Rational>> exact_certificate;
  bool exact_certificate_psd = false;

  std::size_t evaluations = 0;

  /// numeric_value if present, else analytic_value.
  double value() const;
};

/// Flags at which the slice optimum is attained: P12 = -1, P13 = +1 (3-bit),
/// P12 = P13 = -1 (2-bit).
FlagOverlaps<Rational> optimal_flags(Case c);

/// Corner (q, s) of the region where the slice optimum sits.
ReducedFlags<Rational> optimal_corner(Case c);

/// Slice optimum at the corner, in exact arithmetic, with its certificate.
OptimumReport analytic_optimum(Case c);

/// Grid search over the free coordinates followed by pattern-search
/// refinement. Each candidate is pushed to the feasibility boundary along the
/// objective direction before it is scored. Deterministic for fixed options.
OptimumReport numeric_search(Case c, Objective objective, const SearchOptions& opts = {});

/// Best common efficiency gamma_1 = gamma_2 = gamma_3. analytic_* holds the
/// corner value (2 + q - sqrt((2 + q)^2 - 4 c0 s)) / (2 s); numeric_value the
/// search result.
OptimumReport equal_gamma_optimum(Case c, const SearchOptions& opts = {});

/// Largest t in [lo, hi] for which feasible(t) holds, by a uniform scan
/// followed by bisection on the last feasible-to-infeasible transition.
/// Returns nullopt if no scanned point is feasible.
template <typename Pred>
std::optional<double> max_feasible(Pred&& feasible, double lo, double hi, int scan = 64, int bisect = 60) {
  std::optional<int> last;
  for (int k = scan; k >= 0; --k) {
    if (feasible(lo + (hi - lo) * k / scan)) {
      last = k;
      break;
    }
  }
  if (!last) return std::nullopt;
  if (*last == scan) return hi;
  double good = lo + (hi - lo) * *last / scan;
  double bad = lo + (hi - lo) * (*last + 1) / scan;
  for (int it = 0; it < bisect; ++it) {
    const double mid = 0.5 * (good + bad);
    (feasible(mid) ? good : bad) = mid;
  }
  return good;
}

}  // namespace probclone
