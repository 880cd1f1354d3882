#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "probclone/feasibility.hpp"
#include "probclone/funcspace.hpp"
#include "probclone/rational.hpp"

namespace probclone {

/// Probability of guessing both pair sets uniformly at random: 1/64 or 1/16.
Rational chance_term(Case c);

/// 2/3 + (1/3) * chance_term: the no-cloning strategy, with the wrong-branch
/// term taken at face value.
Rational score_no_clone_exact(Case c);

template <typename Scalar>
struct CloneScore {
  Scalar score;
  Scalar p_success;                ///< (g1 + g2 + g3) / 3
  std::optional<Scalar> posterior;  ///< P(f0 = first S_f0 member | cloning failed)
};

/// P_success + (1 - P_success) [posterior + (1 - posterior) chance].
/// When every efficiency is 1 the posterior is undefined and the score is 1.
CloneScore<Rational> score_clone_exact(const Efficiencies<Rational>& eff, Case c);
CloneScore<double> score_clone(const Efficiencies<double>& eff, Case c);

/// The simplified closed forms [22 + 21(g2 + g3)] / 64 and [6 + 5(g2 + g3)] / 16.
Rational score_clone_closed_form(const Efficiencies<Rational>& eff, Case c);

/// Exact expected score of the simulated strategies, by enumerating every
/// instance and every measurement outcome with rational overlaps. Unlike the
/// formulas above, the wrong-branch term here is whatever the measurements
/// actually give.
Rational enumerate_no_clone(Case c);
Rational enumerate_clone(const Efficiencies<Rational>& eff, Case c);

struct SimOptions {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct ScoreReport {
  std::string strategy;
  Case which = Case::ThreeBit;

  std::optional<Rational> exact;  ///< formula value, when inputs are rational
  double exact_decimal = 0.0;
  std::optional<Rational> enumerated;  ///< exact expectation of this strategy
  std::optional<double> p_success;
  std::optional<double> posterior;

  double simulated = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double stderr_ = 0.0;  ///< sqrt(p(1 - p) / n) at the simulated p
  double sigma = 0.0;    ///< same, at the exact p
  bool within_3sigma = false;
  std::uint64_t seed = 0;

  // Diagnostics. "first" means f0 is the first member of S_f0.
  std::uint64_t first_trials = 0;
  std::uint64_t first_successes = 0;
  std::uint64_t other_trials = 0;
  std::uint64_t other_successes = 0;
  std::uint64_t clone_successes = 0;
  std::uint64_t clone_success_errors = 0;  ///< wrong set guesses after a successful clone
  std::uint64_t clone_failures = 0;
  std::uint64_t failures_with_first = 0;
};

/// Classical query of f0 to pick between the two S2-side candidates, then
/// each of f1, f2 measured in the basis of candidates(guess).
ScoreReport simulate_no_clone(Case c, const SimOptions& opts = {});

/// Clone the f0 phase state with probability gamma(f0). On success both copies
/// go through the f1 / f2 oracles and are measured in the pair-set basis. On
/// failure guess f0 = first S_f0 member and proceed as without cloning.
ScoreReport simulate_clone(const Efficiencies<Rational>& eff, Case c, const SimOptions& opts = {});
ScoreReport simulate_clone(const Efficiencies<double>& eff, Case c, const SimOptions& opts = {});

}  // namespace probclone
