#include "probclone/gamesim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "probclone/phasestate.hpp"
#include "probclone/random.hpp"

namespace probclone {

Rational chance_term(Case c) {
  const auto n = static_cast<std::int64_t>(FunctionSpace::get(c).pair_sets.size());
  return Rational(1, n * n);
}

Rational score_no_clone_exact(Case c) { return Rational(2, 3) + Rational(1, 3) * chance_term(c); }

namespace {

template <typename Scalar>
CloneScore<Scalar> clone_score(const Efficiencies<Scalar>& eff, const Scalar& chance) {
  const Scalar total = eff.sum();
  const Scalar p_success = total / Scalar(3);
  if (total == Scalar(3)) return {Scalar(1), p_success, std::nullopt};
  const Scalar posterior = (Scalar(1) - eff[0]) / (Scalar(3) - total);
  const Scalar score =
      p_success + (Scalar(1) - p_success) * (posterior + (Scalar(1) - posterior) * chance);
  return {score, p_success, posterior};
}

}  // namespace

CloneScore<Rational> score_clone_exact(const Efficiencies<Rational>& eff, Case c) {
  eff.validate();
  return clone_score(eff, chance_term(c));
}

CloneScore<double> score_clone(const Efficiencies<double>& eff, Case c) {
  eff.validate();
  return clone_score(eff, chance_term(c).to_double());
}

Rational score_clone_closed_form(const Efficiencies<Rational>& eff, Case c) {
  const Rational t = eff[1] + eff[2];
  if (c == Case::ThreeBit) return (Rational(22) + Rational(21) * t) / Rational(64);
  return (Rational(6) + Rational(5) * t) / Rational(16);
}

namespace {

// ---- exact enumeration --------------------------------------------------

/// P(the measured guess of the pair set of f0 ^ fi is right) when f0 is
/// assumed to be `guess` and fi is measured in the basis of candidates(guess).
Rational exact_wrong_or_right_branch(const FunctionSpace& space, std::size_t guess, const BooleanFunction& f0,
                                     const BooleanFunction& fi) {
  const auto& g0 = space.s_f0.members[guess];
  const auto& basis = space.candidate_sets[guess].members;
  const auto truth = space.pair_set_of(f0 ^ fi);
  const SignVector state = phase_signs(fi);
  Rational p = 0;
  for (const auto& b : basis) {
    if (space.pair_set_of(g0 ^ b) != truth) continue;
    const Rational amp = inner(phase_signs(b), state);
    p += amp * amp;
  }
  return p;
}

/// P(correct) for one branch after a successful clone.
Rational exact_clone_branch(const FunctionSpace& space, const BooleanFunction& f0, const BooleanFunction& fi) {
  const SignVector state = apply_phase_oracle(phase_signs(f0), fi);
  const auto truth = space.pair_set_of(f0 ^ fi);
  Rational p = 0;
  for (std::size_t k = 0; k < space.pair_sets.size(); ++k) {
    if (truth != k) continue;
    const Rational amp = inner(phase_signs(space.pair_sets[k].members.front()), state);
    p += amp * amp;
  }
  return p;
}

std::size_t query_guess(const FunctionSpace& space, const BooleanFunction& f0) {
  const std::size_t x = space.query_input;
  return space.s_f0.members[1](x) == f0(x) ? 1 : 2;
}

template <typename PerInstance>
Rational enumerate(const FunctionSpace& space, PerInstance&& per_instance) {
  Rational total = 0;
  const Rational w0(1, static_cast<std::int64_t>(space.s_f0.size()));
  for (std::size_t i = 0; i < space.s_f0.size(); ++i) {
    const auto& cands = space.candidate_sets[i].members;
    const auto n = static_cast<std::int64_t>(cands.size());
    const Rational w = w0 * Rational(1, n * n);
    for (const auto& f1 : cands) {
      for (const auto& f2 : cands) total += w * per_instance(i, f1, f2);
    }
  }
  return total;
}

}  // namespace

Rational enumerate_no_clone(Case c) {
  const auto& space = FunctionSpace::get(c);
  return enumerate(space, [&](std::size_t i, const BooleanFunction& f1, const BooleanFunction& f2) {
    const auto& f0 = space.s_f0.members[i];
    const std::size_t g = query_guess(space, f0);
    return exact_wrong_or_right_branch(space, g, f0, f1) * exact_wrong_or_right_branch(space, g, f0, f2);
  });
}

Rational enumerate_clone(const Efficiencies<Rational>& eff, Case c) {
  eff.validate();
  const auto& space = FunctionSpace::get(c);
  return enumerate(space, [&](std::size_t i, const BooleanFunction& f1, const BooleanFunction& f2) {
    const auto& f0 = space.s_f0.members[i];
    const Rational success = exact_clone_branch(space, f0, f1) * exact_clone_branch(space, f0, f2);
    const Rational failure =
        exact_wrong_or_right_branch(space, 0, f0, f1) * exact_wrong_or_right_branch(space, 0, f0, f2);
    return eff[i] * success + (Rational(1) - eff[i]) * failure;
  });
}

namespace {

// ---- Monte Carlo ----------------------------------------------------------

constexpr std::uint64_t kBlockTrials = 1024;

struct Tally {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t first_trials = 0;
  std::uint64_t first_successes = 0;
  std::uint64_t clone_successes = 0;
  std::uint64_t clone_success_errors = 0;
  std::uint64_t clone_failures = 0;
  std::uint64_t failures_with_first = 0;

  Tally& operator+=(const Tally& o) {
    trials += o.trials;
    successes += o.successes;
    first_trials += o.first_trials;
    first_successes += o.first_successes;
    clone_successes += o.clone_successes;
    clone_success_errors += o.clone_success_errors;
    clone_failures += o.clone_failures;
    failures_with_first += o.failures_with_first;
    return *this;
  }
};

/// Circuits and measurements shared by both strategies.
class Game {
 public:
  explicit Game(Case c) : space_(FunctionSpace::get(c)), pair_basis_(representatives(space_)) {
    for (const auto& cands : space_.candidate_sets) bases_.emplace_back(phase_states(cands.members));
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << space_.arity);
    uniform_ = StateVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  }

  const FunctionSpace& space() const { return space_; }

  /// One query of f on the uniform superposition.
  StateVector query(const BooleanFunction& f) const { return apply_phase_oracle(uniform_, f); }

  /// Assume f0 = S_f0[guess], measure the fi query in the candidates(guess)
  /// basis and map the outcome to a pair-set guess.
  bool guess_via_candidates(std::size_t guess, const BooleanFunction& f0, const BooleanFunction& fi,
                            Rng& rng) const {
    const auto& basis = bases_[guess];
    const std::size_t j = basis.measure(query(fi), rng);
    if (j == basis.outside()) return false;
    const auto& g0 = space_.s_f0.members[guess];
    return space_.pair_set_of(g0 ^ space_.candidate_sets[guess].members[j]) == space_.pair_set_of(f0 ^ fi);
  }

  /// Successful clone: the copy of the f0 state goes through the fi oracle and
  /// is measured in the pair-set representative basis.
  bool guess_via_clone(const StateVector& clone, const BooleanFunction& f0, const BooleanFunction& fi,
                       Rng& rng) const {
    const std::size_t j = pair_basis_.measure(apply_phase_oracle(clone, fi), rng);
    return j != pair_basis_.outside() && space_.pair_set_of(f0 ^ fi) == j;
  }

 private:
  static std::vector<StateVector> representatives(const FunctionSpace& space) {
    std::vector<StateVector> out;
    for (const auto& pair : space.pair_sets) out.push_back(phase_state(pair.members.front()));
    return out;
  }

  const FunctionSpace& space_;
  Discriminator pair_basis_;
  std::vector<Discriminator> bases_;
  StateVector uniform_;
};

template <typename Trial>
Tally run_blocks(const SimOptions& opts, Trial&& trial) {
  if (opts.trials == 0) throw std::invalid_argument("trials must be at least 1");
  const std::uint64_t blocks = (opts.trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<Tally> per_block(blocks);
  auto work = [&](std::uint64_t b) {
    Rng rng = make_rng(opts.seed, b);
    const std::uint64_t n = std::min(kBlockTrials, opts.trials - b * kBlockTrials);
    Tally t;
    for (std::uint64_t k = 0; k < n; ++k) trial(rng, t);
    per_block[b] = t;
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(blocks)));
  if (threads == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) work(b);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < blocks; b += threads) work(b);
      });
    }
  }
  Tally total;
  for (const auto& t : per_block) total += t;
  return total;
}

ScoreReport finish(std::string strategy, Case c, const SimOptions& opts, const Tally& t, double exact) {
  ScoreReport r;
  r.strategy = std::move(strategy);
  r.which = c;
  r.exact_decimal = exact;
  r.trials = t.trials;
  r.successes = t.successes;
  r.seed = opts.seed;
  const auto n = static_cast<double>(t.trials);
  r.simulated = static_cast<double>(t.successes) / n;
  r.stderr_ = std::sqrt(r.simulated * (1.0 - r.simulated) / n);
  r.sigma = std::sqrt(std::max(0.0, exact * (1.0 - exact)) / n);
  r.within_3sigma = std::abs(r.simulated - exact) <= 3.0 * r.sigma;
  r.first_trials = t.first_trials;
  r.first_successes = t.first_successes;
  r.other_trials = t.trials - t.first_trials;
  r.other_successes = t.successes - t.first_successes;
  r.clone_successes = t.clone_successes;
  r.clone_success_errors = t.clone_success_errors;
  r.clone_failures = t.clone_failures;
  r.failures_with_first = t.failures_with_first;
  return r;
}

void record(Tally& t, std::size_t f0_index, bool won) {
  ++t.trials;
  t.successes += won;
  if (f0_index == 0) {
    ++t.first_trials;
    t.first_successes += won;
  }
}

Tally run_clone(const Efficiencies<double>& eff, Case c, const SimOptions& opts) {
  eff.validate();
  const Game game(c);
  const auto& space = game.space();
  return run_blocks(opts, [&](Rng& rng, Tally& t) {
    const TaskInstance inst = sample_instance(space, rng);
    const std::size_t i = *space.s_f0.index_of(inst.f0);
    const bool cloned = std::bernoulli_distribution(eff[i])(rng);
    bool won;
    if (cloned) {
      const StateVector clone = game.query(inst.f0);
      const bool ok1 = game.guess_via_clone(clone, inst.f0, inst.f1, rng);
      const bool ok2 = game.guess_via_clone(clone, inst.f0, inst.f2, rng);
      won = ok1 && ok2;
      ++t.clone_successes;
      t.clone_success_errors += !won;
    } else {
      const bool ok1 = game.guess_via_candidates(0, inst.f0, inst.f1, rng);
      const bool ok2 = game.guess_via_candidates(0, inst.f0, inst.f2, rng);
      won = ok1 && ok2;
      ++t.clone_failures;
      t.failures_with_first += (i == 0);
    }
    record(t, i, won);
  });
}

}  // namespace

ScoreReport simulate_no_clone(Case c, const SimOptions& opts) {
  const Game game(c);
  const auto& space = game.space();
  const Tally t = run_blocks(opts, [&](Rng& rng, Tally& tally) {
    const TaskInstance inst = sample_instance(space, rng);
    const std::size_t i = *space.s_f0.index_of(inst.f0);
    // one classical call of f0 at the distinguishing input
    const std::size_t guess = query_guess(space, inst.f0);
    const bool ok1 = game.guess_via_candidates(guess, inst.f0, inst.f1, rng);
    const bool ok2 = game.guess_via_candidates(guess, inst.f0, inst.f2, rng);
    record(tally, i, ok1 && ok2);
  });
  const Rational exact = score_no_clone_exact(c);
  ScoreReport r = finish("noclone", c, opts, t, exact.to_double());
  r.exact = exact;
  r.enumerated = enumerate_no_clone(c);
  return r;
}

ScoreReport simulate_clone(const Efficiencies<Rational>& eff, Case c, const SimOptions& opts) {
  const auto score = score_clone_exact(eff, c);
  ScoreReport r = finish("clone", c, opts, run_clone(eff.cast<double>(), c, opts), score.score.to_double());
  r.exact = score.score;
  r.enumerated = enumerate_clone(eff, c);
  r.p_success = score.p_success.to_double();
  if (score.posterior) r.posterior = score.posterior->to_double();
  return r;
}

ScoreReport simulate_clone(const Efficiencies<double>& eff, Case c, const SimOptions& opts) {
  const auto score = score_clone(eff, c);
  ScoreReport r = finish("clone", c, opts, run_clone(eff, c, opts), score.score);
  r.p_success = score.p_success;
  r.posterior = score.posterior;
  return r;
}

}  // namespace probclone
