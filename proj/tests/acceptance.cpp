// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance 3 5        run only the listed criteria
//
// Exit status is 0 iff every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "probclone/feasibility.hpp"
#include "probclone/funcspace.hpp"
#include "probclone/gamesim.hpp"
#include "probclone/optimize.hpp"
#include "probclone/phasestate.hpp"
#include "probclone/random.hpp"
#include "probclone/rational.hpp"

using namespace probclone;
using R = Rational;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "] ";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Efficiencies<R> expected_optimum(Case c) {
  return c == Case::ThreeBit ? Efficiencies<R>{{R(7, 127), R(112, 127), R(112, 127)}}
                             : Efficiencies<R>{{R(1, 7), R(4, 7), R(4, 7)}};
}

void exact_optima(Outcome& o) {
  const auto t0 = Clock::now();
  for (Case c : {Case::ThreeBit, Case::TwoBit}) {
    const auto r = analytic_optimum(c);
    const auto& g = r.argmax_exact->gamma;
    o.detail << to_string(c) << " (" << g[0] << ", " << g[1] << ", " << g[2] << ") ";
    o.require(g == expected_optimum(c).gamma, std::string(to_string(c)) + " optimum");
  }
  const double dt = seconds_since(t0);
  o.detail << "in " << dt << " s";
  o.require(dt < 1.0, "runtime < 1 s");
}

void boundary_certification(Outcome& o) {
  for (Case c : {Case::ThreeBit, Case::TwoBit}) {
    const auto gram = cloned_state_gram(c);
    const auto flags = optimal_flags(c);
    const auto pt = build_matrix(gram, expected_optimum(c), flags);
    const R det = principal_minors(pt.m)[6];
    o.detail << to_string(c) << ": det " << det << ", psd " << is_psd(pt);
    o.require(det == R(0), "det exactly 0");
    o.require(is_psd(pt), "exact PSD");

    auto bumped = expected_optimum(c);
    bumped.gamma[1] += R(1, 10000);
    bumped.gamma[2] += R(1, 10000);
    const auto up = build_matrix(gram.cast<double>(), bumped.cast<double>(), flags.cast<double>());
    o.detail << ", +1e-4 min eig " << min_eigenvalue(up.m) << "; ";
    o.require(!is_psd(up), "perturbed point infeasible");
  }
}

void numeric_parity(Outcome& o) {
  for (Case c : {Case::TwoBit, Case::ThreeBit}) {
    const auto t0 = Clock::now();
    const auto r = numeric_search(c, Objective::Sum23Slice);
    const double dt = seconds_since(t0);
    const double g2 = r.argmax[1];
    const double threshold = c == Case::TwoBit ? 0.571228 : 0.88188;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s gamma2 %.9f (>= %g) in %.2f s; ", std::string(to_string(c)).c_str(), g2,
                  threshold, dt);
    o.detail << buf;
    o.require(g2 >= threshold, "gamma2 threshold");
    o.require(r.certificate_psd, "numeric certificate");
    o.require(dt < 60.0, "runtime < 60 s");
  }
}

void exact_scores(Outcome& o) {
  const R p1 = score_no_clone_exact(Case::ThreeBit);
  const auto p2 = score_clone_exact(expected_optimum(Case::ThreeBit), Case::ThreeBit);
  o.detail << "p1 " << p1 << ", p2 " << p2.score << ", P_success " << p2.p_success << ", posterior "
           << *p2.posterior;
  o.require(p1 == R(43, 64), "p1 = 43/64");
  o.require(p2.score == R(3749, 4064), "p2 = 3749/4064");
  o.require(p2.p_success == R(77, 127), "P_success = 77/127");
  o.require(*p2.posterior == R(4, 5), "posterior = 4/5");
}

void simulated_scores(Outcome& o) {
  // "any seed" is checked on a fixed panel of seeds.
  constexpr int kSeeds = 20;
  struct Run {
    const char* name;
    std::function<ScoreReport(const SimOptions&)> run;
  };
  const std::vector<Run> runs = {
      {"noclone/2bit", [](const SimOptions& s) { return simulate_no_clone(Case::TwoBit, s); }},
      {"clone/2bit", [](const SimOptions& s) { return simulate_clone(expected_optimum(Case::TwoBit), Case::TwoBit, s); }},
      {"noclone/3bit", [](const SimOptions& s) { return simulate_no_clone(Case::ThreeBit, s); }},
      {"clone/3bit",
       [](const SimOptions& s) { return simulate_clone(expected_optimum(Case::ThreeBit), Case::ThreeBit, s); }},
  };
  double slowest = 0.0;
  for (const auto& run : runs) {
    int passed = 0, near_enumerated = 0;
    double worst = 0.0, bias = 0.0;
    for (int seed = 0; seed < kSeeds; ++seed) {
      SimOptions opts;
      opts.trials = 100000;
      opts.seed = static_cast<std::uint64_t>(seed);
      const auto t0 = Clock::now();
      const auto r = run.run(opts);
      slowest = std::max(slowest, seconds_since(t0));
      passed += r.within_3sigma;
      near_enumerated += std::abs(r.simulated - r.enumerated->to_double()) <= 3.0 * r.sigma;
      worst = std::max(worst, std::abs(r.simulated - r.exact_decimal) / r.sigma);
      bias = (r.enumerated->to_double() - r.exact_decimal) / r.sigma;
    }
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "%s %d/%d seeds within 3 sigma of the formula (worst %.2f sigma; strategy expectation is %+.2f "
                  "sigma off the formula, %d/%d seeds within 3 sigma of it); ",
                  run.name, passed, kSeeds, worst, bias, near_enumerated, kSeeds);
    o.detail << buf;
    o.require(passed == kSeeds, std::string(run.name) + " all seeds");
  }
  o.detail << "slowest run " << slowest << " s";
  o.require(slowest < 10.0, "runtime < 10 s");
}

void orthogonality(Outcome& o) {
  const auto& s3 = FunctionSpace::get(Case::ThreeBit);
  const auto g8 = gram(phase_sign_vectors(s3.s2.members));
  o.require(g8 == RationalMatrix::Identity(8, 8), "eight-state Gram = identity");
  const auto g3 = gram(phase_sign_vectors(s3.s_f0.members));
  RationalMatrix expected(3, 3);
  expected << 1, R(-1, 4), R(1, 4), R(-1, 4), 1, 0, R(1, 4), 0, 1;
  o.require(g3 == expected, "Psi Gram matrix");
  o.detail << "8x8 identity " << (g8 == RationalMatrix::Identity(8, 8)) << ", Psi off-diagonals (" << g3(0, 1)
           << ", " << g3(0, 2) << ", " << g3(1, 2) << ")";
}

void reduced_formulas(Outcome& o) {
  const R x3 = stationary_x1(R(-1, 16), R(127, 128), Case::ThreeBit);
  const R x2 = stationary_x1(R(-1, 2), R(7, 8), Case::TwoBit);
  o.detail << "x1 = " << x3 << " (3bit), " << x2 << " (2bit)";
  o.require(x3 == R(28, 127), "x1 3-bit");
  o.require(x2 == R(2, 7), "x1 2-bit");
  Rng rng(make_rng(2718, 0));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    // random valid (x, y): y >= 2x >= 0 with both gammas in [0, 1]
    double g1 = u(rng), g2 = u(rng);
    if (g1 > g2) std::swap(g1, g2);
    const double x = std::sqrt(g1 * g2), y = g1 + g2;
    const auto [a, b] = gammas_from_xy(x, y);
    worst = std::max({worst, std::abs(std::sqrt(a * b) - x), std::abs(a + b - y)});
  }
  o.detail << ", gammas_from_xy worst error " << worst;
  o.require(worst <= 1e-12, "gammas_from_xy inversion");
}

void range_invariants(Outcome& o) {
  Rng rng(make_rng(314159, 0));
  std::uniform_real_distribution<double> u(0.0, 1.0), phase(0.0, 2.0 * M_PI);
  auto draw = [&] {
    const double r = std::sqrt(u(rng)), t = phase(rng);
    return Complex<double>{r * std::cos(t), r * std::sin(t)};
  };
  long violations = 0;
  constexpr int kSamples = 100000;
  for (int k = 0; k < kSamples; ++k) {
    FlagOverlaps<double> p{draw(), draw(), draw()};
    if (k % 10 == 0) p = FlagOverlaps<double>::real(k % 20 ? -1.0 : 1.0, u(rng) < 0.5 ? -1.0 : 1.0);  // corners
    for (Case c : {Case::ThreeBit, Case::TwoBit}) {
      const auto r = reduce(p, c);
      const double eps = 1e-15;
      const bool ok = std::abs(r.q) <= q_bound<double>(c) + eps && r.s >= s_min<double>(c) - eps &&
                      r.s <= s_max(c, r.q) + eps;
      violations += !ok;
    }
  }
  o.detail << kSamples << " samples per case, " << violations << " outside the region";
  o.require(violations == 0, "reduce stays in range");
}

void equal_point(Outcome& o) {
  const auto r = equal_gamma_optimum(Case::TwoBit);
  const double target = 1.0 - (2.0 * std::sqrt(2.0) + 1.0) / 7.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "numeric %.12f vs %.12f (diff %.2e), min eig %.2e", *r.numeric_value, target,
                *r.numeric_value - target, r.min_eigenvalue);
  o.detail << buf;
  o.require(std::abs(*r.numeric_value - target) <= 1e-9, "within 1e-9");
  o.require(r.certificate_psd, "certificate");
}

void headline(Outcome& o) {
  for (Case c : {Case::ThreeBit, Case::TwoBit}) {
    const R p1 = score_no_clone_exact(c);
    const R p2 = score_clone_exact(expected_optimum(c), c).score;
    char buf[120];
    std::snprintf(buf, sizeof buf, "%s p2 %.6f > p1 %.6f; ", std::string(to_string(c)).c_str(), p2.to_double(),
                  p1.to_double());
    o.detail << buf;
    o.require(p1 < p2, std::string(to_string(c)) + " p2 > p1");
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, void (*)(Outcome&)>> criteria = {
      {"exact optima", exact_optima},
      {"boundary certification", boundary_certification},
      {"numerical-search parity", numeric_parity},
      {"exact scores", exact_scores},
      {"simulated scores", simulated_scores},
      {"orthogonality", orthogonality},
      {"reduced-coordinate formulas", reduced_formulas},
      {"range invariants", range_invariants},
      {"equal-efficiency point", equal_point},
      {"headline inequality", headline},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failures += !o.pass;
    std::printf("%s  criterion %2d  %-28s %s\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
