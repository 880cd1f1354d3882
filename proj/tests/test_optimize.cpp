#include "doctest.h"

#include <cmath>

#include "probclone/optimize.hpp"

using namespace probclone;

namespace {

using R = Rational;

// Coarse brute-force oracle for max gamma_1: grid over (g2, g3) and real
// flags, bisection on g1.
double brute_force_gamma1(Case c) {
  const auto gram = cloned_state_gram(c).cast<double>();
  double best = 0.0;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      for (int a = -5; a <= 5; ++a) {
        for (int b = -5; b <= 5; ++b) {
          const auto p = FlagOverlaps<double>::real(a / 5.0, b / 5.0);
          auto ok = [&](double g1) {
            return is_psd(build_matrix(gram, Efficiencies<double>{{g1, i / 20.0, j / 20.0}}, p), 1e-12);
          };
          if (auto g1 = max_feasible(ok, 0.0, 1.0, 16, 40)) best = std::max(best, *g1);
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("optimize") {
  TEST_CASE("objective names") {
    for (auto o : {Objective::Sum23, Objective::Sum23Slice, Objective::Gamma1, Objective::Equal})
      CHECK(parse_objective(to_string(o)) == o);
    CHECK_THROWS_AS(parse_objective("gamma7"), std::invalid_argument);
    CHECK(objective_value(Objective::Sum23, Efficiencies<double>{{0.1, 0.2, 0.3}}) == doctest::Approx(0.5));
    CHECK(objective_value(Objective::Equal, Efficiencies<double>{{0.4, 0.2, 0.3}}) == doctest::Approx(0.2));
  }

  TEST_CASE("analytic optimum, three bits") {
    const auto r = analytic_optimum(Case::ThreeBit);
    REQUIRE(r.argmax_exact);
    CHECK(r.argmax_exact->gamma[0] == R(7, 127));
    CHECK(r.argmax_exact->gamma[1] == R(112, 127));
    CHECK(r.argmax_exact->gamma[2] == R(112, 127));
    CHECK(*r.analytic_exact == R(224, 127));
    CHECK(optimal_corner(Case::ThreeBit).q == R(-1, 16));
    CHECK(optimal_corner(Case::ThreeBit).s == R(127, 128));
    REQUIRE(r.exact_certificate);
    CHECK(principal_minors(r.exact_certificate->m)[6] == R(0));
    CHECK(r.exact_certificate_psd);
    CHECK(r.certificate_psd);
  }

  TEST_CASE("analytic optimum, two bits") {
    const auto r = analytic_optimum(Case::TwoBit);
    CHECK(r.argmax_exact->gamma[0] == R(1, 7));
    CHECK(r.argmax_exact->gamma[1] == R(4, 7));
    CHECK(r.argmax_exact->gamma[2] == R(4, 7));
    CHECK(*r.analytic_exact == R(8, 7));
    CHECK(principal_minors(r.exact_certificate->m)[6] == R(0));
    CHECK(r.exact_certificate_psd);
  }

  TEST_CASE("max_feasible") {
    CHECK(*max_feasible([](double t) { return t <= 0.3; }, 0.0, 1.0) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(*max_feasible([](double) { return true; }, 0.0, 1.0) == 1.0);
    CHECK_FALSE(max_feasible([](double) { return false; }, 0.0, 1.0).has_value());
  }

  TEST_CASE("numeric search reaches the slice optimum") {
    for (Case c : {Case::TwoBit, Case::ThreeBit}) {
      const auto r = numeric_search(c, Objective::Sum23Slice);
      REQUIRE(r.numeric_value);
      CHECK(*r.numeric_value == doctest::Approx(*r.analytic_value).epsilon(1e-9));
      CHECK(*r.numeric_value <= *r.analytic_value + 1e-9);
      CHECK(r.argmax[1] >= (c == Case::TwoBit ? 0.571228 : 0.88188));
      CHECK(r.certificate_psd);
    }
  }

  TEST_CASE("off-slice search does not beat the slice optimum") {
    for (Case c : {Case::TwoBit, Case::ThreeBit}) {
      const auto r = numeric_search(c, Objective::Sum23);
      REQUIRE(r.numeric_value);
      CHECK(*r.numeric_value <= *r.analytic_value + 1e-9);
      CHECK(*r.numeric_value >= *r.analytic_value - 1e-6);
    }
  }

  TEST_CASE("complex flags do not help") {
    SearchOptions opts;
    opts.complex_flags = true;
    opts.resolution = 8;
    const auto r = numeric_search(Case::TwoBit, Objective::Sum23Slice, opts);
    CHECK(*r.numeric_value <= *r.analytic_value + 1e-9);
  }

  TEST_CASE("gamma1 alone matches a brute-force scan") {
    for (Case c : {Case::TwoBit, Case::ThreeBit}) {
      const auto r = numeric_search(c, Objective::Gamma1);
      const double scan = brute_force_gamma1(c);
      CHECK(*r.numeric_value >= scan - 1e-9);
      CHECK(r.certificate_psd);
      // the search settles on the mirror image of the slice optimum
      CHECK(*r.numeric_value == doctest::Approx(c == Case::TwoBit ? 4.0 / 7.0 : 112.0 / 127.0).epsilon(1e-7));
    }
  }

  TEST_CASE("equal-efficiency optimum") {
    const auto r2 = equal_gamma_optimum(Case::TwoBit);
    CHECK(std::abs(*r2.numeric_value - (1.0 - (2.0 * std::sqrt(2.0) + 1.0) / 7.0)) <= 1e-9);
    CHECK(std::abs(*r2.analytic_value - (6.0 - 2.0 * std::sqrt(2.0)) / 7.0) <= 1e-15);
    CHECK(r2.certificate_psd);
    const auto r3 = equal_gamma_optimum(Case::ThreeBit);
    CHECK(std::abs(*r3.numeric_value - (124.0 - 24.0 * std::sqrt(2.0)) / 127.0) <= 1e-9);
    CHECK(r3.certificate_psd);
    // pushing the common value up breaks feasibility
    auto bumped = r2.argmax;
    for (auto& g : bumped.gamma) g += 1e-6;
    CHECK_FALSE(is_psd(build_matrix(cloned_state_gram(Case::TwoBit).cast<double>(), bumped, r2.flags)));
  }

  TEST_CASE("search is deterministic and thread-count independent") {
    SearchOptions one;
    SearchOptions four;
    four.threads = 4;
    const auto a = numeric_search(Case::ThreeBit, Objective::Sum23, one);
    const auto b = numeric_search(Case::ThreeBit, Objective::Sum23, one);
    const auto c = numeric_search(Case::ThreeBit, Objective::Sum23, four);
    CHECK(*a.numeric_value == *b.numeric_value);
    CHECK(*a.numeric_value == *c.numeric_value);
    CHECK(a.argmax.gamma == c.argmax.gamma);
    CHECK(a.evaluations == c.evaluations);
  }

  TEST_CASE("invalid options") {
    SearchOptions bad;
    bad.resolution = 3;
    CHECK_THROWS_AS(numeric_search(Case::TwoBit, Objective::Sum23, bad), std::invalid_argument);
  }
}
