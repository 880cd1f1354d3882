#include "doctest.h"

#include <cmath>
#include <map>
#include <stdexcept>

#include "probclone/phasestate.hpp"

using namespace probclone;

namespace {

BooleanFunction h(std::string_view name) { return BooleanFunction::parse(name); }

// Hand-rolled overlap of two phase states: (1/2^n) sum_x (-1)^(f(x)+g(x)).
Rational overlap_by_sum(const BooleanFunction& f, const BooleanFunction& g) {
  std::int64_t total = 0;
  for (std::size_t x = 0; x < f.size(); ++x) total += (f(x) == g(x)) ? 1 : -1;
  return Rational(total, static_cast<std::int64_t>(f.size()));
}

}  // namespace

TEST_SUITE("phasestate") {
  TEST_CASE("phase state amplitudes") {
    const auto psi = phase_state(h("01000000"));
    REQUIRE(psi.size() == 8);
    const double a = 1.0 / std::sqrt(8.0);
    for (Eigen::Index x = 0; x < 8; ++x) CHECK(psi[x].real() == doctest::Approx(x == 1 ? -a : a));
    CHECK(psi.norm() == doctest::Approx(1.0));
    CHECK(sign_string(phase_signs(h("01000000"))) == "+-++++++");
  }

  TEST_CASE("sign string round trip") {
    CHECK(parse_sign_string("+-++") == phase_signs(h("0100")));
    CHECK(parse_sign_string("+−++") == phase_signs(h("0100")));
    CHECK_THROWS(parse_sign_string("+x++"));
  }

  TEST_CASE("oracle application is phase multiplication") {
    const auto f0 = h("01000000");
    const auto f1 = h("10110000");
    const auto out = apply_phase_oracle(phase_state(f0), f1);
    // componentwise sign product computed by hand
    StateVector expected(8);
    for (Eigen::Index x = 0; x < 8; ++x) {
      const int sign = (f0(x) ? -1 : 1) * (f1(x) ? -1 : 1);
      expected[x] = sign / std::sqrt(8.0);
    }
    CHECK((out - expected).norm() < 1e-15);
    CHECK(same_ray(out, phase_state(h("11110000"))));
    CHECK_THROWS_AS(apply_phase_oracle(phase_state(h("0100")), f1), std::domain_error);
  }

  TEST_CASE("complement gives the same ray") {
    for (std::uint32_t t = 0; t < 256; ++t) {
      BooleanFunction f(3, t);
      const auto u = phase_state(f);
      const auto v = phase_state(f.complement());
      CHECK(same_ray(u, v));
      CHECK(std::abs(inner(u, v) + 1.0) < 1e-14);
    }
  }

  TEST_CASE("exact overlaps match a direct sum") {
    Rng rng(3);
    std::uniform_int_distribution<std::uint32_t> pick(0, 255);
    for (int k = 0; k < 200; ++k) {
      BooleanFunction f(3, pick(rng)), g(3, pick(rng));
      const auto exact = inner(phase_signs(f), phase_signs(g));
      CHECK(exact == overlap_by_sum(f, g));
      CHECK(inner(phase_state(f), phase_state(g)).real() == doctest::Approx(exact.to_double()));
    }
  }

  TEST_CASE("candidate-state gram matrices") {
    const auto& s3 = FunctionSpace::get(Case::ThreeBit);
    const auto g3 = gram(phase_sign_vectors(s3.s_f0.members));
    RationalMatrix expected3(3, 3);
    expected3 << 1, Rational(-1, 4), Rational(1, 4), Rational(-1, 4), 1, 0, Rational(1, 4), 0, 1;
    CHECK(g3 == expected3);

    const auto& s2 = FunctionSpace::get(Case::TwoBit);
    const auto g2 = gram(phase_sign_vectors(s2.s_f0.members));
    RationalMatrix expected2(3, 3);
    expected2 << 1, Rational(-1, 2), Rational(-1, 2), Rational(-1, 2), 1, 0, Rational(-1, 2), 0, 1;
    CHECK(g2 == expected2);
  }

  TEST_CASE("S2 and S1 states are orthonormal bases") {
    for (Case c : {Case::TwoBit, Case::ThreeBit}) {
      const auto& s = FunctionSpace::get(c);
      for (const auto* set : {&s.s2, &s.s1}) {
        const auto g = gram(phase_sign_vectors(set->members));
        CHECK(g == RationalMatrix::Identity(g.rows(), g.cols()));
        const auto states = phase_states(set->members);
        const auto gf = gram(states);
        CHECK((gf - GramMatrix::Identity(gf.rows(), gf.cols())).norm() < 1e-14);
      }
    }
  }

  TEST_CASE("gram is Hermitian with unit diagonal") {
    Rng rng(11);
    std::uniform_int_distribution<std::uint32_t> pick(0, 255);
    std::vector<StateVector> states;
    for (int k = 0; k < 6; ++k) {
      StateVector v = phase_state(BooleanFunction(3, pick(rng)));
      v *= std::polar(1.0, 0.3 * k);
      states.push_back(v);
    }
    const auto g = gram(states);
    CHECK((g - g.adjoint()).norm() < 1e-14);
    for (Eigen::Index i = 0; i < g.rows(); ++i) CHECK(g(i, i).real() == doctest::Approx(1.0));
    CHECK_THROWS(gram(std::span<const StateVector>{}));
  }

  TEST_CASE("discriminator identifies basis members with certainty") {
    const auto& s = FunctionSpace::get(Case::ThreeBit);
    Discriminator d(phase_states(s.s2.members));
    Rng rng(5);
    for (std::size_t k = 0; k < s.s2.size(); ++k) {
      StateVector state = phase_state(s.s2.members[k]) * std::polar(1.0, 1.1);
      for (int rep = 0; rep < 20; ++rep) CHECK(d.measure(state, rng) == k);
      // complements land on the same element
      CHECK(d.measure(phase_state(s.s2.members[k].complement()), rng) == k);
    }
  }

  TEST_CASE("S1 state in the S2 basis: 9/16 on one element, 1/16 on the rest") {
    const auto& s = FunctionSpace::get(Case::ThreeBit);
    Discriminator d(phase_states(s.s2.members));
    for (const auto& f : s.s1.members) {
      const auto p = d.probabilities(phase_state(f));
      REQUIRE(p.size() == 9);
      std::map<Rational, int> tally;
      for (std::size_t k = 0; k < s.s2.size(); ++k) {
        const Rational exact = inner(phase_signs(s.s2.members[k]), phase_signs(f));
        const Rational prob = exact * exact;
        CHECK(p[static_cast<Eigen::Index>(k)] == doctest::Approx(prob.to_double()));
        ++tally[prob];
      }
      CHECK(tally[Rational(9, 16)] == 1);
      CHECK(tally[Rational(1, 16)] == 7);
      CHECK(p[8] == doctest::Approx(0.0));
    }
  }

  TEST_CASE("incomplete basis exposes the outside outcome") {
    const auto& s = FunctionSpace::get(Case::TwoBit);
    std::vector<BooleanFunction> half(s.s2.members.begin(), s.s2.members.begin() + 2);
    Discriminator d(phase_states(half));
    const auto p = d.probabilities(phase_state(s.s2.members[3]));
    CHECK(p[0] == doctest::Approx(0.0));
    CHECK(p[1] == doctest::Approx(0.0));
    CHECK(p[2] == doctest::Approx(1.0));
    Rng rng(1);
    CHECK(d.measure(phase_state(s.s2.members[3]), rng) == d.outside());
  }

  TEST_CASE("discriminator rejects non-orthonormal sets") {
    const auto& s = FunctionSpace::get(Case::ThreeBit);
    CHECK_THROWS_AS(Discriminator(phase_states(s.s_f0.members)), std::domain_error);
    CHECK_THROWS_AS(Discriminator(std::vector<StateVector>{}), std::domain_error);
  }

  TEST_CASE("measurement frequencies follow the Born rule") {
    const auto& s = FunctionSpace::get(Case::ThreeBit);
    Discriminator d(phase_states(s.s2.members));
    const auto state = phase_state(s.s1.members[0]);
    const auto p = d.probabilities(state);
    Rng rng(99);
    const int n = 40000;
    std::vector<int> counts(9, 0);
    for (int k = 0; k < n; ++k) ++counts[d.measure(state, rng)];
    for (int k = 0; k < 9; ++k) {
      const double pk = p[k];
      CHECK(std::abs(counts[k] / double(n) - pk) <= 4.0 * std::sqrt(pk * (1 - pk) / n) + 1e-12);
    }
  }
}
