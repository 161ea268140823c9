#include <doctest.h>

#include <cmath>

#include "qutele/schemes.hpp"

using namespace qutele;

TEST_CASE("zeta1") {
  CHECK(zeta1(0.0) == 1.0);
  CHECK(zeta1(0.5) == doctest::Approx(4.64).epsilon(1e-14));
  CHECK_THROWS_AS(zeta1(1.0), Error);
  for (int i = 1; i < 99; ++i) CHECK(zeta1((i + 1) / 100.0) > zeta1(i / 100.0));
}

TEST_CASE("zeta2") {
  CHECK(zeta2(0, 0, 0).zeta == doctest::Approx(1.0));
  CHECK(zeta2(0.5, 0.5, 0.8104235651).zeta == doctest::Approx(1.6716068225).epsilon(1e-9));
  CHECK_THROWS_AS(zeta2(0.5, 1.0, 0.3), Error);
  CHECK_THROWS_AS(zeta2(0.5, 0.3, 1.0), Error);
  CHECK_THROWS_AS(zeta2(1.0, 0.3, 0.3), Error);
}

TEST_CASE("zeta3 variants") {
  for (int i = 0; i < 10; ++i) {
    const double d = i / 10.0;
    CHECK(zeta3(d, d, Zeta3Variant::Corrected).zeta == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(zeta3(0.5, 0.5, Zeta3Variant::AsPrinted).zeta == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(zeta3(0, 0, Zeta3Variant::AsPrinted).zeta == doctest::Approx(1.0));
  CHECK(zeta3(0, 0, Zeta3Variant::Corrected).zeta == doctest::Approx(1.0));
  CHECK_THROWS_AS(zeta3(1.0, 0.5), Error);
}

TEST_CASE("zeta follows (G + 2) / (3 G^2) for every scheme") {
  for (double d : {0.0, 0.2, 0.45, 0.8})
    for (double p : {0.0, 0.3, 0.9})
      for (double s : {0.0, 0.5, 0.95}) {
        CHECK(zeta2(d, p, s).zeta == doctest::Approx(zeta_from_coherence(wm_coherence(d, p, s))).epsilon(1e-12));
        CHECK(zeta3(d, s).zeta == doctest::Approx(zeta_from_coherence(eam_coherence(d, s))).epsilon(1e-12));
      }
  CHECK(zeta1(0.3) == doctest::Approx(zeta_from_coherence(plain_coherence(0.3))).epsilon(1e-14));
  // no protection reduces to the baseline
  CHECK(wm_coherence(0.37, 0.0, 0.0) == doctest::Approx(plain_coherence(0.37)).epsilon(1e-14));
}

TEST_CASE("published optimal strengths") {
  CHECK(published_optimal_strength(SchemeKind::EAM, 0.37, 0.0).value == 0.37);
  const auto wm = published_optimal_strength(SchemeKind::WM, 0.5, 0.5);
  CHECK(wm.value == doctest::Approx(1.0326457874).epsilon(1e-9));
  CHECK_FALSE(wm.in_range);
  CHECK(published_optimal_strength(SchemeKind::WM, 0.0, 0.4).value == doctest::Approx(0.6));
  CHECK(published_optimal_strength(SchemeKind::WM, 0.0, 0.4).in_range);
  CHECK_FALSE(published_optimal_strength(SchemeKind::WM, 0.0, 0.7).in_range);
  CHECK_THROWS_AS(published_optimal_strength(SchemeKind::PlainAD, 0.2, 0.2), Error);
}

TEST_CASE("numeric optimal strengths") {
  for (double d : {0.05, 0.3, 0.6, 0.9}) {
    const auto r = numeric_optimal_strength(SchemeKind::EAM, d, 0.0);
    CHECK(r.strength == doctest::Approx(d).epsilon(1e-8));
    CHECK(std::abs(r.zeta - 1.0) < 1e-10);
  }
  // G(x) = 0.25 (2x + 0.25) / (1.125 x^2 + 0.25 x + 0.125) with x = 1 - p_r at d = p = 1/2;
  // its stationary point solves 2.25 x^2 + 0.5625 x - 0.1875 = 0.
  const double x = (-0.5625 + std::sqrt(0.5625 * 0.5625 + 4 * 2.25 * 0.1875)) / (2 * 2.25);
  const auto wm = numeric_optimal_strength(SchemeKind::WM, 0.5, 0.5);
  CHECK(wm.strength == doctest::Approx(1 - x).epsilon(1e-8));
  CHECK(wm.strength == doctest::Approx(0.8104235651).epsilon(1e-9));
  CHECK(wm.zeta == doctest::Approx(1.6716068225).epsilon(1e-9));
  CHECK(wm_coherence(0.5, 0.5, wm.strength) == doctest::Approx(0.7390469783).epsilon(1e-9));

  const auto clean = numeric_optimal_strength(SchemeKind::WM, 0.0, 0.4);
  CHECK(clean.strength == doctest::Approx(0.4).epsilon(1e-7));
  CHECK(clean.zeta == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("success probabilities") {
  for (double d : {0.0, 0.25, 0.5, 0.9})
    CHECK(success_probability(SchemeKind::EAM, d, 0.0, d) == doctest::Approx(std::pow(1 - d, 4)).epsilon(1e-12));
  CHECK(success_probability(SchemeKind::EAM, 0.5, 0.0, 0.0) == doctest::Approx(0.5));
  CHECK(success_probability(SchemeKind::WM, 0.0, 0.0, 0.0) == doctest::Approx(1.0));
  CHECK(success_probability(SchemeKind::PlainAD, 0.6, 0.0, 0.0) == 1.0);
  CHECK(success_probability(SchemeKind::WM, 0.5, 0.5, 0.8104235651) ==
        doctest::Approx(0.0025495973).epsilon(1e-8));
}

TEST_CASE("Delta comparison") {
  CHECK(std::abs(delta_comparison(1e-9, 1e-9)) < 1e-6);
  const double expect = 0.0625 - success_probability(SchemeKind::WM, 0.5, 0.5, 0.8104235651) / 1.6716068225;
  CHECK(delta_comparison(0.5, 0.5) == doctest::Approx(expect).epsilon(1e-8));
  CHECK(delta_comparison(0.5, 0.5) > 0.0);
}

TEST_CASE("published variance scaling") {
  const auto b = variance_bounds(SchemeKind::WM, 1.0);
  CHECK(b.delta_ind == doctest::Approx(3 * std::sqrt(2.0) / 4).epsilon(1e-14));
  CHECK(b.delta_sim == doctest::Approx(27 * std::sqrt(2.0) / 34).epsilon(1e-14));
  CHECK(b.delta_ind == doctest::Approx(1.0607).epsilon(1e-4));
  CHECK(b.delta_sim == doctest::Approx(1.1231).epsilon(1e-4));
  CHECK(printed_ratio() == doctest::Approx(17.0 / 9.0));
}

TEST_CASE("monotone trends of the optimised WM scheme") {
  for (double d : {0.2, 0.5, 0.8}) {
    double prev = INFINITY;
    for (int i = 0; i < 20; ++i) {
      const double z = evaluate_scheme(SchemeKind::WM, d, 0.05 * i).zeta_opt;
      CHECK(z <= prev + 1e-12);
      prev = z;
    }
  }
  // zeta1 diverges as d -> 1 while EAM with q_r = d stays at 1
  CHECK(zeta1(0.999) > 1e5);
  CHECK(zeta3(0.999, 0.999).zeta == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("scheme simulation matches the closed forms") {
  const auto in = InputState::balanced(0.9, 0.1);
  for (auto kind : {SchemeKind::PlainAD, SchemeKind::WM, SchemeKind::EAM}) {
    const auto run = simulate_scheme(kind, 0.35, 0.6, 0.7, in);
    CHECK(frobenius_distance(run.output.rho_out, closed_scheme_output(kind, 0.35, 0.6, 0.7, in).rho_out) < 1e-10);
  }
  CHECK(to_string(SchemeKind::EAM) == "eam");
}
