#include <doctest.h>

#include <cmath>
#include <random>

#include "qutele/channels.hpp"
#include "qutele/teleport.hpp"
#include "test_util.hpp"

using namespace qutele;
using testutil::max_abs_diff;

namespace {

std::vector<Complex> basis(int m) {
  std::vector<Complex> v(3);
  v[m] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("ad_kraus examples and range errors") {
  const auto k0 = ad_kraus(NoiseParams::symmetric(0.0));
  REQUIRE(k0.operators.size() == 3);
  CHECK(k0.operators[0] == ComplexMatrix::identity(3));
  CHECK(frobenius_norm(k0.operators[1]) == 0.0);
  CHECK(frobenius_norm(k0.operators[2]) == 0.0);

  const auto k1 = ad_kraus(NoiseParams::symmetric(1.0));
  CHECK(k1.operators[0] == ComplexMatrix::diagonal({1.0, 0.0, 0.0}));
  CHECK(k1.operators[1](0, 1) == Complex(1.0));
  CHECK(k1.operators[2](0, 2) == Complex(1.0));

  CHECK_THROWS_AS(ad_kraus(NoiseParams{-0.1, 0.2, std::nullopt}), Error);
  CHECK_THROWS_AS(ad_kraus(NoiseParams{0.1, 1.2, std::nullopt}), Error);
  CHECK(NoiseParams::from_gamma_t(std::log(2.0)).d1 == doctest::Approx(0.5));
}

TEST_CASE("wm and qmr operator examples") {
  CHECK(wm_operator(MeasurementStrengths::symmetric(0.0, 0.0)) == ComplexMatrix::identity(3));
  CHECK(max_abs_diff(wm_operator(MeasurementStrengths::symmetric(0.5, 0.0)),
                     ComplexMatrix::diagonal({1.0, std::sqrt(0.5), std::sqrt(0.5)})) < 1e-15);
  CHECK(qmr_operator(MeasurementStrengths::symmetric(0.0, 0.0)) == ComplexMatrix::identity(3));
  CHECK(max_abs_diff(qmr_operator(MeasurementStrengths::symmetric(0.0, 0.5)),
                     ComplexMatrix::diagonal({0.5, std::sqrt(0.5), std::sqrt(0.5)})) < 1e-15);
  // p_r sits on |2>, q_r on |1>
  CHECK(max_abs_diff(qmr_operator({0, 0, 0.36, 0.64}),
                     ComplexMatrix::diagonal({std::sqrt(0.64 * 0.36), 0.6, 0.8})) < 1e-15);
  CHECK_THROWS_AS(wm_kraus({1.5, 0, 0, 0}), Error);
  CHECK_THROWS_AS(qmr_operator({0, 0, 0, -0.5}), Error);
}

TEST_CASE("Kraus completeness over a 10x10 grid") {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double a = i / 9.0, b = j / 9.0;
      worst = std::max(worst, completeness_defect(ad_kraus({a, b, std::nullopt})));
      worst = std::max(worst, completeness_defect(wm_kraus({a, b, 0.0, 0.0})));
      CHECK_NOTHROW(validate(qmr_selective({0, 0, a, b})));
      CHECK_NOTHROW(validate(wm_selective({a, b, 0, 0})));
    }
  CHECK(worst <= 1e-12);
}

TEST_CASE("gates") {
  CHECK(gate_x(0) == ComplexMatrix::identity(3));
  CHECK(max_abs_diff(ComplexMatrix::projector(apply(gate_x(1), basis(2))), ComplexMatrix::projector(basis(0))) == 0.0);
  const Complex omega = std::polar(1.0, 2.0 * M_PI / 3.0);
  CHECK(std::abs(apply(gate_z(1), basis(2))[2] - omega * omega) < 1e-15);
  CHECK(gate_x(4) == gate_x(1));
  CHECK(max_abs_diff(gate_z(-1), gate_z(2)) < 1e-15);

  const auto h0 = apply(gate_h(), basis(0));
  for (const auto& c : h0) CHECK(std::abs(c - 1.0 / std::sqrt(3.0)) < 1e-15);

  // R_C|m>|n> = |m>|n+m>, L_C undoes it
  const auto rc = gate_rc();
  CHECK(rc(3 * 1 + 2, 3 * 1 + 1) == Complex(1.0));
  for (int n = 0; n < 3; ++n) CHECK(rc(n, n) == Complex(1.0));
  CHECK(max_abs_diff(gate_lc() * rc, ComplexMatrix::identity(9)) < 1e-15);
  CHECK(max_abs_diff(gate_lc(), dagger(rc)) < 1e-15);
}

TEST_CASE("apply_channel") {
  std::mt19937 rng(5);
  const auto rho = testutil::random_density(3, rng);
  CHECK(max_abs_diff(apply_channel(rho, ad_kraus(NoiseParams::symmetric(0.0))), rho) < 1e-15);

  const auto ad = ad_kraus(NoiseParams::symmetric(0.5));
  const auto r1 = apply_channel(bell_resource(), kron(ad, ad));
  auto at = [&](int i, int j) { return r1(i - 1, j - 1).real(); };  // 1-based like the tables
  CHECK(at(1, 1) == doctest::Approx(0.5));
  for (int i : {2, 3, 4, 7, 5, 9}) CHECK(at(i, i) == doctest::Approx(1.0 / 12.0));
  CHECK(at(5, 9) == doctest::Approx(1.0 / 12.0));
  CHECK(at(1, 5) == doctest::Approx(1.0 / 6.0));
  CHECK(at(1, 9) == doctest::Approx(1.0 / 6.0));
  CHECK(at(6, 6) == doctest::Approx(0.0));
  CHECK(at(8, 8) == doctest::Approx(0.0));
  CHECK(trace(r1).real() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(apply_channel(rho, wm_selective({0.2, 0.2, 0, 0})), Error);
  CHECK_THROWS_AS(apply_channel(bell_resource(), ad), Error);
}

TEST_CASE("apply_selective") {
  std::mt19937 rng(9);
  const auto rho = testutil::random_density(9, rng);
  auto out = apply_selective(rho, ComplexMatrix::identity(9));
  CHECK(out.probability == doctest::Approx(1.0));
  CHECK(max_abs_diff(out.state, rho) < 1e-15);

  const auto m0 = wm_operator({0, 0, 0, 0});
  out = apply_selective(rho, kron(m0, m0));
  CHECK(out.probability == doctest::Approx(1.0));

  const auto mr = qmr_operator(MeasurementStrengths::symmetric(0.0, 0.5));
  out = apply_selective(Complex(1.0 / 9.0) * ComplexMatrix::identity(9), kron(mr, mr));
  CHECK(out.probability == doctest::Approx(1.25 * 1.25 / 9.0).epsilon(1e-14));
  CHECK(trace(out.state).real() == doctest::Approx(1.0));

  // unnormalised weights over the full POVM add back to rho
  const auto povm = wm_kraus({0.3, 0.6, 0, 0});
  ComplexMatrix sum(3);
  const auto r3 = testutil::random_density(3, rng);
  for (const auto& k : povm.operators) {
    const auto o = apply_selective(r3, k);
    sum += Complex(o.probability) * o.state;
  }
  CHECK(max_abs_diff(sum, apply_channel(r3, povm)) < 1e-14);

  try {
    apply_selective(ComplexMatrix::diagonal({0.0, 1.0, 0.0}), ComplexMatrix::diagonal({1.0, 0.0, 0.0}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("vanishing probability") != std::string::npos);
  }
  CHECK_THROWS_AS(apply_selective(rho, Complex(2.0) * ComplexMatrix::identity(9)), Error);
}
