#include <doctest.h>

#include <cmath>
#include <random>

#include "qutele/metrology.hpp"
#include "qutele/schemes.hpp"
#include "qutele/verify.hpp"
#include "test_util.hpp"

using namespace qutele;
using testutil::max_abs_diff;

namespace {

ComplexMatrix sqrt_psd(const ComplexMatrix& a) {
  const auto es = hermitian_eig(a);
  ComplexMatrix out(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k)
    out += Complex(std::sqrt(std::max(0.0, es.eigenvalues[k]))) * ComplexMatrix::projector(es.vector(k));
  return out;
}

double root_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  const auto s = sqrt_psd(rho);
  return trace(sqrt_psd(s * sigma * s)).real();
}

// v^T F v from the Bures metric: 2 (1 - f(rho, rho + eps v)) ~ eps^2 v^T F v / 4,
// symmetrised over +-eps.
double bures_quadratic(const PhaseFamily& fam, double v1, double v2) {
  const double eps = 1e-3;
  const auto [a, b] = fam.base_point;
  const auto rho = fam.at_base();
  const double plus = 2 * (1 - root_fidelity(rho, fam.generator(a + eps * v1, b + eps * v2)));
  const double minus = 2 * (1 - root_fidelity(rho, fam.generator(a - eps * v1, b - eps * v2)));
  return 4 * 0.5 * (plus + minus) / (eps * eps);
}

Qfim2 bures_oracle(const PhaseFamily& fam) {
  const double q11 = bures_quadratic(fam, 1, 0);
  const double q22 = bures_quadratic(fam, 0, 1);
  const double q12 = 0.5 * (bures_quadratic(fam, 1, 1) - q11 - q22);
  return {q11, q12, q12, q22};
}

double qdist(const Qfim2& a, const Qfim2& b) {
  return std::max({std::abs(a.f11 - b.f11), std::abs(a.f12 - b.f12), std::abs(a.f21 - b.f21), std::abs(a.f22 - b.f22)});
}

}  // namespace

TEST_CASE("d_rho of a constant family vanishes") {
  PhaseFamily fam{[](double, double) { return ComplexMatrix::identity(3); }, {0.4, 0.2}, {}};
  CHECK(frobenius_norm(d_rho(fam, 0)) == 0.0);
  CHECK(frobenius_norm(d_rho(fam, 1)) == 0.0);
}

TEST_CASE("finite differences agree with the exact phase derivative") {
  const auto resource = prepare_plain(NoiseParams::symmetric(0.4)).rho;
  for (const auto& in : generic_inputs()) {
    const auto fam = teleported_family(resource, in);
    for (int w : {0, 1})
      CHECK(max_abs_diff(d_rho(fam, w), phase_covariant_derivative(fam.at_base(), w)) < 1e-7);
  }
}

TEST_CASE("pure noiseless output") {
  const auto in = InputState::balanced(kDefaultPhi1, kDefaultPhi2);
  const auto f = qfim(teleported_family(bell_resource(), in));
  CHECK(f.f11 == doctest::Approx(8.0 / 9.0).epsilon(1e-7));
  CHECK(f.f12 == doctest::Approx(-4.0 / 9.0).epsilon(1e-7));
  CHECK(f.f22 == doctest::Approx(8.0 / 9.0).epsilon(1e-7));
  const auto b = bounds(f);
  CHECK(b.delta_ind == doctest::Approx(2.25).epsilon(1e-6));
  CHECK(b.delta_sim == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(b.ratio_r == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("depolarised family") {
  const double g = 5.0 / 12.0;
  const auto f = qfim(depolarized_family(g, kDefaultPhi1, kDefaultPhi2));
  const double scale = 4 * g * g / (3 * (2 + g));
  CHECK(f.f11 == doctest::Approx(2 * scale).epsilon(1e-10));
  CHECK(f.f11 == doctest::Approx(0.1916).epsilon(1e-3));
  CHECK(f.f12 == doctest::Approx(-scale).epsilon(1e-10));
  const auto b = bounds(f);
  CHECK(b.delta_sim == doctest::Approx((g + 2) / (g * g)).epsilon(1e-9));
  CHECK(b.delta_ind == doctest::Approx(0.75 * (g + 2) / (g * g)).epsilon(1e-9));
  // phases do not matter
  CHECK(qdist(qfim(depolarized_family(g, 2.0, 0.1)), f) < 1e-12);
}

TEST_CASE("QFIM agrees with the Bures-metric oracle") {
  SUBCASE("full rank, nondegenerate") {
    const auto resource = prepare_wm(NoiseParams::symmetric(0.3), MeasurementStrengths::symmetric(0.4, 0.6)).rho;
    const auto fam = teleported_family(resource, generic_inputs()[1]);
    const auto f = qfim(fam);
    CHECK(qdist(f, bures_oracle(fam)) < 1e-4 * std::max(1.0, std::abs(f.f11)));
  }
  SUBCASE("degenerate spectrum") {
    const auto fam = depolarized_family(0.6, 0.5, 1.3);
    CHECK(qdist(qfim(fam), bures_oracle(fam)) < 1e-4);
  }
  SUBCASE("rank deficient") {
    // The Bures route is ill-conditioned on a pure state; use the pure-state
    // form F_ab = 4 (|c_a|^2 delta_ab - |c_a|^2 |c_b|^2) for phases on |1>, |2>.
    const auto in = generic_inputs()[3];
    const double w1 = in.beta * in.beta, w2 = in.delta * in.delta;
    const Qfim2 oracle{4 * (w1 - w1 * w1), -4 * w1 * w2, -4 * w1 * w2, 4 * (w2 - w2 * w2)};
    CHECK(qdist(qfim(teleported_family(bell_resource(), in)), oracle) < 1e-7);
  }
}

TEST_CASE("QFIM is invariant under a basis permutation") {
  const auto resource = prepare_plain(NoiseParams::symmetric(0.25)).rho;
  const auto fam = teleported_family(resource, generic_inputs()[4]);
  const auto rho = fam.at_base();
  const auto d1 = d_rho(fam, 0), d2 = d_rho(fam, 1);
  ComplexMatrix perm(3);
  perm(0, 2) = perm(1, 0) = perm(2, 1) = 1.0;
  const auto f = qfim(rho, d1, d2);
  const auto g = qfim(conjugate(perm, rho), conjugate(perm, d1), conjugate(perm, d2));
  CHECK(qdist(f, g) < 1e-10);
}

TEST_CASE("teleported QFIM follows the depolarised law") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 0.9);
  const auto in = InputState::balanced(kDefaultPhi1, kDefaultPhi2);
  for (int rep = 0; rep < 8; ++rep) {
    const double d = u(rng), p = u(rng), s = u(rng);
    const auto run = simulate_scheme(SchemeKind::WM, d, p, s, in);
    const double g = coherence_factor(run.output, in);
    const auto f = qfim(teleported_family(run.resource.rho, in));
    const double scale = 4 * g * g / (3 * (2 + g));
    CHECK(f.f11 == doctest::Approx(2 * scale).epsilon(1e-6));
    CHECK(f.f12 == doctest::Approx(-scale).epsilon(1e-6));
  }
}

TEST_CASE("bounds diverge for a singular QFIM") {
  try {
    bounds({1.0, 1.0, 1.0, 1.0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("diverges") != std::string::npos);
  }
  const auto in = InputState::balanced(kDefaultPhi1, kDefaultPhi2);
  CHECK_THROWS_AS(bounds(qfim(teleported_family(prepare_plain(NoiseParams::symmetric(1.0)).rho, in))), Error);
}
