#include "qutele/channels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qutele {

namespace {

constexpr double kCompletenessTolerance = 1e-12;

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << x << " is outside [0, 1]";
    throw Error(msg.str());
  }
}

int mod3(int x) { return ((x % 3) + 3) % 3; }

Complex omega_pow(int k) {
  const double angle = 2.0 * std::numbers::pi * mod3(k) / 3.0;
  return std::polar(1.0, angle);
}

ComplexMatrix controlled_shift(int sign) {
  ComplexMatrix g(9);
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) g(3 * m + mod3(n + sign * m), 3 * m + n) = 1.0;
  return g;
}

}  // namespace

ComplexMatrix completeness_sum(const KrausSet& ks) {
  ComplexMatrix sum(ks.dim());
  for (const auto& k : ks.operators) sum += mat_mul(dagger(k), k);
  return sum;
}

double completeness_defect(const KrausSet& ks) {
  return frobenius_distance(completeness_sum(ks), ComplexMatrix::identity(ks.dim()));
}

void validate(const KrausSet& ks) {
  if (ks.operators.empty()) throw Error("KrausSet: no operators");
  for (const auto& k : ks.operators)
    if (k.dim() != ks.dim()) throw Error("KrausSet: operators have unequal dimensions");
  if (ks.kind == KrausKind::FullChannel) {
    const double defect = completeness_defect(ks);
    if (defect > kCompletenessTolerance) {
      std::ostringstream msg;
      msg << "KrausSet: full channel is not complete (defect " << defect << ")";
      throw Error(msg.str());
    }
    return;
  }
  const auto gap = hermitian_eig(ComplexMatrix::identity(ks.dim()) - completeness_sum(ks));
  for (double ev : gap.eigenvalues)
    if (ev < -kCompletenessTolerance || ev > 1.0 + kCompletenessTolerance) {
      std::ostringstream msg;
      msg << "KrausSet: selective set exceeds the identity (eigenvalue " << ev << ")";
      throw Error(msg.str());
    }
}

KrausSet kron(const KrausSet& a, const KrausSet& b) {
  KrausSet out;
  out.kind = (a.kind == KrausKind::FullChannel && b.kind == KrausKind::FullChannel)
                 ? KrausKind::FullChannel
                 : KrausKind::Selective;
  out.operators.reserve(a.operators.size() * b.operators.size());
  for (const auto& x : a.operators)
    for (const auto& y : b.operators) out.operators.push_back(kron(x, y));
  return out;
}

NoiseParams NoiseParams::from_gamma_t(double gamma_t) {
  if (!(gamma_t >= 0.0)) throw Error("NoiseParams: gamma_t must be nonnegative");
  const double d = -std::expm1(-gamma_t);
  return {d, d, gamma_t};
}

void NoiseParams::validate() const {
  require_unit_interval(d1, "d1");
  require_unit_interval(d2, "d2");
  if (gamma_t) {
    if (!(*gamma_t >= 0.0)) throw Error("NoiseParams: gamma_t must be nonnegative");
    const double d = -std::expm1(-*gamma_t);
    if (std::abs(d1 - d) > 1e-12 || std::abs(d2 - d) > 1e-12)
      throw Error("NoiseParams: d1, d2 disagree with gamma_t");
  }
}

void MeasurementStrengths::validate() const {
  require_unit_interval(p, "p");
  require_unit_interval(q, "q");
  require_unit_interval(p_r, "p_r");
  require_unit_interval(q_r, "q_r");
}

KrausSet ad_kraus(const NoiseParams& np) {
  np.validate();
  ComplexMatrix e0 = ComplexMatrix::diagonal({1.0, std::sqrt(1.0 - np.d1), std::sqrt(1.0 - np.d2)});
  ComplexMatrix e1(3), e2(3);
  e1(0, 1) = std::sqrt(np.d1);
  e2(0, 2) = std::sqrt(np.d2);
  return {{std::move(e0), std::move(e1), std::move(e2)}, KrausKind::FullChannel};
}

ComplexMatrix wm_operator(const MeasurementStrengths& ms) {
  ms.validate();
  return ComplexMatrix::diagonal({1.0, std::sqrt(1.0 - ms.p), std::sqrt(1.0 - ms.q)});
}

KrausSet wm_kraus(const MeasurementStrengths& ms) {
  ComplexMatrix m0 = wm_operator(ms);
  ComplexMatrix m1(3), m2(3);
  m1(1, 1) = std::sqrt(ms.p);
  m2(2, 2) = std::sqrt(ms.q);
  return {{std::move(m0), std::move(m1), std::move(m2)}, KrausKind::FullChannel};
}

KrausSet wm_selective(const MeasurementStrengths& ms) {
  return {{wm_operator(ms)}, KrausKind::Selective};
}

ComplexMatrix qmr_operator(const MeasurementStrengths& ms) {
  ms.validate();
  const double pr = 1.0 - ms.p_r;
  const double qr = 1.0 - ms.q_r;
  return ComplexMatrix::diagonal({std::sqrt(pr * qr), std::sqrt(qr), std::sqrt(pr)});
}

KrausSet qmr_selective(const MeasurementStrengths& ms) {
  return {{qmr_operator(ms)}, KrausKind::Selective};
}

ComplexMatrix gate_x(int i) {
  ComplexMatrix g(3);
  for (int m = 0; m < 3; ++m) g(mod3(m + i), m) = 1.0;
  return g;
}

ComplexMatrix gate_z(int k) {
  return ComplexMatrix::diagonal({1.0, omega_pow(k), omega_pow(2 * k)});
}

ComplexMatrix gate_h() {
  ComplexMatrix g(3);
  const double norm = 1.0 / std::sqrt(3.0);
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) g(m, n) = norm * omega_pow(m * n);
  return g;
}

ComplexMatrix gate_rc() { return controlled_shift(+1); }
ComplexMatrix gate_lc() { return controlled_shift(-1); }

ComplexMatrix apply_channel(const ComplexMatrix& rho, const KrausSet& ks) {
  if (ks.kind != KrausKind::FullChannel)
    throw Error("apply_channel: selective operation given; use apply_selective per outcome");
  if (ks.dim() != rho.dim()) {
    std::ostringstream msg;
    msg << "apply_channel: dimension mismatch (state " << rho.dim() << ", operators " << ks.dim()
        << ")";
    throw Error(msg.str());
  }
  ComplexMatrix out(rho.dim());
  for (const auto& k : ks.operators) out += conjugate(k, rho);
  return out;
}

SelectiveOutcome apply_selective(const ComplexMatrix& rho, const ComplexMatrix& op) {
  validate(KrausSet{{op}, KrausKind::Selective});
  ComplexMatrix out = conjugate(op, rho);
  const double prob = trace(out).real();
  if (prob <= kVanishingProbability) throw Error("apply_selective: outcome has vanishing probability");
  out *= 1.0 / prob;
  return {std::move(out), prob};
}

}  // namespace qutele
