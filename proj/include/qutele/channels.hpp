#pragma once

#include <optional>
#include <vector>

#include "qutele/tensor.hpp"

namespace qutele {

/// Computational basis |0>,|1>,|2> maps to rows 0,1,2. For two qutrits the
/// basis index is 3*first + second, i.e. |j,k> sits at row 3j+k.
inline constexpr std::size_t kQutritDim = 3;

enum class KrausKind { FullChannel, Selective };

struct KrausSet {
  std::vector<ComplexMatrix> operators;
  KrausKind kind = KrausKind::FullChannel;

  std::size_t dim() const { return operators.empty() ? 0 : operators.front().dim(); }
};

/// sum_k K_k^dagger K_k
ComplexMatrix completeness_sum(const KrausSet& ks);
/// Frobenius distance of the completeness sum from the identity.
double completeness_defect(const KrausSet& ks);
/// Checks the invariant matching `ks.kind`; throws on violation.
void validate(const KrausSet& ks);

/// Tensor-product Kraus set {A_i (x) B_j}, ordered with i major.
KrausSet kron(const KrausSet& a, const KrausSet& b);

/// Decay strengths of the two excited levels. When built from a
/// dimensionless time gamma*t both levels share d = 1 - exp(-gamma*t).
struct NoiseParams {
  double d1 = 0.0;
  double d2 = 0.0;
  std::optional<double> gamma_t;

  static NoiseParams symmetric(double d) { return {d, d, std::nullopt}; }
  static NoiseParams from_gamma_t(double gamma_t);

  bool is_symmetric() const { return d1 == d2; }
  void validate() const;
};

/// Weak-measurement strengths (p, q) and reversal strengths (p_r, q_r).
struct MeasurementStrengths {
  double p = 0.0;
  double q = 0.0;
  double p_r = 0.0;
  double q_r = 0.0;

  static MeasurementStrengths symmetric(double p, double p_r) { return {p, p, p_r, p_r}; }

  bool is_symmetric() const { return p == q && p_r == q_r; }
  void validate() const;
};

/// V-configuration amplitude damping: E0 = diag(1, sqrt(1-d1), sqrt(1-d2)),
/// E1 = sqrt(d1)|0><1|, E2 = sqrt(d2)|0><2|.
KrausSet ad_kraus(const NoiseParams& np);

/// Full weak-measurement POVM {M0, M1, M2}.
KrausSet wm_kraus(const MeasurementStrengths& ms);
/// Only the M0 outcome, which is what the protocol keeps.
KrausSet wm_selective(const MeasurementStrengths& ms);
ComplexMatrix wm_operator(const MeasurementStrengths& ms);

/// diag(sqrt((1-p_r)(1-q_r)), sqrt(1-q_r), sqrt(1-p_r))
ComplexMatrix qmr_operator(const MeasurementStrengths& ms);
KrausSet qmr_selective(const MeasurementStrengths& ms);

/// X^i |m> = |m + i mod 3>
ComplexMatrix gate_x(int i);
/// Z^k |m> = omega^{k m} |m>, omega = exp(2 pi i / 3)
ComplexMatrix gate_z(int k);
ComplexMatrix gate_h();
/// R_C |m>|n> = |m>|n + m>
ComplexMatrix gate_rc();
/// L_C |m>|n> = |m>|n - m>
ComplexMatrix gate_lc();

ComplexMatrix apply_channel(const ComplexMatrix& rho, const KrausSet& ks);

struct SelectiveOutcome {
  ComplexMatrix state;
  double probability = 0.0;
};

inline constexpr double kVanishingProbability = 1e-15;

/// Applies one selective operator and renormalises. Throws when the outcome
/// probability is at or below 1e-15.
SelectiveOutcome apply_selective(const ComplexMatrix& rho, const ComplexMatrix& op);

}  // namespace qutele
