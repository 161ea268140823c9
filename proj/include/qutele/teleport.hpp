#pragma once

#include <array>
#include <vector>

#include "qutele/channels.hpp"
#include "qutele/tensor.hpp"

namespace qutele {

/// alpha|0> + beta e^{i phi1}|1> + delta e^{i phi2}|2> with real amplitudes.
struct InputState {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;

  static InputState balanced(double phi1, double phi2);

  std::vector<Complex> ket() const;
  ComplexMatrix projector() const;
  bool is_balanced() const;
  void validate() const;
};

/// Default evaluation phases for fixtures and CLI runs.
inline constexpr double kDefaultPhi1 = 3.14159265358979323846 / 7.0;
inline constexpr double kDefaultPhi2 = 3.14159265358979323846 / 3.0;

/// Shared two-qutrit resource and the probability that its (possibly
/// post-selected) preparation succeeded.
struct ResourcePrep {
  ComplexMatrix rho;
  double success_probability = 1.0;
};

struct OutputState {
  ComplexMatrix rho_out;
};

/// Bob's correction Z^z_exp X^x_exp for Bell-analysis outcome (m, n).
struct Correction {
  int z_exp = 0;
  int x_exp = 0;
  ComplexMatrix unitary;
};

/// Indexed by 3*m + n.
using CorrectionTable = std::array<Correction, 9>;

/// Projector onto (|00> + |11> + |22>)/sqrt(3).
ComplexMatrix bell_resource();

ResourcePrep prepare_plain(const NoiseParams& np);
/// Weak measurement M0 (x) M0, amplitude damping on both halves, then
/// reversal M_r (x) M_r. success_probability is the joint weight W.
ResourcePrep prepare_wm(const NoiseParams& np, const MeasurementStrengths& ms);
/// No-jump post-selection E0 (x) E0 followed by reversal M_r (x) M_r.
/// success_probability is the normalisation U.
ResourcePrep prepare_eam(const NoiseParams& np, const MeasurementStrengths& ms);

/// Brute-force search over Z^a X^b for each measurement outcome so that the
/// ideal resource teleports exactly. Throws if an outcome does not admit a
/// unique correction.
CorrectionTable derive_correction_table();
/// Cached result of derive_correction_table().
const CorrectionTable& correction_table();

struct TeleportBranch {
  int m = 0;
  int n = 0;
  double probability = 0.0;
  ComplexMatrix bob_state;  // normalised, after correction; zero if probability vanishes
};

/// Bell analysis on qutrits 1,2 (L_C then H^dagger on qutrit 1), computational
/// measurement, and Bob's correction for every outcome.
std::vector<TeleportBranch> teleport_branches(const InputState& in, const ComplexMatrix& resource,
                                              const CorrectionTable& table);

/// Probability-weighted average of the corrected branches.
OutputState teleport(const InputState& in, const ComplexMatrix& resource);

// Closed-form results for symmetric parameters (d1 = d2, p = q, p_r = q_r).
// They throw when handed asymmetric parameters.

OutputState closed_output_plain(const NoiseParams& np, const InputState& in);
OutputState closed_output_wm(const NoiseParams& np, const MeasurementStrengths& ms,
                             const InputState& in);
OutputState closed_output_eam(const NoiseParams& np, const MeasurementStrengths& ms,
                              const InputState& in);

/// Normalisation W of the weak-measurement pipeline (d1 = d2 required).
double closed_wm_normalization(const NoiseParams& np, const MeasurementStrengths& ms);
/// Normalisation U of the no-jump pipeline (d1 = d2 required).
double closed_eam_normalization(const NoiseParams& np, const MeasurementStrengths& ms);

/// Closed-form shared resources, element by element (d1 = d2 required).
ComplexMatrix closed_resource_plain(const NoiseParams& np);
ComplexMatrix closed_resource_wm(const NoiseParams& np, const MeasurementStrengths& ms);
ComplexMatrix closed_resource_eam(const NoiseParams& np, const MeasurementStrengths& ms);

/// G such that a balanced output is (1-G) I/3 + G |psi><psi|, read off as
/// 3 |rho_01|. Throws if the three coherences disagree beyond 1e-10.
double coherence_factor(const OutputState& out, const InputState& in);

}  // namespace qutele
