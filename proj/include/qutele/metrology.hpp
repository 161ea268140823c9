#pragma once

#include <array>
#include <functional>

#include "qutele/teleport.hpp"
#include "qutele/tensor.hpp"

namespace qutele {

/// Two-phase density-matrix family rho(phi1, phi2) evaluated around a base point.
struct PhaseFamily {
  std::function<ComplexMatrix(double, double)> generator;
  std::array<double, 2> base_point{0.0, 0.0};
  /// Optional exact derivative d rho / d phi_{which+1} at a point.
  std::function<ComplexMatrix(double, double, int)> derivative;

  ComplexMatrix at_base() const { return generator(base_point[0], base_point[1]); }
};

/// Quantum Fisher information matrix for (phi1, phi2), in 1/rad^2.
struct Qfim2 {
  double f11 = 0.0;
  double f12 = 0.0;
  double f21 = 0.0;
  double f22 = 0.0;

  double det() const { return f11 * f22 - f12 * f21; }
};

struct BoundsReport {
  double delta_ind = 0.0;  // sum of inverse diagonal entries
  double delta_sim = 0.0;  // trace of the inverse
  double ratio_r = 0.0;    // delta_ind / (delta_sim / 2)
};

inline constexpr double kDerivativeStep = 1e-6;
inline constexpr double kSupportCutoff = 1e-10;

/// d rho / d phi_{which+1} (which is 0 or 1). Uses the family's exact
/// derivative when present, otherwise a central difference with step 1e-6.
ComplexMatrix d_rho(const PhaseFamily& family, int which);

/// Support-restricted evaluation on the eigenbasis of rho:
///   F_ab = sum_{l_i + l_j > cutoff} 2 Re(<i|d_a rho|j><j|d_b rho|i>) / (l_i + l_j)
/// which is independent of the basis chosen inside degenerate eigenspaces.
Qfim2 qfim(const ComplexMatrix& rho, const ComplexMatrix& d1, const ComplexMatrix& d2);
Qfim2 qfim(const PhaseFamily& family);

/// Throws when det(f) <= 1e-14 (the bound diverges).
BoundsReport bounds(const Qfim2& f);

/// i [N_a, rho] with N_a = |a+1><a+1|: the exact phase derivative of any
/// family rho(phi) = U(phi) rho_0 U(phi)^dagger, U = diag(1, e^{i phi1}, e^{i phi2}).
ComplexMatrix phase_covariant_derivative(const ComplexMatrix& rho, int which);

/// Family generated by teleporting the input with the given phases through
/// a fixed resource.
PhaseFamily teleported_family(const ComplexMatrix& resource, const InputState& base);

/// Closed-form family (1-G) I/3 + G |psi><psi| for balanced |psi>.
PhaseFamily depolarized_family(double g, double phi1, double phi2);

}  // namespace qutele
