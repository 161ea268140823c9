#pragma once

#include <string_view>

#include "qutele/channels.hpp"
#include "qutele/teleport.hpp"

namespace qutele {

enum class SchemeKind { PlainAD, WM, EAM };

std::string_view to_string(SchemeKind kind);

/// Which u enters zeta3. Corrected uses u = (1-d)(1-d + 2(1-q_r)), the form
/// consistent with the EAM output coherence; AsPrinted squares (1-q_r).
enum class Zeta3Variant { Corrected, AsPrinted };

struct SchemeClosedForms {
  double zeta = 0.0;
  double f = 0.0;  // WM intermediates
  double h = 0.0;
  double u = 0.0;  // EAM intermediates
  double v = 0.0;
  Zeta3Variant variant = Zeta3Variant::Corrected;
};

/// (G + 2) / (3 G^2): the scaled variance of the balanced depolarised family.
double zeta_from_coherence(double g);

/// (d^2 - 4d + 9) / (d^2 - 4d + 3)^2. Throws for d outside [0, 1).
double zeta1(double d);
/// Baseline coherence (d^2 - 4d + 3) / 3.
double plain_coherence(double d);

/// Symmetric weak-measurement scheme (p = q, p_r = q_r). Throws when f = 0.
SchemeClosedForms zeta2(double d, double p, double p_r);
/// Symmetric no-jump scheme (p_r = q_r). Throws when u = 0.
SchemeClosedForms zeta3(double d, double q_r, Zeta3Variant variant = Zeta3Variant::Corrected);

/// G = f/h for the weak-measurement scheme.
double wm_coherence(double d, double p, double p_r);
/// G = u/v (corrected u) for the no-jump scheme.
double eam_coherence(double d, double q_r);

struct PublishedStrength {
  double value = 0.0;
  bool in_range = true;  // value lies in [0, 1]
};

/// Closed-form optimal reversal strength as published: the long WM formula,
/// or q_r = d for EAM. Not clamped. Throws for PlainAD.
PublishedStrength published_optimal_strength(SchemeKind kind, double d, double p);

struct OptimalStrength {
  double strength = 0.0;
  double zeta = 0.0;  // corrected zeta at the optimum; +inf if G vanishes
};

inline constexpr double kMaxReversalStrength = 1.0 - 1e-9;
inline constexpr double kStrengthTolerance = 1e-10;

/// Golden-section search over the reversal strength in [0, 1 - 1e-9]
/// maximising the output coherence (equivalently minimising zeta), then a
/// bisection on the sign of dG/d(strength) to resolve the flat maximum.
OptimalStrength numeric_optimal_strength(SchemeKind kind, double d, double p);

/// Success probability of the post-selected pipeline. For WM this is W at
/// (d, p = q, p_r = q_r = strength); for EAM it is
/// (1-s)^4/3 + 2(1-d)^2(1-s)^2/3; PlainAD always succeeds.
double success_probability(SchemeKind kind, double d, double p, double strength);

/// P_EAM^opt / zeta3^opt - P_WM^opt / zeta2^opt with numerically optimal strengths.
double delta_comparison(double d, double p);

struct PaperVarianceBounds {
  double delta_ind = 0.0;
  double delta_sim = 0.0;
};

/// Published scaling: delta_ind = (3 sqrt2 / 4) zeta, delta_sim = (27 sqrt2 / 34) zeta.
PaperVarianceBounds variance_bounds(SchemeKind kind, double zeta);

/// Published QFIM form [[4 sqrt2/3, 4/9], [4/9, 4 sqrt2/3]] / zeta. Reported
/// for comparison only.
struct PrintedQfim {
  double diagonal = 0.0;
  double off_diagonal = 0.0;
};
PrintedQfim printed_qfim(double zeta);
/// delta_ind / (delta_sim / 2) implied by the published scaling (17/9).
double printed_ratio();

struct SchemeResult {
  double zeta_opt = 0.0;
  double strength_opt = 0.0;
  double success_probability = 1.0;
  double delta_ind = 0.0;  // published scaling
  double delta_sim = 0.0;
};

/// Scheme at its numerically optimal reversal strength (PlainAD has none).
SchemeResult evaluate_scheme(SchemeKind kind, double d, double p);

/// Simulated resource and teleported output for one scheme. `strength` is
/// the symmetric reversal strength (ignored for PlainAD).
struct SchemeRun {
  ResourcePrep resource;
  OutputState output;
};
SchemeRun simulate_scheme(SchemeKind kind, double d, double p, double strength,
                          const InputState& in);
OutputState closed_scheme_output(SchemeKind kind, double d, double p, double strength,
                                 const InputState& in);

}  // namespace qutele
