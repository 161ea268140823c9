#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qutele/teleport.hpp"

namespace qutele {

enum class CheckStatus { Pass, Fail, Informational };

std::string to_string(CheckStatus s);

struct Check {
  std::string check_name;
  CheckStatus status = CheckStatus::Pass;
  double measured = 0.0;
  std::optional<double> expected;
  std::optional<double> tolerance;
  std::string paper_ref;  // which closed form or claim the check exercises
};

struct VerificationReport {
  std::vector<Check> checks;

  bool all_normative_pass() const;
  const Check* find(const std::string& name) const;
  /// {"checks": [...], "all_normative_pass": bool}; stable key order.
  std::string to_json() const;
};

/// Grid shared by the verification suite: d, p = q and p_r = q_r each over
/// five values.
struct VerifyGrid {
  std::vector<double> d{0.0, 0.2, 0.4, 0.6, 0.8};
  std::vector<double> p{0.0, 0.25, 0.5, 0.75, 0.9};
  std::vector<double> strength{0.0, 0.25, 0.5, 0.75, 0.9};
  /// Balanced inputs with distinct phases.
  std::vector<InputState> balanced_inputs{InputState::balanced(kDefaultPhi1, kDefaultPhi2),
                                          InputState::balanced(0.3, 1.1),
                                          InputState::balanced(1.7, 0.4)};
  /// Audit grid for the published WM optimum.
  double gamma_t_max = 3.0;
  int gamma_steps = 61;
  std::vector<double> audit_p{0.3, 0.5, 0.7, 0.9};
};

/// Five fixed, generic (unbalanced, distinct-phase) input states.
std::vector<InputState> generic_inputs();

/// Runs every invariant; audit-only entries are Informational and never fail.
VerificationReport run_verification(const VerifyGrid& grid = {});

}  // namespace qutele
