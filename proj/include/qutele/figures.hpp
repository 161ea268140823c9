#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qutele/schemes.hpp"
#include "qutele/teleport.hpp"

namespace qutele {

/// Reversal-strength setting for the EAM figures: a fixed q_r, or q_r = d.
struct QrMode {
  std::optional<double> fixed;  // empty means "optimal"

  static QrMode optimal() { return {}; }
  static QrMode value(double q) { return {q}; }
  std::string label() const;
  double strength(double d) const { return fixed ? *fixed : d; }
};

struct FigureOptions {
  double gamma_t_max = 3.0;
  int steps = 61;
  std::vector<double> p_values{0.3, 0.5, 0.7, 0.9};
  std::vector<QrMode> qr_modes{QrMode::value(0.0), QrMode::value(0.5), QrMode::value(0.7),
                               QrMode::optimal()};
  // Delta heat-map grid over p.
  double p_min = 0.05;
  double p_max = 0.95;
  int p_steps = 19;
  InputState input = InputState::balanced(kDefaultPhi1, kDefaultPhi2);
  Zeta3Variant variant = Zeta3Variant::Corrected;

  /// Throws Error with a usage message on invalid settings.
  void validate() const;
  std::vector<double> gamma_grid() const;
  std::vector<double> p_grid() const;
};

/// A CSV table: header plus rows of already-formatted cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
};

/// 12 significant digits, '.' decimal separator, "inf"/"nan" for non-finite values.
std::string format_number(double x);

/// Exact column lists of every emitted file, keyed by file name.
const std::map<std::string, std::vector<std::string>>& csv_schemas();

CsvTable fig2_table(const FigureOptions& opt);
CsvTable fig3a_table(const FigureOptions& opt);
CsvTable fig3b_table(const FigureOptions& opt);
/// Both zeta3 forms are always emitted side by side.
CsvTable fig4a_table(const FigureOptions& opt);
CsvTable fig4b_table(const FigureOptions& opt);
CsvTable fig5_table(const FigureOptions& opt);
/// One row per (gamma_t, scheme, p) with published and first-principles
/// bounds. `variant` selects the zeta3 form reported for EAM rows.
CsvTable sweep_table(const FigureOptions& opt);

/// Writes `table` to dir/name with Unix newlines; creates dir if needed.
std::filesystem::path write_csv(const CsvTable& table, const std::filesystem::path& dir,
                                const std::string& name);

}  // namespace qutele
