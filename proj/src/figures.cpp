#include "qutele/figures.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qutele/metrology.hpp"

namespace qutele {

namespace {

double d_of(double gamma_t) { return -std::expm1(-gamma_t); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

void usage_check(bool ok, const std::string& msg) {
  if (!ok) throw Error(msg);
}

}  // namespace

std::string QrMode::label() const { return fixed ? format_number(*fixed) : "optimal"; }

void FigureOptions::validate() const {
  usage_check(gamma_t_max > 0.0 && std::isfinite(gamma_t_max), "--gamma-t-max must be > 0");
  usage_check(steps >= 2, "--steps must be >= 2");
  usage_check(!p_values.empty(), "--p needs at least one value");
  for (double p : p_values) usage_check(p >= 0.0 && p <= 1.0, "--p values must lie in [0, 1]");
  usage_check(!qr_modes.empty(), "--qr needs at least one value");
  for (const auto& m : qr_modes)
    usage_check(!m.fixed || (*m.fixed >= 0.0 && *m.fixed <= 1.0),
                "--qr values must lie in [0, 1] or be 'optimal'");
  usage_check(p_min >= 0.0 && p_max <= 1.0 && p_min <= p_max, "--p-min/--p-max must satisfy 0 <= min <= max <= 1");
  usage_check(p_steps >= 1, "--p-steps must be >= 1");
  input.validate();
}

std::vector<double> FigureOptions::gamma_grid() const { return linspace(0.0, gamma_t_max, steps); }
std::vector<double> FigureOptions::p_grid() const { return linspace(p_min, p_max, p_steps); }

std::string CsvTable::to_string() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  // snprintf honours the global C locale; the library never changes it, so
  // the decimal separator stays '.'.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

const std::map<std::string, std::vector<std::string>>& csv_schemas() {
  static const std::map<std::string, std::vector<std::string>> schemas{
      {"fig2.csv", {"gamma_t", "d", "zeta1"}},
      {"fig3a.csv",
       {"gamma_t", "p", "zeta2_opt", "strength_opt_numeric", "strength_opt_published",
        "published_in_range"}},
      {"fig3b.csv", {"gamma_t", "p", "P_wm_opt"}},
      {"fig4a.csv", {"gamma_t", "qr_mode", "zeta3_corrected", "zeta3_as_printed"}},
      {"fig4b.csv", {"gamma_t", "qr_mode", "P_eam"}},
      {"fig5.csv", {"gamma_t", "p", "delta"}},
      {"sweep.csv",
       {"gamma_t", "d", "scheme", "strength_p", "strength_reversal", "zeta", "G",
        "delta_ind_paper", "delta_sim_paper", "delta_ind_fp", "delta_sim_fp", "ratio_fp",
        "success_probability"}},
  };
  return schemas;
}

CsvTable fig2_table(const FigureOptions& opt) {
  opt.validate();
  CsvTable t{csv_schemas().at("fig2.csv"), {}};
  for (double g : opt.gamma_grid()) {
    const double d = d_of(g);
    t.rows.push_back({format_number(g), format_number(d), format_number(zeta1(d))});
  }
  return t;
}

CsvTable fig3a_table(const FigureOptions& opt) {
  opt.validate();
  CsvTable t{csv_schemas().at("fig3a.csv"), {}};
  for (double g : opt.gamma_grid())
    for (double p : opt.p_values) {
      const double d = d_of(g);
      const auto opt_num = numeric_optimal_strength(SchemeKind::WM, d, p);
      const auto pub = published_optimal_strength(SchemeKind::WM, d, p);
      t.rows.push_back({format_number(g), format_number(p), format_number(opt_num.zeta),
                        format_number(opt_num.strength), format_number(pub.value),
                        pub.in_range ? "1" : "0"});
    }
  return t;
}

CsvTable fig3b_table(const FigureOptions& opt) {
  opt.validate();
  CsvTable t{csv_schemas().at("fig3b.csv"), {}};
  for (double g : opt.gamma_grid())
    for (double p : opt.p_values) {
      const double d = d_of(g);
      const auto opt_num = numeric_optimal_strength(SchemeKind::WM, d, p);
      t.rows.push_back({format_number(g), format_number(p),
                        format_number(success_probability(SchemeKind::WM, d, p, opt_num.strength))});
    }
  return t;
}

CsvTable fig4a_table(const FigureOptions& opt) {
  opt.validate();
  CsvTable t{csv_schemas().at("fig4a.csv"), {}};
  for (double g : opt.gamma_grid())
    for (const auto& mode : opt.qr_modes) {
      const double d = d_of(g);
      const double q = mode.strength(d);
      t.rows.push_back({format_number(g), mode.label(),
                        format_number(zeta3(d, q, Zeta3Variant::Corrected).zeta),
                        format_number(zeta3(d, q, Zeta3Variant::AsPrinted).zeta)});
    }
  return t;
}

CsvTable fig4b_table(const FigureOptions& opt) {
  opt.validate();
  CsvTable t{csv_schemas().at("fig4b.csv"), {}};
  for (double g : opt.gamma_grid())
    for (const auto& mode : opt.qr_modes) {
      const double d = d_of(g);
      t.rows.push_back({format_number(g), mode.label(),
                        format_number(success_probability(SchemeKind::EAM, d, 0.0, mode.strength(d)))});
    }
  return t;
}

CsvTable fig5_table(const FigureOptions& opt) {
  opt.validate();
  CsvTable t{csv_schemas().at("fig5.csv"), {}};
  for (double g : opt.gamma_grid())
    for (double p : opt.p_grid())
      t.rows.push_back({format_number(g), format_number(p), format_number(delta_comparison(d_of(g), p))});
  return t;
}

CsvTable sweep_table(const FigureOptions& opt) {
  opt.validate();
  CsvTable t{csv_schemas().at("sweep.csv"), {}};
  auto emit = [&](double g, SchemeKind kind, double p) {
    const double d = d_of(g);
    const SchemeResult res = evaluate_scheme(kind, d, p);
    double zeta = res.zeta_opt;
    double coherence = 0.0;
    switch (kind) {
      case SchemeKind::PlainAD: coherence = plain_coherence(d); break;
      case SchemeKind::WM: coherence = wm_coherence(d, p, res.strength_opt); break;
      case SchemeKind::EAM:
        coherence = eam_coherence(d, res.strength_opt);
        zeta = zeta3(d, res.strength_opt, opt.variant).zeta;
        break;
    }
    const auto paper = variance_bounds(kind, zeta);
    const auto run = simulate_scheme(kind, d, p, res.strength_opt, opt.input);
    double ind = INFINITY, sim = INFINITY, ratio = NAN;
    try {
      const auto fp = bounds(qfim(teleported_family(run.resource.rho, opt.input)));
      ind = fp.delta_ind;
      sim = fp.delta_sim;
      ratio = fp.ratio_r;
    } catch (const Error&) {
      // Singular QFIM: the first-principles bounds diverge.
    }
    t.rows.push_back({format_number(g), format_number(d), std::string(to_string(kind)),
                      format_number(p), format_number(res.strength_opt), format_number(zeta),
                      format_number(coherence), format_number(paper.delta_ind),
                      format_number(paper.delta_sim), format_number(ind), format_number(sim),
                      format_number(ratio), format_number(res.success_probability)});
  };
  for (double g : opt.gamma_grid()) {
    emit(g, SchemeKind::PlainAD, 0.0);
    for (double p : opt.p_values) emit(g, SchemeKind::WM, p);
    emit(g, SchemeKind::EAM, 0.0);
  }
  return t;
}

std::filesystem::path write_csv(const CsvTable& table, const std::filesystem::path& dir,
                                const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << table.to_string();
  if (!out) throw Error("failed writing " + path.string());
  return path;
}

}  // namespace qutele
