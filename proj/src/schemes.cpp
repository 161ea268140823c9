#include "qutele/schemes.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qutele {

namespace {

void require_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << x << " is outside [0, 1]";
    throw Error(msg.str());
  }
}

// Maximises a unimodal function on [lo, hi]; returns the argmax.
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (a + b);
  // The interval endpoints are candidates when the optimum sits on the boundary.
  double best = mid, fbest = f(mid);
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx > fbest) {
      best = x;
      fbest = fx;
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::PlainAD: return "plain";
    case SchemeKind::WM: return "wm";
    case SchemeKind::EAM: return "eam";
  }
  return "unknown";
}

double zeta_from_coherence(double g) { return (g + 2.0) / (3.0 * g * g); }

double zeta1(double d) {
  if (!(d >= 0.0 && d < 1.0)) {
    std::ostringstream msg;
    msg << "zeta1: d = " << d << " outside [0, 1); the bound diverges at d = 1";
    throw Error(msg.str());
  }
  const double s = d * d - 4.0 * d + 3.0;
  return (d * d - 4.0 * d + 9.0) / (s * s);
}

double plain_coherence(double d) { return (d * d - 4.0 * d + 3.0) / 3.0; }

SchemeClosedForms zeta2(double d, double p, double p_r) {
  require_unit(d, "d");
  require_unit(p, "p");
  require_unit(p_r, "p_r");
  const double db = 1.0 - d, pb = 1.0 - p, x = 1.0 - p_r;
  SchemeClosedForms out;
  out.f = db * pb * x * x * (2.0 * x + db * pb) / 3.0;
  out.h = x * x * (x * x * (1.0 + 2.0 * d * d * pb * pb) + 4.0 * d * db * pb * pb * x +
                   2.0 * db * db * pb * pb) /
          3.0;
  if (!(out.f > 0.0)) throw Error("zeta2: f vanishes; the bound diverges");
  out.zeta = (out.f * out.h + 2.0 * out.h * out.h) / (3.0 * out.f * out.f);
  return out;
}

SchemeClosedForms zeta3(double d, double q_r, Zeta3Variant variant) {
  require_unit(d, "d");
  require_unit(q_r, "q_r");
  const double db = 1.0 - d, y = 1.0 - q_r;
  SchemeClosedForms out;
  out.variant = variant;
  out.u = variant == Zeta3Variant::Corrected ? db * (db + 2.0 * y) : db * (db + 2.0 * y * y);
  out.v = y * y + 2.0 * db * db;
  if (!(out.u > 0.0)) throw Error("zeta3: u vanishes; the bound diverges");
  out.zeta = (out.u * out.v + 2.0 * out.v * out.v) / (3.0 * out.u * out.u);
  return out;
}

double wm_coherence(double d, double p, double p_r) {
  const auto z = zeta2(d, p, p_r);
  return z.f / z.h;
}

double eam_coherence(double d, double q_r) {
  const auto z = zeta3(d, q_r, Zeta3Variant::Corrected);
  return z.u / z.v;
}

PublishedStrength published_optimal_strength(SchemeKind kind, double d, double p) {
  double value = 0.0;
  switch (kind) {
    case SchemeKind::EAM:
      value = d;
      break;
    case SchemeKind::WM: {
      const double db = 1.0 - d, pb = 1.0 - p, dp = d * pb;
      const double root =
          std::sqrt(9.0 - 4.0 * dp * (1.0 - dp) * (1.0 - dp) * (2.0 - dp));
      value = (2.0 + db + dp + 2.0 * dp * dp * (2.0 + pb * db) - db * pb * root) /
              (2.0 * (1.0 + 2.0 * dp * dp));
      break;
    }
    case SchemeKind::PlainAD:
      throw Error("published_optimal_strength: the baseline scheme has no reversal strength");
  }
  return {value, value >= 0.0 && value <= 1.0};
}

OptimalStrength numeric_optimal_strength(SchemeKind kind, double d, double p) {
  require_unit(d, "d");
  require_unit(p, "p");
  const double db = 1.0 - d, pb = 1.0 - p;
  // Search over the complement x = 1 - strength so that optima close to
  // strength = 1 keep full relative resolution.
  // G(x) = num(x) / den(x) with num linear and den quadratic in x.
  double n0 = 0.0, n1 = 0.0, c0 = 0.0, c1 = 0.0, c2 = 0.0;
  switch (kind) {
    case SchemeKind::WM:
      n1 = 2.0 * db * pb;
      n0 = db * pb * db * pb;
      c2 = 1.0 + 2.0 * d * d * pb * pb;
      c1 = 4.0 * d * db * pb * pb;
      c0 = 2.0 * db * db * pb * pb;
      break;
    case SchemeKind::EAM:
      n1 = 2.0 * db;
      n0 = db * db;
      c2 = 1.0;
      c0 = 2.0 * db * db;
      break;
    case SchemeKind::PlainAD:
      throw Error("numeric_optimal_strength: the baseline scheme has no reversal strength");
  }
  auto coherence = [&](double x) -> double {
    const double den = (c2 * x + c1) * x + c0;
    return den > 0.0 ? (n1 * x + n0) / den : 0.0;
  };
  // Sign of dG/dx: num' den - num den', which crosses zero linearly at the
  // optimum where G itself is flat.
  auto slope = [&](double x) { return n1 * ((c2 * x + c1) * x + c0) - (n1 * x + n0) * (2.0 * c2 * x + c1); };

  const double lo = 1.0 - kMaxReversalStrength;
  double x = golden_section_max(coherence, lo, 1.0, kStrengthTolerance);
  // Golden section only resolves a flat maximum to ~sqrt(eps); finish by
  // bisecting the slope when it brackets a sign change.
  double a = std::max(lo, x - 1e-6), b = std::min(1.0, x + 1e-6);
  if (slope(a) > 0.0 && slope(b) < 0.0) {
    for (int i = 0; i < 200 && b - a > 0.0; ++i) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      (slope(m) > 0.0 ? a : b) = m;
    }
    x = 0.5 * (a + b);
  }
  const double g = coherence(x);
  OptimalStrength out;
  out.strength = 1.0 - x;
  out.zeta = g > 0.0 ? zeta_from_coherence(g) : std::numeric_limits<double>::infinity();
  return out;
}

double success_probability(SchemeKind kind, double d, double p, double strength) {
  require_unit(d, "d");
  require_unit(p, "p");
  require_unit(strength, "strength");
  switch (kind) {
    case SchemeKind::PlainAD:
      return 1.0;
    case SchemeKind::WM:
      return closed_wm_normalization(NoiseParams::symmetric(d),
                                     MeasurementStrengths::symmetric(p, strength));
    case SchemeKind::EAM: {
      const double y = 1.0 - strength, db = 1.0 - d;
      return y * y * y * y / 3.0 + 2.0 / 3.0 * db * db * y * y;
    }
  }
  return 0.0;
}

double delta_comparison(double d, double p) {
  const auto eam = numeric_optimal_strength(SchemeKind::EAM, d, p);
  const auto wm = numeric_optimal_strength(SchemeKind::WM, d, p);
  const double p_eam = success_probability(SchemeKind::EAM, d, p, eam.strength);
  const double p_wm = success_probability(SchemeKind::WM, d, p, wm.strength);
  return p_eam / eam.zeta - p_wm / wm.zeta;
}

PaperVarianceBounds variance_bounds(SchemeKind, double zeta) {
  if (!(zeta > 0.0)) throw Error("variance_bounds: zeta must be positive");
  return {3.0 * std::numbers::sqrt2 / 4.0 * zeta, 27.0 * std::numbers::sqrt2 / 34.0 * zeta};
}

PrintedQfim printed_qfim(double zeta) {
  return {4.0 * std::numbers::sqrt2 / 3.0 / zeta, 4.0 / 9.0 / zeta};
}

double printed_ratio() {
  const auto b = variance_bounds(SchemeKind::PlainAD, 1.0);
  return b.delta_ind / (b.delta_sim / 2.0);
}

SchemeResult evaluate_scheme(SchemeKind kind, double d, double p) {
  SchemeResult r;
  if (kind == SchemeKind::PlainAD) {
    r.zeta_opt = zeta1(d);
    r.strength_opt = 0.0;
    r.success_probability = 1.0;
  } else {
    const auto opt = numeric_optimal_strength(kind, d, p);
    r.zeta_opt = opt.zeta;
    r.strength_opt = opt.strength;
    r.success_probability = success_probability(kind, d, p, opt.strength);
  }
  if (std::isfinite(r.zeta_opt)) {
    const auto vb = variance_bounds(kind, r.zeta_opt);
    r.delta_ind = vb.delta_ind;
    r.delta_sim = vb.delta_sim;
  } else {
    r.delta_ind = r.delta_sim = std::numeric_limits<double>::infinity();
  }
  return r;
}

SchemeRun simulate_scheme(SchemeKind kind, double d, double p, double strength,
                          const InputState& in) {
  const auto np = NoiseParams::symmetric(d);
  SchemeRun run;
  switch (kind) {
    case SchemeKind::PlainAD:
      run.resource = prepare_plain(np);
      break;
    case SchemeKind::WM:
      run.resource = prepare_wm(np, MeasurementStrengths::symmetric(p, strength));
      break;
    case SchemeKind::EAM:
      run.resource = prepare_eam(np, MeasurementStrengths::symmetric(0.0, strength));
      break;
  }
  run.output = teleport(in, run.resource.rho);
  return run;
}

OutputState closed_scheme_output(SchemeKind kind, double d, double p, double strength,
                                 const InputState& in) {
  const auto np = NoiseParams::symmetric(d);
  switch (kind) {
    case SchemeKind::PlainAD:
      return closed_output_plain(np, in);
    case SchemeKind::WM:
      return closed_output_wm(np, MeasurementStrengths::symmetric(p, strength), in);
    case SchemeKind::EAM:
      return closed_output_eam(np, MeasurementStrengths::symmetric(0.0, strength), in);
  }
  throw Error("closed_scheme_output: unknown scheme");
}

}  // namespace qutele
