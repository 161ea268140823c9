#include "qutele/metrology.hpp"

#include <sstream>

namespace qutele {

namespace {

constexpr double kHermitianDerivativeTolerance = 1e-9;
constexpr double kSingularDet = 1e-14;

}  // namespace

ComplexMatrix d_rho(const PhaseFamily& family, int which) {
  if (which != 0 && which != 1) throw Error("d_rho: parameter index must be 0 or 1");
  const auto [p1, p2] = family.base_point;
  ComplexMatrix out;
  if (family.derivative) {
    out = family.derivative(p1, p2, which);
  } else {
    const double h = kDerivativeStep;
    const double dp1 = which == 0 ? h : 0.0;
    const double dp2 = which == 1 ? h : 0.0;
    out = family.generator(p1 + dp1, p2 + dp2) - family.generator(p1 - dp1, p2 - dp2);
    out *= 1.0 / (2.0 * h);
  }
  const double violation = hermiticity_violation(out);
  if (violation > kHermitianDerivativeTolerance) {
    std::ostringstream msg;
    msg << "d_rho: derivative is not Hermitian (violation " << violation << ")";
    throw Error(msg.str());
  }
  return out;
}

Qfim2 qfim(const ComplexMatrix& rho, const ComplexMatrix& d1, const ComplexMatrix& d2) {
  const Eigensystem es = hermitian_eig(rho);
  const std::size_t n = rho.dim();
  std::vector<double> lambda = es.eigenvalues;
  for (double& l : lambda)
    if (l < kSupportCutoff) l = 0.0;

  const ComplexMatrix vd = dagger(es.eigenvectors);
  const ComplexMatrix a = vd * d1 * es.eigenvectors;
  const ComplexMatrix b = vd * d2 * es.eigenvectors;

  double f11 = 0.0, f12 = 0.0, f22 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double s = lambda[i] + lambda[j];
      if (s <= kSupportCutoff) continue;
      const double w = 2.0 / s;
      f11 += w * std::real(a(i, j) * a(j, i));
      f12 += w * std::real(a(i, j) * b(j, i));
      f22 += w * std::real(b(i, j) * b(j, i));
    }
  return {f11, f12, f12, f22};
}

Qfim2 qfim(const PhaseFamily& family) {
  return qfim(family.at_base(), d_rho(family, 0), d_rho(family, 1));
}

BoundsReport bounds(const Qfim2& f) {
  const double det = f.det();
  if (!(det > kSingularDet)) throw Error("bounds: estimation bound diverges (singular QFIM)");
  BoundsReport r;
  r.delta_ind = 1.0 / f.f11 + 1.0 / f.f22;
  r.delta_sim = (f.f11 + f.f22) / det;
  r.ratio_r = r.delta_ind / (r.delta_sim / 2.0);
  return r;
}

ComplexMatrix phase_covariant_derivative(const ComplexMatrix& rho, int which) {
  if (which != 0 && which != 1) throw Error("phase_covariant_derivative: index must be 0 or 1");
  if (rho.dim() != 3) throw Error("phase_covariant_derivative: expected a qutrit state");
  const std::size_t level = static_cast<std::size_t>(which) + 1;
  ComplexMatrix out(3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      const double weight = (r == level ? 1.0 : 0.0) - (c == level ? 1.0 : 0.0);
      out(r, c) = Complex(0.0, weight) * rho(r, c);
    }
  return out;
}

PhaseFamily teleported_family(const ComplexMatrix& resource, const InputState& base) {
  PhaseFamily fam;
  fam.base_point = {base.phi1, base.phi2};
  fam.generator = [resource, base](double p1, double p2) {
    InputState in = base;
    in.phi1 = p1;
    in.phi2 = p2;
    return teleport(in, resource).rho_out;
  };
  return fam;
}

PhaseFamily depolarized_family(double g, double phi1, double phi2) {
  PhaseFamily fam;
  fam.base_point = {phi1, phi2};
  fam.generator = [g](double p1, double p2) {
    ComplexMatrix rho = ComplexMatrix::identity(3);
    rho *= (1.0 - g) / 3.0;
    rho += g * InputState::balanced(p1, p2).projector();
    return rho;
  };
  fam.derivative = [gen = fam.generator](double p1, double p2, int which) {
    return phase_covariant_derivative(gen(p1, p2), which);
  };
  return fam;
}

}  // namespace qutele
