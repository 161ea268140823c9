#include "qutele/teleport.hpp"

#include <cmath>
#include <sstream>

namespace qutele {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kCoherenceTolerance = 1e-10;

// Two-qutrit row index of |j,k>.
constexpr std::size_t idx(std::size_t j, std::size_t k) { return 3 * j + k; }

void require_symmetric_noise(const NoiseParams& np) {
  np.validate();
  if (!np.is_symmetric()) throw Error("closed form requires symmetric parameters");
}

void require_symmetric(const NoiseParams& np, const MeasurementStrengths& ms) {
  require_symmetric_noise(np);
  ms.validate();
  if (!ms.is_symmetric()) throw Error("closed form requires symmetric parameters");
}

// Diagonal mix/3 + (1 - mix)|amp|^2, coherences scaled by coh.
OutputState output_family(double mix, double coh, const InputState& in) {
  in.validate();
  ComplexMatrix rho = in.projector();
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      rho(r, c) = (r == c) ? mix / 3.0 + (1.0 - mix) * rho(r, c) : coh * rho(r, c);
  return {std::move(rho)};
}

ComplexMatrix bell_analysis_unitary() {
  const ComplexMatrix i3 = ComplexMatrix::identity(3);
  const ComplexMatrix lc = kron(gate_lc(), i3);
  const ComplexMatrix hd = kron(kron(dagger(gate_h()), i3), i3);
  return mat_mul(hd, lc);
}

// Uncorrected, unnormalised Bob states for each outcome (m, n).
std::array<ComplexMatrix, 9> measured_bob_states(const InputState& in,
                                                 const ComplexMatrix& resource) {
  if (resource.dim() != 9) throw Error("teleport: resource must be 9x9");
  static const ComplexMatrix analysis = bell_analysis_unitary();
  const ComplexMatrix joint = conjugate(analysis, kron(in.projector(), resource));

  static constexpr std::array<std::size_t, 3> dims{3, 3, 3};
  static constexpr std::array<std::size_t, 1> bob{2};
  std::array<ComplexMatrix, 9> out;
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t n = 0; n < 3; ++n) {
      ComplexMatrix projected(27);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          const std::size_t r = 9 * m + 3 * n + i;
          const std::size_t c = 9 * m + 3 * n + j;
          projected(r, c) = joint(r, c);
        }
      out[idx(m, n)] = partial_trace(projected, dims, bob);
    }
  return out;
}

std::vector<InputState> correction_probes() {
  // Generic, linearly independent kets (all amplitudes and phases distinct).
  return {
      {std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2), 0.7, 2.1},
      {std::sqrt(0.1), std::sqrt(0.6), std::sqrt(0.3), -1.3, 0.4},
      {std::sqrt(0.25), std::sqrt(0.15), std::sqrt(0.6), 2.9, -0.8},
  };
}

}  // namespace

InputState InputState::balanced(double phi1, double phi2) {
  const double a = 1.0 / std::sqrt(3.0);
  return {a, a, a, phi1, phi2};
}

std::vector<Complex> InputState::ket() const {
  return {alpha, beta * std::polar(1.0, phi1), delta * std::polar(1.0, phi2)};
}

ComplexMatrix InputState::projector() const {
  const auto v = ket();
  return ComplexMatrix::projector(v);
}

bool InputState::is_balanced() const {
  const double a = 1.0 / std::sqrt(3.0);
  return std::abs(alpha - a) < 1e-12 && std::abs(beta - a) < 1e-12 && std::abs(delta - a) < 1e-12;
}

void InputState::validate() const {
  const double norm = alpha * alpha + beta * beta + delta * delta;
  if (std::abs(norm - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "InputState: alpha^2 + beta^2 + delta^2 = " << norm << ", expected 1";
    throw Error(msg.str());
  }
}

ComplexMatrix bell_resource() {
  const double a = 1.0 / std::sqrt(3.0);
  std::vector<Complex> v(9);
  v[idx(0, 0)] = v[idx(1, 1)] = v[idx(2, 2)] = a;
  return ComplexMatrix::projector(v);
}

ResourcePrep prepare_plain(const NoiseParams& np) {
  const KrausSet ad = ad_kraus(np);
  return {apply_channel(bell_resource(), kron(ad, ad)), 1.0};
}

ResourcePrep prepare_wm(const NoiseParams& np, const MeasurementStrengths& ms) {
  const ComplexMatrix m0 = wm_operator(ms);
  const ComplexMatrix mr = qmr_operator(ms);
  const KrausSet ad = ad_kraus(np);
  auto weak = apply_selective(bell_resource(), kron(m0, m0));
  const ComplexMatrix noisy = apply_channel(weak.state, kron(ad, ad));
  auto reversed = apply_selective(noisy, kron(mr, mr));
  return {std::move(reversed.state), weak.probability * reversed.probability};
}

ResourcePrep prepare_eam(const NoiseParams& np, const MeasurementStrengths& ms) {
  const ComplexMatrix e0 = ad_kraus(np).operators.front();
  const ComplexMatrix mr = qmr_operator(ms);
  // The no-click branch and the reversal are a single selective operator.
  auto out = apply_selective(bell_resource(), kron(mr, mr) * kron(e0, e0));
  return {std::move(out.state), out.probability};
}

CorrectionTable derive_correction_table() {
  const auto probes = correction_probes();
  std::vector<std::array<ComplexMatrix, 9>> measured;
  for (const auto& p : probes) measured.push_back(measured_bob_states(p, bell_resource()));

  CorrectionTable table;
  for (std::size_t outcome = 0; outcome < 9; ++outcome) {
    int matches = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const ComplexMatrix u = gate_z(a) * gate_x(b);
        bool ok = true;
        for (std::size_t k = 0; k < probes.size() && ok; ++k) {
          const auto& raw = measured[k][outcome];
          const double prob = trace(raw).real();
          ComplexMatrix bob = conjugate(u, raw);
          bob *= 1.0 / prob;
          ok = frobenius_distance(bob, probes[k].projector()) < 1e-12;
        }
        if (ok) {
          table[outcome] = {a, b, u};
          ++matches;
        }
      }
    if (matches != 1) {
      std::ostringstream msg;
      msg << "derive_correction_table: outcome (" << outcome / 3 << "," << outcome % 3 << ") has "
          << matches << " valid corrections";
      throw Error(msg.str());
    }
  }
  return table;
}

const CorrectionTable& correction_table() {
  static const CorrectionTable table = derive_correction_table();
  return table;
}

std::vector<TeleportBranch> teleport_branches(const InputState& in, const ComplexMatrix& resource,
                                              const CorrectionTable& table) {
  in.validate();
  const auto raw = measured_bob_states(in, resource);
  std::vector<TeleportBranch> out;
  out.reserve(9);
  for (std::size_t outcome = 0; outcome < 9; ++outcome) {
    TeleportBranch br;
    br.m = static_cast<int>(outcome / 3);
    br.n = static_cast<int>(outcome % 3);
    br.probability = trace(raw[outcome]).real();
    if (br.probability > kVanishingProbability) {
      br.bob_state = conjugate(table[outcome].unitary, raw[outcome]);
      br.bob_state *= 1.0 / br.probability;
    } else {
      br.bob_state = ComplexMatrix(3);
    }
    out.push_back(std::move(br));
  }
  return out;
}

OutputState teleport(const InputState& in, const ComplexMatrix& resource) {
  ComplexMatrix rho(3);
  for (const auto& br : teleport_branches(in, resource, correction_table()))
    rho += br.probability * br.bob_state;
  return {std::move(rho)};
}

OutputState closed_output_plain(const NoiseParams& np, const InputState& in) {
  require_symmetric_noise(np);
  const double d = np.d1;
  const double a = 2.0 * d - 2.0 * d * d;
  const double b = 1.0 + d * d / 3.0 - 4.0 * d / 3.0;
  return output_family(a, b, in);
}

double closed_wm_normalization(const NoiseParams& np, const MeasurementStrengths& ms) {
  require_symmetric_noise(np);
  ms.validate();
  const double d = np.d1, db = 1.0 - d;
  const double pb = 1.0 - ms.p, qb = 1.0 - ms.q;
  const double prb = 1.0 - ms.p_r, qrb = 1.0 - ms.q_r;
  return prb * prb * qrb * qrb * (d * d * pb * pb + d * d * qb * qb + 1.0) / 3.0 +
         2.0 / 3.0 * d * db * prb * qrb * (pb * pb * qrb + prb * qb * qb) +
         db * db * (prb * prb * qb * qb + qrb * qrb * pb * pb) / 3.0;
}

OutputState closed_output_wm(const NoiseParams& np, const MeasurementStrengths& ms,
                             const InputState& in) {
  require_symmetric(np, ms);
  const double d = np.d1, db = 1.0 - d;
  const double pb = 1.0 - ms.p, qb = 1.0 - ms.q;
  const double prb = 1.0 - ms.p_r, qrb = 1.0 - ms.q_r;
  const double w = closed_wm_normalization(np, ms);
  if (w <= kVanishingProbability) throw Error("closed_output_wm: outcome has vanishing probability");
  const double c = d * db * prb * qrb * (pb * pb * qrb + qb * qb * prb) / w;
  const double dcoh = db * prb * qrb * (prb * qb + db * pb * qb + pb * qrb) / (3.0 * w);
  return output_family(c, dcoh, in);
}

double closed_eam_normalization(const NoiseParams& np, const MeasurementStrengths& ms) {
  require_symmetric_noise(np);
  ms.validate();
  const double db = 1.0 - np.d1;
  const double prb = 1.0 - ms.p_r, qrb = 1.0 - ms.q_r;
  return (prb * prb * qrb * qrb + db * db * qrb * qrb + db * db * prb * prb) / 3.0;
}

OutputState closed_output_eam(const NoiseParams& np, const MeasurementStrengths& ms,
                              const InputState& in) {
  require_symmetric(np, ms);
  const double db = 1.0 - np.d1;
  const double prb = 1.0 - ms.p_r, qrb = 1.0 - ms.q_r;
  const double u = closed_eam_normalization(np, ms);
  if (u <= kVanishingProbability) throw Error("closed_output_eam: outcome has vanishing probability");
  const double g = db * prb * qrb * (db + prb + qrb) / (3.0 * u);
  return output_family(0.0, g, in);
}

ComplexMatrix closed_resource_plain(const NoiseParams& np) {
  require_symmetric_noise(np);
  const double d = np.d1;
  ComplexMatrix rho(9);
  rho(idx(0, 0), idx(0, 0)) = 1.0 / 3.0 + 2.0 * d * d / 3.0;
  for (auto i : {idx(0, 1), idx(0, 2), idx(1, 0), idx(2, 0)}) rho(i, i) = d * (1.0 - d) / 3.0;
  const double pop = (1.0 - d) * (1.0 - d) / 3.0;
  rho(idx(1, 1), idx(1, 1)) = rho(idx(2, 2), idx(2, 2)) = pop;
  rho(idx(1, 1), idx(2, 2)) = rho(idx(2, 2), idx(1, 1)) = pop;
  const double coh = (1.0 - d) / 3.0;
  for (auto i : {idx(1, 1), idx(2, 2)}) rho(idx(0, 0), i) = rho(i, idx(0, 0)) = coh;
  return rho;
}

ComplexMatrix closed_resource_wm(const NoiseParams& np, const MeasurementStrengths& ms) {
  const double w = closed_wm_normalization(np, ms);
  const double d = np.d1, db = 1.0 - d;
  const double pb = 1.0 - ms.p, qb = 1.0 - ms.q;
  const double prb = 1.0 - ms.p_r, qrb = 1.0 - ms.q_r;
  const double s = 1.0 / (3.0 * w);
  ComplexMatrix rho(9);
  rho(idx(0, 0), idx(0, 0)) = s * prb * prb * qrb * qrb * (1.0 + d * d * pb * pb + d * d * qb * qb);
  rho(idx(0, 1), idx(0, 1)) = rho(idx(1, 0), idx(1, 0)) = s * prb * qrb * qrb * d * db * pb * pb;
  rho(idx(0, 2), idx(0, 2)) = rho(idx(2, 0), idx(2, 0)) = s * prb * prb * qrb * d * db * qb * qb;
  rho(idx(1, 1), idx(1, 1)) = s * qrb * qrb * db * db * pb * pb;
  rho(idx(2, 2), idx(2, 2)) = s * prb * prb * db * db * qb * qb;
  rho(idx(0, 0), idx(1, 1)) = rho(idx(1, 1), idx(0, 0)) = s * prb * qrb * qrb * db * pb;
  rho(idx(0, 0), idx(2, 2)) = rho(idx(2, 2), idx(0, 0)) = s * prb * prb * qrb * db * qb;
  rho(idx(1, 1), idx(2, 2)) = rho(idx(2, 2), idx(1, 1)) = s * prb * qrb * db * db * pb * qb;
  return rho;
}

ComplexMatrix closed_resource_eam(const NoiseParams& np, const MeasurementStrengths& ms) {
  const double u = closed_eam_normalization(np, ms);
  const double db = 1.0 - np.d1;
  const double prb = 1.0 - ms.p_r, qrb = 1.0 - ms.q_r;
  const double s = 1.0 / (3.0 * u);
  ComplexMatrix rho(9);
  rho(idx(0, 0), idx(0, 0)) = s * prb * prb * qrb * qrb;
  rho(idx(1, 1), idx(1, 1)) = s * db * db * qrb * qrb;
  rho(idx(2, 2), idx(2, 2)) = s * db * db * prb * prb;
  rho(idx(0, 0), idx(1, 1)) = rho(idx(1, 1), idx(0, 0)) = s * prb * db * qrb * qrb;
  rho(idx(0, 0), idx(2, 2)) = rho(idx(2, 2), idx(0, 0)) = s * prb * prb * db * qrb;
  rho(idx(1, 1), idx(2, 2)) = rho(idx(2, 2), idx(1, 1)) = s * prb * db * db * qrb;
  return rho;
}

double coherence_factor(const OutputState& out, const InputState& in) {
  if (!in.is_balanced()) throw Error("coherence_factor: input must be balanced");
  const auto& rho = out.rho_out;
  const double g01 = 3.0 * std::abs(rho(0, 1));
  const double g02 = 3.0 * std::abs(rho(0, 2));
  const double g12 = 3.0 * std::abs(rho(1, 2));
  if (std::abs(g01 - g02) > kCoherenceTolerance || std::abs(g01 - g12) > kCoherenceTolerance)
    throw Error("coherence_factor: output not in symmetric family");
  return g01;
}

}  // namespace qutele
