#include "qutele/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qutele {

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kOffDiagonalTolerance = 1e-13;
constexpr int kMaxSweeps = 100;

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw Error(msg.str());
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim * dim) {
    std::ostringstream msg;
    msg << "ComplexMatrix: expected " << dim * dim << " entries, got " << data_.size();
    throw Error(msg.str());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> diag) {
  return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> v) {
  ComplexMatrix m(v.size());
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = v[r] * std::conj(v[c]);
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_dim(*this, o, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_dim(*this, o, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_mul(a, b); }

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "mat_mul");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t m = a.dim();
  const std::size_t n = b.dim();
  ComplexMatrix out(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(i * n + k, j * n + l) = aij * b(k, l);
    }
  return out;
}

Complex trace(const ComplexMatrix& a) {
  Complex t{};
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

ComplexMatrix conjugate(const ComplexMatrix& a, const ComplexMatrix& b) {
  return mat_mul(mat_mul(a, b), dagger(a));
}

std::vector<Complex> apply(const ComplexMatrix& a, std::span<const Complex> v) {
  if (v.size() != a.dim()) {
    std::ostringstream msg;
    msg << "apply: dimension mismatch (" << a.dim() << " vs " << v.size() << ")";
    throw Error(msg.str());
  }
  std::vector<Complex> out(a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c) out[r] += a(r, c) * v[c];
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (dims.empty() || total != rho.dim()) {
    std::ostringstream msg;
    msg << "partial_trace: subsystem dims multiply to " << total << " but matrix has dim "
        << rho.dim();
    throw Error(msg.str());
  }
  if (keep.empty()) throw Error("partial_trace: keep set is empty");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) throw Error("partial_trace: invalid keep index");
    kept[k] = true;
  }

  // Split each full index into (kept index, traced index), both mixed-radix
  // in the original subsystem order.
  std::vector<std::size_t> kept_idx(total), traced_idx(total);
  std::size_t kept_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (kept[s]) kept_dim *= dims[s];
  for (std::size_t full = 0; full < total; ++full) {
    std::size_t rem = full, stride = total, ki = 0, ti = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      stride /= dims[s];
      const std::size_t digit = rem / stride;
      rem %= stride;
      if (kept[s])
        ki = ki * dims[s] + digit;
      else
        ti = ti * dims[s] + digit;
    }
    kept_idx[full] = ki;
    traced_idx[full] = ti;
  }

  ComplexMatrix out(kept_dim);
  for (std::size_t r = 0; r < total; ++r)
    for (std::size_t c = 0; c < total; ++c)
      if (traced_idx[r] == traced_idx[c]) out(kept_idx[r], kept_idx[c]) += rho(r, c);
  return out;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& x : a.entries()) s += std::norm(x);
  return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "frobenius_distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    s += std::norm(a.entries()[i] - b.entries()[i]);
  return std::sqrt(s);
}

double hermiticity_violation(const ComplexMatrix& a) {
  double worst = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = r; c < a.dim(); ++c)
      worst = std::max(worst, std::abs(a(r, c) - std::conj(a(c, r))));
  return worst;
}

std::vector<Complex> Eigensystem::vector(std::size_t k) const {
  std::vector<Complex> v(eigenvectors.dim());
  for (std::size_t r = 0; r < v.size(); ++r) v[r] = eigenvectors(r, k);
  return v;
}

Eigensystem hermitian_eig(const ComplexMatrix& input) {
  const double violation = hermiticity_violation(input);
  if (violation > kHermitianTolerance) {
    std::ostringstream msg;
    msg << "hermitian_eig: matrix is not Hermitian (max |a - a^dagger| = " << violation << ")";
    throw Error(msg.str());
  }
  const std::size_t n = input.dim();
  ComplexMatrix a = input;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = kOffDiagonalTolerance * std::max(1.0, frobenius_norm(a));

  int sweep = 0;
  for (; sweep < kMaxSweeps && off_diagonal_norm(a) >= threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g < 1e-300) continue;
        // Phase-rotate so the (p,q) element is real, then apply a real
        // Jacobi rotation. J acts on columns p, q.
        const Complex phase = a(p, q) / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
  }
  if (off_diagonal_norm(a) >= threshold) {
    std::ostringstream msg;
    msg << "hermitian_eig: no convergence after " << kMaxSweeps << " sweeps";
    throw Error(msg.str());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

  Eigensystem es{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    es.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) es.eigenvectors(r, k) = v(r, order[k]);
  }
  return es;
}

}  // namespace qutele
