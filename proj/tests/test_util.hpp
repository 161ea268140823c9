#pragma once

#include <cmath>
#include <random>

#include "qutele/tensor.hpp"

namespace testutil {

using qutele::Complex;
using qutele::ComplexMatrix;

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

inline ComplexMatrix random_matrix(std::size_t n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n);
  for (auto& z : m.entries()) z = {g(rng), g(rng)};
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937& rng) {
  const auto a = random_matrix(n, rng);
  return Complex(0.5) * (a + qutele::dagger(a));
}

inline ComplexMatrix random_density(std::size_t n, std::mt19937& rng) {
  const auto a = random_matrix(n, rng);
  auto rho = a * qutele::dagger(a);
  return Complex(1.0 / qutele::trace(rho).real()) * rho;
}

}  // namespace testutil
