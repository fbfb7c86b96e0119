// Reference kernels. Plain loops, one accumulator, in-order reduction;
// the SIMD backends are tested against these.

#include "finfom/kernels.hpp"

namespace finfom::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum(const double* x, std::size_t n) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

void affine(const double* a, std::size_t rows, std::size_t cols, const double* x,
            const double* bias, double* y) noexcept {
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = bias ? bias[r] : 0.0;
    const double* row = a + r * cols;
    for (std::size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace finfom::kernels::scalar
