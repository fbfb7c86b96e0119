#include "finfom/linalg.hpp"

#include <cmath>

#include "finfom/errors.hpp"

namespace finfom::linalg {

std::vector<double> ridge_least_squares(const std::vector<double>& a,
                                        std::size_t n_rows, std::size_t n_cols,
                                        const std::vector<double>& y,
                                        double ridge) {
  if (a.size() != n_rows * n_cols || y.size() != n_rows || n_cols == 0) {
    raise(ErrorCode::InvalidArgument, "least squares shape mismatch");
  }
  // Augment with sqrt(ridge) * I rows so the QR path handles regularization.
  const std::size_t m = n_rows + (ridge > 0.0 ? n_cols : 0);
  std::vector<double> r(m * n_cols, 0.0);
  std::vector<double> rhs(m, 0.0);
  for (std::size_t i = 0; i < n_rows * n_cols; ++i) r[i] = a[i];
  for (std::size_t i = 0; i < n_rows; ++i) rhs[i] = y[i];
  if (ridge > 0.0) {
    const double s = std::sqrt(ridge);
    for (std::size_t j = 0; j < n_cols; ++j) r[(n_rows + j) * n_cols + j] = s;
  }

  // Householder QR, applying reflectors to rhs as we go.
  for (std::size_t k = 0; k < n_cols; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i) norm += r[i * n_cols + k] * r[i * n_cols + k];
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = r[k * n_cols + k] > 0.0 ? -norm : norm;
    std::vector<double> v(m - k);
    v[0] = r[k * n_cols + k] - alpha;
    for (std::size_t i = k + 1; i < m; ++i) v[i - k] = r[i * n_cols + k];
    double vnorm2 = 0.0;
    for (double vi : v) vnorm2 += vi * vi;
    if (vnorm2 == 0.0) continue;
    r[k * n_cols + k] = alpha;
    for (std::size_t i = k + 1; i < m; ++i) r[i * n_cols + k] = 0.0;
    for (std::size_t j = k + 1; j < n_cols; ++j) {
      double proj = 0.0;
      for (std::size_t i = k; i < m; ++i) proj += v[i - k] * r[i * n_cols + j];
      const double scale = 2.0 * proj / vnorm2;
      for (std::size_t i = k; i < m; ++i) r[i * n_cols + j] -= scale * v[i - k];
    }
    double proj = 0.0;
    for (std::size_t i = k; i < m; ++i) proj += v[i - k] * rhs[i];
    const double scale = 2.0 * proj / vnorm2;
    for (std::size_t i = k; i < m; ++i) rhs[i] -= scale * v[i - k];
  }

  // Back substitution on the upper-triangular factor.
  std::vector<double> x(n_cols, 0.0);
  for (std::size_t jj = n_cols; jj-- > 0;) {
    double acc = rhs[jj];
    for (std::size_t j = jj + 1; j < n_cols; ++j) acc -= r[jj * n_cols + j] * x[j];
    const double diag = r[jj * n_cols + jj];
    if (diag == 0.0 || !std::isfinite(diag)) {
      raise(ErrorCode::InvalidArgument, "singular least squares system");
    }
    x[jj] = acc / diag;
  }
  return x;
}

}  // namespace finfom::linalg
