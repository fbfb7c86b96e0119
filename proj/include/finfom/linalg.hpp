#pragma once
// Small dense least-squares solver for the polynomial fits.

#include <cstddef>
#include <vector>

namespace finfom::linalg {

// Minimizes ||A x - y||^2 + ridge * ||x||^2 via Householder QR on the
// ridge-augmented system. A is row-major (n_rows x n_cols), n_rows >= 1.
// Throws InvalidArgument on shape mismatch or a numerically singular system.
std::vector<double> ridge_least_squares(const std::vector<double>& a,
                                        std::size_t n_rows, std::size_t n_cols,
                                        const std::vector<double>& y,
                                        double ridge);

}  // namespace finfom::linalg
