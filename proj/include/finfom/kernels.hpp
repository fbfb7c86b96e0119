#pragma once
// Dense double-precision kernels behind the model evaluators and trainers.
// A scalar reference implementation always exists; on x86-64 an AVX2+FMA
// variant is selected at startup when the CPU supports it. The environment
// variable FINFOM_KERNEL=scalar|avx2 forces a backend.
//
// SIMD variants reassociate reductions, so results may differ from the
// scalar reference in the last bits; equivalence is tested to tight relative
// tolerance. Within one process the backend is fixed, keeping every run
// bit-reproducible.

#include <cstddef>

namespace finfom::kernels {

enum class Backend { Scalar, Avx2 };

Backend active_backend() noexcept;
const char* backend_name(Backend b) noexcept;
bool backend_available(Backend b) noexcept;
void set_backend(Backend b);  // throws InvalidArgument if unavailable

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n) noexcept;
// sum_i x[i]
double sum(const double* x, std::size_t n) noexcept;
// y = A x + bias, A row-major (rows x cols); bias may be null.
void affine(const double* a, std::size_t rows, std::size_t cols,
            const double* x, const double* bias, double* y) noexcept;
// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;

inline double mean(const double* x, std::size_t n) noexcept {
  return n == 0 ? 0.0 : sum(x, n) / static_cast<double>(n);
}

namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double sum(const double* x, std::size_t n) noexcept;
void affine(const double* a, std::size_t rows, std::size_t cols,
            const double* x, const double* bias, double* y) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define FINFOM_HAVE_AVX2_BACKEND 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double sum(const double* x, std::size_t n) noexcept;
void affine(const double* a, std::size_t rows, std::size_t cols,
            const double* x, const double* bias, double* y) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
}  // namespace avx2
#endif

}  // namespace finfom::kernels
