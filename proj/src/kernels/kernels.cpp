#include "finfom/kernels.hpp"

#include <cstdlib>
#include <string>

#include "finfom/errors.hpp"

namespace finfom::kernels {
namespace {

struct Vtable {
  double (*dot)(const double*, const double*, std::size_t) noexcept;
  double (*sum)(const double*, std::size_t) noexcept;
  void (*affine)(const double*, std::size_t, std::size_t, const double*,
                 const double*, double*) noexcept;
  void (*axpy)(double, const double*, double*, std::size_t) noexcept;
};

constexpr Vtable kScalarVtable{scalar::dot, scalar::sum, scalar::affine, scalar::axpy};

#if FINFOM_HAVE_AVX2_BACKEND
constexpr Vtable kAvx2Vtable{avx2::dot, avx2::sum, avx2::affine, avx2::axpy};

bool cpu_has_avx2_fma() noexcept {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

struct Dispatch {
  Backend backend;
  const Vtable* vtable;

  Dispatch() : backend(Backend::Scalar), vtable(&kScalarVtable) {
#if FINFOM_HAVE_AVX2_BACKEND
    if (cpu_has_avx2_fma()) {
      backend = Backend::Avx2;
      vtable = &kAvx2Vtable;
    }
#endif
    if (const char* env = std::getenv("FINFOM_KERNEL")) {
      const std::string want(env);
      if (want == "scalar") {
        backend = Backend::Scalar;
        vtable = &kScalarVtable;
      }
#if FINFOM_HAVE_AVX2_BACKEND
      else if (want == "avx2" && cpu_has_avx2_fma()) {
        backend = Backend::Avx2;
        vtable = &kAvx2Vtable;
      }
#endif
    }
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

Backend active_backend() noexcept { return dispatch().backend; }

const char* backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend b) noexcept {
  if (b == Backend::Scalar) return true;
#if FINFOM_HAVE_AVX2_BACKEND
  if (b == Backend::Avx2) return cpu_has_avx2_fma();
#endif
  return false;
}

void set_backend(Backend b) {
  if (!backend_available(b)) {
    raise(ErrorCode::InvalidArgument,
          std::string("kernel backend not available: ") + backend_name(b));
  }
  dispatch().backend = b;
  dispatch().vtable = b == Backend::Scalar ? &kScalarVtable :
#if FINFOM_HAVE_AVX2_BACKEND
                                           &kAvx2Vtable;
#else
                                           &kScalarVtable;
#endif
}

double dot(const double* a, const double* b, std::size_t n) noexcept {
  return dispatch().vtable->dot(a, b, n);
}

double sum(const double* x, std::size_t n) noexcept { return dispatch().vtable->sum(x, n); }

void affine(const double* a, std::size_t rows, std::size_t cols, const double* x,
            const double* bias, double* y) noexcept {
  dispatch().vtable->affine(a, rows, cols, x, bias, y);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
  dispatch().vtable->axpy(alpha, x, y, n);
}

}  // namespace finfom::kernels
