#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "qillum/error.hpp"
#include "qillum/simd/kernels.hpp"

namespace qillum::simd {

namespace {

bool cpu_has_avx2() {
#if defined(QILLUM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() {
  if (const char* forced = std::getenv("QILLUM_SIMD")) {
    const std::string_view name(forced);
    if (name == "scalar") return Backend::Scalar;
    if (name == "avx2" && cpu_has_avx2()) return Backend::Avx2;
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

const char* backend_name(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend backend) {
  return backend == Backend::Scalar || (backend == Backend::Avx2 && cpu_has_avx2());
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (!backend_available(backend)) {
    throw InvalidArgument(std::string("SIMD backend not available: ") + backend_name(backend));
  }
  current().store(backend, std::memory_order_relaxed);
}

void hadamard_madd(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != out.size() || b.size() != out.size()) {
    throw InvalidArgument("hadamard_madd: length mismatch");
  }
#if defined(QILLUM_HAVE_AVX2)
  if (active_backend() == Backend::Avx2) return avx2::hadamard_madd(out, a, b);
#endif
  scalar::hadamard_madd(out, a, b);
}

cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw InvalidArgument("dot_conj: length mismatch");
#if defined(QILLUM_HAVE_AVX2)
  if (active_backend() == Backend::Avx2) return avx2::dot_conj(a, b);
#endif
  return scalar::dot_conj(a, b);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("dot: length mismatch");
#if defined(QILLUM_HAVE_AVX2)
  if (active_backend() == Backend::Avx2) return avx2::dot(a, b);
#endif
  return scalar::dot(a, b);
}

}  // namespace qillum::simd
