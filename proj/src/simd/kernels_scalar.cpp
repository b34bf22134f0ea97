#include <cstddef>

#include "qillum/simd/kernels.hpp"

namespace qillum::simd::scalar {

void hadamard_madd(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    // Written out so the result does not depend on the compiler's handling of
    // complex multiplication (no inf/nan recovery path).
    const double re = a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    const double im = a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    out[i] += cplx(re, im);
  }
}

cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b) {
  double re = 0.0;
  double im = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace qillum::simd::scalar
