#pragma once

// Data-parallel inner loops shared by the channel, receiver and discrimination
// code. Every kernel has a scalar reference implementation; an AVX2/FMA
// variant is selected at runtime when the CPU supports it. Set QILLUM_SIMD to
// "scalar" or "avx2" to force a backend.

#include <complex>
#include <span>

namespace qillum::simd {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

const char* backend_name(Backend backend);

/// True when the backend is compiled in and supported by the running CPU.
bool backend_available(Backend backend);

Backend active_backend();

/// Throws InvalidArgument if the backend is unavailable.
void set_backend(Backend backend);

/// out[i] += a[i] * b[i]. All spans must have equal length.
void hadamard_madd(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b);

/// sum_i conj(a[i]) * b[i].
cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b);

/// sum_i a[i] * b[i].
double dot(std::span<const double> a, std::span<const double> b);

namespace scalar {
void hadamard_madd(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b);
cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b);
double dot(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

#if defined(QILLUM_HAVE_AVX2)
namespace avx2 {
void hadamard_madd(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b);
cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b);
double dot(std::span<const double> a, std::span<const double> b);
}  // namespace avx2
#endif

}  // namespace qillum::simd
