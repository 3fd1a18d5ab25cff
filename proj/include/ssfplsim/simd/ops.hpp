#pragma once

#include <cstddef>

// Data-parallel inner loops used by the smoothing / profiling / descent hot
// paths. Scalar reference kernels live in ops_scalar.cpp; AVX2+FMA variants in
// ops_avx2.cpp. The function pointers below are resolved once at startup from
// CPUID; set SSFPLSIM_SIMD=scalar (or avx2) to force a lane.
// Equivalence between lanes is covered by tests/test_kernels.cpp.

namespace ssfplsim::simd {

// sum_i a[i]*b[i]
extern double (*dot)(const double* a, const double* b, std::size_t n);
// y[i] += alpha * x[i]
extern void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
// sum_i x[i]
extern double (*sum)(const double* x, std::size_t n);
// sum_i (a[i]-b[i])^2
extern double (*sq_diff_sum)(const double* a, const double* b, std::size_t n);
// out[i] = max(0, 1 - ((s[i]-center)*inv_h)^2); returns sum(out).
// This is the (unnormalised) Epanechnikov kernel over projected distances.
extern double (*epan_weights)(const double* s, std::size_t n, double center,
                              double inv_h, double* out);

// Name of the selected lane: "scalar" or "avx2".
const char* active();

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double sq_diff_sum(const double* a, const double* b, std::size_t n);
double epan_weights(const double* s, std::size_t n, double center, double inv_h,
                    double* out);
}  // namespace scalar

#if defined(SSFPLSIM_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double sq_diff_sum(const double* a, const double* b, std::size_t n);
double epan_weights(const double* s, std::size_t n, double center, double inv_h,
                    double* out);
}  // namespace avx2
#endif

bool avx2_supported();

}  // namespace ssfplsim::simd
