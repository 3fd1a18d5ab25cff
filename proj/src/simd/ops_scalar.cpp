#include "ssfplsim/simd/ops.hpp"

namespace ssfplsim::simd::scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double acc0 = 0.0, acc1 = 0.0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc0 += a[i] * b[i];
        acc1 += a[i + 1] * b[i + 1];
    }
    if (i < n) acc0 += a[i] * b[i];
    return acc0 + acc1;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double sq_diff_sum(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

double epan_weights(const double* s, std::size_t n, double center, double inv_h,
                    double* out) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (s[i] - center) * inv_h;
        double k = 1.0 - u * u;
        if (k < 0.0) k = 0.0;
        out[i] = k;
        acc += k;
    }
    return acc;
}

}  // namespace ssfplsim::simd::scalar
