#include <cstdlib>
#include <cstring>

#include "ssfplsim/simd/ops.hpp"

namespace ssfplsim::simd {

bool avx2_supported() {
#if defined(SSFPLSIM_HAVE_AVX2) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

double (*dot)(const double*, const double*, std::size_t) = scalar::dot;
void (*axpy)(double, const double*, double*, std::size_t) = scalar::axpy;
double (*sum)(const double*, std::size_t) = scalar::sum;
double (*sq_diff_sum)(const double*, const double*, std::size_t) = scalar::sq_diff_sum;
double (*epan_weights)(const double*, std::size_t, double, double, double*) =
    scalar::epan_weights;

namespace {

const char* g_active = "scalar";

void select_lane() {
    const char* force = std::getenv("SSFPLSIM_SIMD");
    const bool want_scalar = force && std::strcmp(force, "scalar") == 0;
#if defined(SSFPLSIM_HAVE_AVX2)
    if (!want_scalar && avx2_supported()) {
        dot = avx2::dot;
        axpy = avx2::axpy;
        sum = avx2::sum;
        sq_diff_sum = avx2::sq_diff_sum;
        epan_weights = avx2::epan_weights;
        g_active = "avx2";
        return;
    }
#endif
    (void)want_scalar;
    g_active = "scalar";
}

struct LaneInit {
    LaneInit() { select_lane(); }
} lane_init;

}  // namespace

const char* active() { return g_active; }

}  // namespace ssfplsim::simd
