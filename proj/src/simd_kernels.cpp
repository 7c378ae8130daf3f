#include "ipdsaw/simd_kernels.hpp"

#include <cstring>

#if defined(__x86_64__) || defined(_M_X64)
#define IPDSAW_X86 1
#include <immintrin.h>
#elif defined(__aarch64__)
#define IPDSAW_NEON 1
#include <arm_neon.h>
#endif

namespace ipdsaw::kernels {

namespace scalar {

void add(double* dst, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}

void add_scale(double* dst, const double* a, const double* b, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = (a[i] + b[i]) * s;
}

void scale(double* dst, const double* a, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * s;
}

void axpy(double* dst, const double* a, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += a[i] * s;
}

void mul(double* dst, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

} // namespace scalar

#ifdef IPDSAW_X86
namespace avx2 {

__attribute__((target("avx2"))) void add(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) dst[i] = a[i] + b[i];
}

__attribute__((target("avx2"))) void add_scale(double* dst, const double* a, const double* b, double s, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d sum = _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(sum, vs));
    }
    for (; i < n; ++i) dst[i] = (a[i] + b[i]) * s;
}

__attribute__((target("avx2"))) void scale(double* dst, const double* a, double s, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
    }
    for (; i < n; ++i) dst[i] = a[i] * s;
}

__attribute__((target("avx2"))) void axpy(double* dst, const double* a, double s, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + i), vs);
        _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), prod));
    }
    for (; i < n; ++i) dst[i] += a[i] * s;
}

__attribute__((target("avx2"))) void mul(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

} // namespace avx2
#endif

#ifdef IPDSAW_NEON
namespace neon {

void add(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] + b[i];
}

void add_scale(double* dst, const double* a, const double* b, double s, std::size_t n) {
    const float64x2_t vs = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(dst + i, vmulq_f64(vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)), vs));
    }
    for (; i < n; ++i) dst[i] = (a[i] + b[i]) * s;
}

void scale(double* dst, const double* a, double s, std::size_t n) {
    const float64x2_t vs = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vmulq_f64(vld1q_f64(a + i), vs));
    for (; i < n; ++i) dst[i] = a[i] * s;
}

void axpy(double* dst, const double* a, double s, std::size_t n) {
    const float64x2_t vs = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(dst + i, vaddq_f64(vld1q_f64(dst + i), vmulq_f64(vld1q_f64(a + i), vs)));
    }
    for (; i < n; ++i) dst[i] += a[i] * s;
}

void mul(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

} // namespace neon
#endif

namespace {

struct Backend {
    const char* name;
    void (*add)(double*, const double*, const double*, std::size_t);
    void (*add_scale)(double*, const double*, const double*, double, std::size_t);
    void (*scale)(double*, const double*, double, std::size_t);
    void (*axpy)(double*, const double*, double, std::size_t);
    void (*mul)(double*, const double*, const double*, std::size_t);
};

constexpr Backend kScalar{"scalar", scalar::add, scalar::add_scale, scalar::scale, scalar::axpy, scalar::mul};
#ifdef IPDSAW_X86
constexpr Backend kAvx2{"avx2", avx2::add, avx2::add_scale, avx2::scale, avx2::axpy, avx2::mul};
#endif
#ifdef IPDSAW_NEON
constexpr Backend kNeon{"neon", neon::add, neon::add_scale, neon::scale, neon::axpy, neon::mul};
#endif

const Backend* detect() {
#ifdef IPDSAW_X86
    if (__builtin_cpu_supports("avx2")) return &kAvx2;
#endif
#ifdef IPDSAW_NEON
    return &kNeon;
#endif
    return &kScalar;
}

const Backend* g_backend = detect();

} // namespace

void add(double* dst, const double* a, const double* b, std::size_t n) { g_backend->add(dst, a, b, n); }
void add_scale(double* dst, const double* a, const double* b, double s, std::size_t n) { g_backend->add_scale(dst, a, b, s, n); }
void scale(double* dst, const double* a, double s, std::size_t n) { g_backend->scale(dst, a, s, n); }
void axpy(double* dst, const double* a, double s, std::size_t n) { g_backend->axpy(dst, a, s, n); }
void mul(double* dst, const double* a, const double* b, std::size_t n) { g_backend->mul(dst, a, b, n); }

const char* active_backend() { return g_backend->name; }

bool set_backend(const char* name) {
    if (std::strcmp(name, "scalar") == 0) { g_backend = &kScalar; return true; }
#ifdef IPDSAW_X86
    if (std::strcmp(name, "avx2") == 0 && __builtin_cpu_supports("avx2")) { g_backend = &kAvx2; return true; }
#endif
#ifdef IPDSAW_NEON
    if (std::strcmp(name, "neon") == 0) { g_backend = &kNeon; return true; }
#endif
    return false;
}

} // namespace ipdsaw::kernels
