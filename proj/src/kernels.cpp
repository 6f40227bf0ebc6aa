#include "trinet/kernels.hpp"

#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define TRINET_X86 1
#endif

namespace trinet::kernels {

namespace scalar {

std::size_t intersect_count(const std::uint32_t* a, std::size_t na,
                            const std::uint32_t* b, std::size_t nb) {
    std::size_t i = 0, j = 0, count = 0;
    while (i < na && j < nb) {
        if (a[i] < b[j]) {
            ++i;
        } else if (a[i] > b[j]) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace scalar

namespace avx2 {

#ifdef TRINET_X86

bool supported() { return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"); }

// Block-compare 8 elements of a against all 8 rotations of a b block, then
// advance whichever side's block maximum is smaller. Inputs are sorted and
// duplicate-free, so popcount of the combined masks is the match count.
__attribute__((target("avx2")))
std::size_t intersect_count(const std::uint32_t* a, std::size_t na,
                            const std::uint32_t* b, std::size_t nb) {
    std::size_t i = 0, j = 0, count = 0;
    const std::size_t na8 = na & ~std::size_t(7);
    const std::size_t nb8 = nb & ~std::size_t(7);
    const __m256i rot1 = _mm256_setr_epi32(1, 2, 3, 4, 5, 6, 7, 0);
    while (i < na8 && j < nb8) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + j));
        __m256i eq = _mm256_cmpeq_epi32(va, vb);
        for (int r = 1; r < 8; ++r) {
            vb = _mm256_permutevar8x32_epi32(vb, rot1);
            eq = _mm256_or_si256(eq, _mm256_cmpeq_epi32(va, vb));
        }
        count += static_cast<std::size_t>(
            __builtin_popcount(static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)))));
        const std::uint32_t amax = a[i + 7], bmax = b[j + 7];
        if (amax <= bmax) i += 8;
        if (bmax <= amax) j += 8;
    }
    return count + scalar::intersect_count(a + i, na - i, b + j, nb - j);
}

__attribute__((target("avx2,fma")))
double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

__attribute__((target("avx2,fma")))
void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

#else  // non-x86: AVX2 entry points fall through to scalar

bool supported() { return false; }

std::size_t intersect_count(const std::uint32_t* a, std::size_t na,
                            const std::uint32_t* b, std::size_t nb) {
    return scalar::intersect_count(a, na, b, nb);
}

double dot(const double* a, const double* b, std::size_t n) { return scalar::dot(a, b, n); }

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    scalar::axpy(alpha, x, y, n);
}

#endif

}  // namespace avx2

namespace {

struct Dispatch {
    std::size_t (*intersect_count)(const std::uint32_t*, std::size_t, const std::uint32_t*,
                                   std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    std::string name;
};

Dispatch select_backend() {
    const char* env = std::getenv("TRINET_SIMD");
    const bool force_scalar = env && std::strcmp(env, "scalar") == 0;
    if (!force_scalar && avx2::supported()) {
        return {&avx2::intersect_count, &avx2::dot, &avx2::axpy, "avx2"};
    }
    return {&scalar::intersect_count, &scalar::dot, &scalar::axpy, "scalar"};
}

const Dispatch& backend() {
    static const Dispatch d = select_backend();
    return d;
}

}  // namespace

std::size_t intersect_count(const std::uint32_t* a, std::size_t na,
                            const std::uint32_t* b, std::size_t nb) {
    return backend().intersect_count(a, na, b, nb);
}

double dot(const double* a, const double* b, std::size_t n) { return backend().dot(a, b, n); }

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    backend().axpy(alpha, x, y, n);
}

const std::string& active_backend() { return backend().name; }

}  // namespace trinet::kernels
