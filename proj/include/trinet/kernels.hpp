#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

// Hot inner loops shared by the graph censuses and the learner.
// Scalar reference kernels plus AVX2 variants; the active backend is picked
// once at startup (overridable with TRINET_SIMD=scalar|avx2).

namespace trinet::kernels {

namespace scalar {
std::size_t intersect_count(const std::uint32_t* a, std::size_t na,
                            const std::uint32_t* b, std::size_t nb);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool supported();
std::size_t intersect_count(const std::uint32_t* a, std::size_t na,
                            const std::uint32_t* b, std::size_t nb);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace avx2

// Dispatched entry points.
std::size_t intersect_count(const std::uint32_t* a, std::size_t na,
                            const std::uint32_t* b, std::size_t nb);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);

const std::string& active_backend();

}  // namespace trinet::kernels
