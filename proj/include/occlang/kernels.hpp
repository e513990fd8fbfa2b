#pragma once

#include <cstddef>

// Numeric inner loops shared by the topic model, the statistics engine and
// the classifier. Each kernel has a scalar reference implementation and, on
// x86-64, an AVX2 variant selected at runtime. The elementwise kernels
// (topic_scores, fold_scores, axpy) are bit-identical between the two paths:
// they perform the same IEEE add/mul/div per lane and never contract to FMA.
// The reductions (sum, dot, centered_dot) reassociate in the AVX2 path and
// agree with the scalar path only up to rounding; callers that need
// bit-stable sums across paths (the Gibbs sampler's cumulative weights) do
// their own sequential accumulation.

namespace occlang::kernels {

enum class Isa { scalar, avx2 };

/// True when the CPU supports AVX2 and the binary carries the AVX2 variants.
bool avx2_supported();

/// Active implementation. Resolved once from the CPU and the OCCLANG_KERNELS
/// environment variable ("scalar", "avx2", "auto"); override with set_active.
Isa active();
void set_active(Isa isa);
const char* isa_name(Isa isa);

double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double centered_dot(const double* x, const double* y, double mx, double my, std::size_t n);

/// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

/// out[i] = (wt[i] + beta) * (dt[i] + alpha) / (kt[i] + denom)
void topic_scores(const double* wt, const double* dt, const double* kt, double alpha,
                  double beta, double denom, double* out, std::size_t n);

/// out[i] = phi[i] * (dt[i] + alpha)
void fold_scores(const double* phi, const double* dt, double alpha, double* out,
                 std::size_t n);

namespace scalar {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double centered_dot(const double* x, const double* y, double mx, double my, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void topic_scores(const double* wt, const double* dt, const double* kt, double alpha,
                  double beta, double denom, double* out, std::size_t n);
void fold_scores(const double* phi, const double* dt, double alpha, double* out,
                 std::size_t n);
}  // namespace scalar

#if defined(OCCLANG_HAVE_AVX2)
namespace avx2 {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double centered_dot(const double* x, const double* y, double mx, double my, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void topic_scores(const double* wt, const double* dt, const double* kt, double alpha,
                  double beta, double denom, double* out, std::size_t n);
void fold_scores(const double* phi, const double* dt, double alpha, double* out,
                 std::size_t n);
}  // namespace avx2
#endif

}  // namespace occlang::kernels
