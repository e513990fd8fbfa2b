// AVX2 variants. Compiled with -mavx2 in this translation unit only; callers
// reach them through the runtime dispatch in kernels.cpp.
//
// Elementwise kernels use only vmulpd/vaddpd/vdivpd so each lane performs
// exactly the scalar IEEE operation sequence: results are bit-identical to
// the scalar reference. Reductions keep four independent accumulators and
// combine them in a fixed order; they are deterministic per process but may
// differ from the scalar reference in the last ulps.

#include <immintrin.h>

#include "occlang/kernels.hpp"

namespace occlang::kernels::avx2 {

namespace {

// Fixed-order horizontal sum: (lane0 + lane1) + (lane2 + lane3).
inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const double l0 = _mm_cvtsd_f64(lo);
  const double l1 = _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
  const double l2 = _mm_cvtsd_f64(hi);
  const double l3 = _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
  return (l0 + l1) + (l2 + l3);
}

}  // namespace

double sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double out = hsum(acc);
  for (; i < n; ++i) out += x[i];
  return out;
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += x[i] * y[i];
  return out;
}

double centered_dot(const double* x, const double* y, double mx, double my, std::size_t n) {
  const __m256d vmx = _mm256_set1_pd(mx);
  const __m256d vmy = _mm256_set1_pd(my);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d cx = _mm256_sub_pd(_mm256_loadu_pd(x + i), vmx);
    const __m256d cy = _mm256_sub_pd(_mm256_loadu_pd(y + i), vmy);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(cx, cy));
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += (x[i] - mx) * (y[i] - my);
  return out;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void topic_scores(const double* wt, const double* dt, const double* kt, double alpha,
                  double beta, double denom, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  const __m256d vd = _mm256_set1_pd(denom);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d num = _mm256_mul_pd(_mm256_add_pd(_mm256_loadu_pd(wt + i), vb),
                                      _mm256_add_pd(_mm256_loadu_pd(dt + i), va));
    const __m256d den = _mm256_add_pd(_mm256_loadu_pd(kt + i), vd);
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, den));
  }
  for (; i < n; ++i) out[i] = (wt[i] + beta) * (dt[i] + alpha) / (kt[i] + denom);
}

void fold_scores(const double* phi, const double* dt, double alpha, double* out,
                 std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(phi + i),
                                            _mm256_add_pd(_mm256_loadu_pd(dt + i), va)));
  }
  for (; i < n; ++i) out[i] = phi[i] * (dt[i] + alpha);
}

}  // namespace occlang::kernels::avx2
