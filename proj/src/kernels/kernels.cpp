#include "occlang/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace occlang::kernels {

namespace scalar {

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double centered_dot(const double* x, const double* y, double mx, double my, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += (x[i] - mx) * (y[i] - my);
  return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void topic_scores(const double* wt, const double* dt, const double* kt, double alpha,
                  double beta, double denom, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (wt[i] + beta) * (dt[i] + alpha) / (kt[i] + denom);
  }
}

void fold_scores(const double* phi, const double* dt, double alpha, double* out,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = phi[i] * (dt[i] + alpha);
}

}  // namespace scalar

bool avx2_supported() {
#if defined(OCCLANG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

namespace {

Isa resolve_initial() {
  if (const char* env = std::getenv("OCCLANG_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Isa::avx2;
  }
  return avx2_supported() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{resolve_initial()};
  return slot;
}

}  // namespace

Isa active() { return active_slot().load(std::memory_order_relaxed); }

void set_active(Isa isa) {
#if !defined(OCCLANG_HAVE_AVX2)
  isa = Isa::scalar;
#else
  if (isa == Isa::avx2 && !avx2_supported()) isa = Isa::scalar;
#endif
  active_slot().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

#if defined(OCCLANG_HAVE_AVX2)
#define OCCLANG_DISPATCH(fn, ...) \
  return active() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define OCCLANG_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

double sum(const double* x, std::size_t n) { OCCLANG_DISPATCH(sum, x, n); }

double dot(const double* x, const double* y, std::size_t n) { OCCLANG_DISPATCH(dot, x, y, n); }

double centered_dot(const double* x, const double* y, double mx, double my, std::size_t n) {
  OCCLANG_DISPATCH(centered_dot, x, y, mx, my, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  OCCLANG_DISPATCH(axpy, a, x, y, n);
}

void topic_scores(const double* wt, const double* dt, const double* kt, double alpha,
                  double beta, double denom, double* out, std::size_t n) {
  OCCLANG_DISPATCH(topic_scores, wt, dt, kt, alpha, beta, denom, out, n);
}

void fold_scores(const double* phi, const double* dt, double alpha, double* out,
                 std::size_t n) {
  OCCLANG_DISPATCH(fold_scores, phi, dt, alpha, out, n);
}

#undef OCCLANG_DISPATCH

}  // namespace occlang::kernels
