#include <feynsec/kernels.hpp>

#include <immintrin.h>

namespace feynsec {

// Same operation order as the scalar kernel; no FMA so lanes match exactly.
void poly_batch_avx2(const CompiledPoly& p, const double* x, int stride, int count, double* out) {
  const int n = p.nvars;
  const int nt = static_cast<int>(p.coef.size());
  int k = 0;
  for (; k + 4 <= count; k += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int t = 0; t < nt; ++t) {
      __m256d v = _mm256_set1_pd(p.coef[t]);
      const int* e = &p.exps[static_cast<std::size_t>(t) * n];
      for (int j = 0; j < n; ++j) {
        if (!e[j]) continue;
        __m256d xj = _mm256_loadu_pd(x + j * stride + k);
        for (int r = 0; r < e[j]; ++r) v = _mm256_mul_pd(v, xj);
      }
      acc = _mm256_add_pd(acc, v);
    }
    _mm256_storeu_pd(out + k, acc);
  }
  if (k < count) {
    // tail: shift the base pointer so the scalar kernel sees lanes k..count-1
    poly_batch_scalar(p, x + k, stride, count - k, out + k);
  }
}

}  // namespace feynsec
