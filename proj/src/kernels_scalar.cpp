#include <feynsec/kernels.hpp>

#include <cstdlib>

namespace feynsec {

CompiledPoly compile(const Polynomial& p) {
  CompiledPoly c;
  c.nvars = p.nvars();
  for (auto& [e, q] : p.terms()) {
    c.coef.push_back(q.get_d());
    c.exps.insert(c.exps.end(), e.begin(), e.end());
  }
  return c;
}

void poly_batch_scalar(const CompiledPoly& p, const double* x, int stride, int count, double* out) {
  const int n = p.nvars;
  const int nt = static_cast<int>(p.coef.size());
  for (int k = 0; k < count; ++k) {
    double acc = 0.0;
    for (int t = 0; t < nt; ++t) {
      double v = p.coef[t];
      const int* e = &p.exps[static_cast<std::size_t>(t) * n];
      for (int j = 0; j < n; ++j)
        for (int r = 0; r < e[j]; ++r) v *= x[j * stride + k];
      acc += v;
    }
    out[k] = acc;
  }
}

bool avx2_available() {
#if defined(FEYNSEC_BUILD_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

PolyBatchFn poly_batch_kernel() {
#ifdef FEYNSEC_BUILD_AVX2
  if (avx2_available() && !std::getenv("FEYNSEC_SCALAR")) return poly_batch_avx2;
#endif
  return poly_batch_scalar;
}

const char* poly_batch_kernel_name() {
#ifdef FEYNSEC_BUILD_AVX2
  if (poly_batch_kernel() == poly_batch_avx2) return "avx2";
#endif
  return "scalar";
}

}  // namespace feynsec
