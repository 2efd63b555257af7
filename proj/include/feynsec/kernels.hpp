#pragma once

#include <feynsec/polynomial.hpp>

#include <vector>

namespace feynsec {

// Flattened polynomial for batched double evaluation. Terms keep the map order
// of Polynomial so results match Polynomial::evaluate bit for bit.
struct CompiledPoly {
  int nvars = 0;
  std::vector<double> coef;
  std::vector<int> exps;  // nterms * nvars
};

CompiledPoly compile(const Polynomial& p);

// x holds variable v for lane k at x[v * stride + k]; writes count values.
using PolyBatchFn = void (*)(const CompiledPoly& p, const double* x, int stride, int count, double* out);

void poly_batch_scalar(const CompiledPoly& p, const double* x, int stride, int count, double* out);
#ifdef FEYNSEC_BUILD_AVX2
void poly_batch_avx2(const CompiledPoly& p, const double* x, int stride, int count, double* out);
#endif

bool avx2_available();
// AVX2 when the CPU has it, unless FEYNSEC_SCALAR is set.
PolyBatchFn poly_batch_kernel();
const char* poly_batch_kernel_name();

}  // namespace feynsec
