#include <feynsec/errors.hpp>
#include <feynsec/kernels.hpp>
#include <feynsec/mcint.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

namespace feynsec {

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream_id) {
  std::uint64_t z = master ^ (stream_id * 0x9E3779B97F4A7C15ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int worker_count(const MCConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* s = std::getenv("FEYNSEC_THREADS")) {
    int t = std::atoi(s);
    if (t > 0) return t;
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? static_cast<int>(h) : 1;
}

namespace {

constexpr int kBatch = 256;

struct CompiledTerm {
  double coeff;
  int numerator;
  std::vector<std::pair<int, int>> powers, poly_logs, var_logs;
};

double ipow(double v, int e) {
  bool inv = e < 0;
  double r = 1.0;
  for (int k = 0; k < std::abs(e); ++k) r *= v;
  return inv ? 1.0 / r : r;
}

}  // namespace

MCEstimate integrate(const FiniteIntegrand& f, const MCConfig& cfg, std::uint64_t stream_id) {
  if (cfg.samples < 2) throw DomainError("need at least 2 samples");
  MCEstimate est;
  est.n = cfg.samples;
  if (f.terms.empty()) return est;
  const int dim = f.dim;
  std::vector<CompiledPoly> polys;
  for (auto& p : f.pool) polys.push_back(compile(p));
  std::vector<CompiledTerm> terms;
  for (auto& t : f.terms) terms.push_back({t.coeff.get_d(), t.numerator, t.powers, t.poly_logs, t.var_logs});
  PolyBatchFn kernel = poly_batch_kernel();

  std::mt19937_64 rng(stream_seed(cfg.seed, stream_id));
  std::vector<double> x(static_cast<std::size_t>(std::max(dim, 1)) * kBatch);
  std::vector<double> vals(polys.size() * kBatch);
  std::vector<double> logs(polys.size() * kBatch);
  long double sum = 0.0L, sumsq = 0.0L;
  for (long done = 0; done < cfg.samples; done += kBatch) {
    int count = static_cast<int>(std::min<long>(kBatch, cfg.samples - done));
    // lane-major draws so the stream does not depend on the batch size
    for (int k = 0; k < count; ++k)
      for (int v = 0; v < dim; ++v) x[v * kBatch + k] = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    for (std::size_t p = 0; p < polys.size(); ++p) {
      kernel(polys[p], x.data(), kBatch, count, &vals[p * kBatch]);
      for (int k = 0; k < count; ++k) logs[p * kBatch + k] = std::log(vals[p * kBatch + k]);
    }
    for (int k = 0; k < count; ++k) {
      double s = 0.0;
      for (auto& t : terms) {
        double v = t.coeff;
        if (t.numerator >= 0) v *= vals[t.numerator * kBatch + k];
        for (auto& [p, e] : t.powers) v *= ipow(vals[p * kBatch + k], e);
        for (auto& [p, e] : t.poly_logs) v *= ipow(logs[p * kBatch + k], e);
        for (auto& [j, e] : t.var_logs) v *= ipow(std::log(x[j * kBatch + k]), e);
        s += v;
      }
      if (!std::isfinite(s)) {
        std::ostringstream os;
        os.precision(17);
        os << "integrand evaluation gave " << s << " at (";
        for (int v = 0; v < dim; ++v) os << (v ? ", " : "") << x[v * kBatch + k];
        os << ")";
        throw DomainError(os.str());
      }
      sum += s;
      sumsq += static_cast<long double>(s) * s;
    }
  }
  long double n = static_cast<long double>(cfg.samples);
  long double mean = sum / n;
  long double var = (sumsq - n * mean * mean) / (n - 1);
  if (var < 0) var = 0;
  est.mean = static_cast<double>(mean);
  est.err = static_cast<double>(std::sqrt(var / n));
  return est;
}

std::vector<MCEstimate> integrate_many(const std::vector<const FiniteIntegrand*>& f,
                                       const std::vector<std::uint64_t>& ids, const MCConfig& cfg) {
  if (f.size() != ids.size()) throw InternalError("integrand/stream count mismatch");
  std::vector<MCEstimate> out(f.size());
  int workers = std::min<int>(worker_count(cfg), static_cast<int>(f.size()));
  if (workers <= 1) {
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = integrate(*f[k], cfg, ids[k]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(f.size());
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < f.size();) {
      try {
        out[k] = integrate(*f[k], cfg, ids[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

EpsSeries assemble(const std::vector<Contribution>& parts) {
  std::map<int, Rational> exact;
  std::map<int, std::pair<double, double>> mc;
  for (auto& c : parts) {
    if (c.exact) {
      exact[c.order] += c.value;
    } else {
      auto& [m, v] = mc[c.order];
      m += c.estimate.mean;
      v += c.estimate.err * c.estimate.err;
    }
  }
  EpsSeries s;
  for (auto& [o, q] : exact) s[o].value = q.get_d();
  for (auto& [o, mv] : mc) {
    auto& e = s[o];
    e.value += mv.first;
    e.err = std::sqrt(mv.second);
  }
  return s;
}

}  // namespace feynsec
