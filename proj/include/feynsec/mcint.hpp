#pragma once

#include <feynsec/finite.hpp>
#include <feynsec/rational.hpp>

#include <cstdint>
#include <map>
#include <vector>

namespace feynsec {

struct MCConfig {
  long samples = 1000000;  // per stream
  std::uint64_t seed = 1;
  int threads = 0;  // 0: FEYNSEC_THREADS, else hardware concurrency
};

struct MCEstimate {
  double mean = 0.0;
  double err = 0.0;
  long n = 0;
};

struct SeriesCoefficient {
  double value = 0.0;
  double err = 0.0;
};

using EpsSeries = std::map<int, SeriesCoefficient>;

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream_id);
int worker_count(const MCConfig& cfg);

// Plain Monte Carlo over the open unit cube. The exact part of f is ignored.
MCEstimate integrate(const FiniteIntegrand& f, const MCConfig& cfg, std::uint64_t stream_id);

// Integrates f[k] on stream ids[k]; the work is spread over worker_count(cfg)
// threads, results do not depend on the split.
std::vector<MCEstimate> integrate_many(const std::vector<const FiniteIntegrand*>& f,
                                       const std::vector<std::uint64_t>& ids, const MCConfig& cfg);

struct Contribution {
  int order = 0;
  bool exact = true;
  Rational value = 0;
  MCEstimate estimate;
};

// Sums per order, errors in quadrature. Exact pieces are added as rationals first.
EpsSeries assemble(const std::vector<Contribution>& parts);

}  // namespace feynsec
