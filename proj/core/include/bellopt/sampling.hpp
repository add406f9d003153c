#pragma once

// Finite-trial sampling of a (2,2,2) distribution.

#include <array>
#include <cstdint>
#include <random>

#include "bellopt/tensor_core.hpp"

namespace bellopt {

enum class Allocation { fixed_equal, uniform_random };

class SamplingScheme {
 public:
  // Throws std::invalid_argument if N < 4 (fixed_equal) or N < 1.
  SamplingScheme(std::int64_t total_trials, Allocation allocation = Allocation::fixed_equal);

  std::int64_t total_trials() const { return n_; }
  Allocation allocation() const { return allocation_; }
  // fixed_equal: N/4 per block, remainder to the lowest block indices
  // (block index x + 2y), e.g. 245 -> (62, 61, 61, 61).
  std::array<std::int64_t, 4> block_trials() const;

 private:
  std::int64_t n_;
  Allocation allocation_;
};

struct RunCounts {
  std::array<std::int64_t, kDim> n{};

  std::int64_t block_total(int x, int y) const;
  std::int64_t total() const;
};

using Rng = std::mt19937_64;

// Independent stream for one run of an ensemble.
Rng stream_rng(std::uint64_t seed, std::uint64_t run);

// One run. UNIFORM_RANDOM redraws setting allocations that leave a block
// empty; the number of redraws is added to *rejections when given.
RunCounts simulate_run(const OutcomeVector& p, const SamplingScheme& scheme, Rng& rng,
                       std::int64_t* rejections = nullptr);

// N(abxy)/N(xy). Throws std::domain_error on an empty block.
OutcomeVector frequencies(const RunCounts& c);
// 4 N(abxy)/N, the estimator whose covariance is the count-rate one.
OutcomeVector count_rates(const RunCounts& c);

}  // namespace bellopt
