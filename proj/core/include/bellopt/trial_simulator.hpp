#pragma once

// Ensembles of simulated runs and their violation statistics.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bellopt/inequality_catalog.hpp"
#include "bellopt/sampling.hpp"

namespace bellopt {

struct InequalityStats {
  std::string name;
  double local_bound = 0.0;
  std::vector<double> values;  // I^run, in run order
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation (n - 1)
};

struct EnsembleReport {
  std::vector<InequalityStats> inequalities;
  std::int64_t runs = 0;
  std::uint64_t seed = 0;
  SamplingScheme scheme{4};
  std::int64_t rejections = 0;  // redrawn setting allocations (uniform_random)
};

// Every inequality is evaluated on the same frequencies of each run. Run r
// draws from stream_rng(seed, r), so the report does not depend on `threads`.
EnsembleReport run_ensemble(const OutcomeVector& p, std::span<const BellInequality> betas,
                            const SamplingScheme& scheme, std::int64_t runs, std::uint64_t seed,
                            int threads = 1);

// Mean and sample standard deviation, summed in order.
std::pair<double, double> mean_and_std(std::span<const double> values);

struct Histogram {
  std::vector<double> edges;                      // bins + 1 shared edges
  std::vector<std::vector<std::int64_t>> counts;  // [inequality][bin]
};

// Common equal-width bins spanning all values; throws unless bins >= 1.
Histogram make_histogram(const EnsembleReport& report, int bins);

// Columns: bin_left, bin_right, then one count column per inequality.
std::string histogram_csv(const EnsembleReport& report, const Histogram& h);
// Columns: run, then one value column per inequality.
std::string raw_values_csv(const EnsembleReport& report);

}  // namespace bellopt
