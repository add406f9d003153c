#pragma once

// Covariance of finite-sample Bell estimators and the minimal-variance
// variant of an inequality.

#include <cstdint>

#include "bellopt/inequality_catalog.hpp"
#include "bellopt/sampling.hpp"
#include "bellopt/tensor_core.hpp"

namespace bellopt {

// frequency:  p_hat = N(abxy)/N(xy)   (per-block relative frequencies)
// count_rate: p_hat = 4 N(abxy)/N
enum class Estimator { frequency, count_rate };

class CovarianceMatrix {
 public:
  CovarianceMatrix() : s_(Mat16::Zero()) {}
  // Throws std::invalid_argument unless symmetric to 1e-12 and PSD
  // (smallest eigenvalue >= -1e-10).
  explicit CovarianceMatrix(const Mat16& sigma);

  const Mat16& matrix() const { return s_; }

 private:
  Mat16 s_;
};

// Multinomial covariance. The frequency estimator needs fixed_equal; a block
// without trials is an error.
CovarianceMatrix analytic_covariance(const OutcomeVector& p, const SamplingScheme& scheme,
                                     Estimator estimator = Estimator::frequency);

struct McOptions {
  int threads = 1;
  Estimator estimator = Estimator::frequency;
};

// Sample covariance of per-run estimates over `runs` >= 2 simulated runs.
CovarianceMatrix mc_covariance(const OutcomeVector& p, const SamplingScheme& scheme, std::int64_t runs,
                               std::uint64_t seed, const McOptions& options = {});

// sqrt(beta' Sigma beta)
double std_dev(const OutcomeVector& beta, const CovarianceMatrix& sigma);
double std_dev(const BellInequality& beta, const CovarianceMatrix& sigma);

// Singular values below rel_cutoff * largest are dropped.
Mat16 pseudo_inverse(const Mat16& m, double rel_cutoff = 1e-10);

// beta* = (Pbar - Pi (Pi S Pi + Pbar)^+ Pi S Pbar) beta with Pi the SI projector.
BellInequality optimal_variant(const BellInequality& beta, const CovarianceMatrix& sigma);

// (value - bound)/sd; throws std::domain_error unless sd > 0.
double sigma_ratio(double value, double bound, double sd);

}  // namespace bellopt
