#include "bellopt/variance_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "parallel.hpp"

namespace bellopt {

CovarianceMatrix::CovarianceMatrix(const Mat16& sigma) : s_(sigma) {
  if (!s_.allFinite()) throw std::invalid_argument("covariance: non-finite entry");
  if ((s_ - s_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("covariance: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat16> solver(s_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("covariance: matrix is not positive semidefinite");
}

namespace {

Mat16 block_multinomial(const OutcomeVector& p, int x, int y, double scale) {
  Mat16 s = Mat16::Zero();
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a) {
      const int i = index_of(a, b, x, y);
      for (int b2 = 0; b2 < 2; ++b2)
        for (int a2 = 0; a2 < 2; ++a2) {
          const int j = index_of(a2, b2, x, y);
          s(i, j) = scale * ((i == j ? p[i] : 0.0) - p[i] * p[j]);
        }
    }
  return s;
}

}  // namespace

CovarianceMatrix analytic_covariance(const OutcomeVector& p, const SamplingScheme& scheme, Estimator estimator) {
  const double n_total = static_cast<double>(scheme.total_trials());
  if (estimator == Estimator::count_rate && scheme.allocation() == Allocation::uniform_random) {
    // Counts are one multinomial over 16 cells with q = p/4; p_hat = 4 N/N_total.
    const Vec16 q = p.coeffs() / 4.0;
    Mat16 s = Mat16(q.asDiagonal()) - q * q.transpose();
    return CovarianceMatrix(16.0 / n_total * s);
  }
  if (scheme.allocation() != Allocation::fixed_equal)
    throw std::invalid_argument("analytic_covariance: frequency estimator needs fixed allocation");

  const auto per_block = scheme.block_trials();
  Mat16 s = Mat16::Zero();
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) {
      const double n = static_cast<double>(per_block[block_of(x, y)]);
      if (n <= 0) throw std::invalid_argument("analytic_covariance: setting block without trials");
      const double quarter = n_total / 4.0;
      const double scale = estimator == Estimator::frequency ? 1.0 / n : n / (quarter * quarter);
      s += block_multinomial(p, x, y, scale);
    }
  return CovarianceMatrix(s);
}

CovarianceMatrix mc_covariance(const OutcomeVector& p, const SamplingScheme& scheme, std::int64_t runs,
                               std::uint64_t seed, const McOptions& options) {
  if (runs < 2) throw std::invalid_argument("mc_covariance: needs at least 2 runs");

  auto estimate = [&](std::int64_t run) {
    Rng rng = stream_rng(seed, static_cast<std::uint64_t>(run));
    const RunCounts c = simulate_run(p, scheme, rng);
    return (options.estimator == Estimator::frequency ? frequencies(c) : count_rates(c)).coeffs();
  };

  // Deviations are taken from the first run's estimate: exact zeros for
  // degenerate samples, and little cancellation when entries are tiny.
  const Vec16 shift = estimate(0);
  constexpr std::int64_t kChunk = 2048;
  const std::int64_t chunks = (runs + kChunk - 1) / kChunk;
  std::vector<Vec16> sums(chunks, Vec16::Zero());
  std::vector<Mat16> squares(chunks, Mat16::Zero());

  detail::for_each_chunk(chunks, options.threads, [&](std::int64_t c) {
    const std::int64_t end = std::min(runs, (c + 1) * kChunk);
    for (std::int64_t r = c * kChunk; r < end; ++r) {
      const Vec16 d = estimate(r) - shift;
      sums[c] += d;
      squares[c].noalias() += d * d.transpose();
    }
  });

  Vec16 s1 = Vec16::Zero();
  Mat16 s2 = Mat16::Zero();
  for (std::int64_t c = 0; c < chunks; ++c) {
    s1 += sums[c];
    s2 += squares[c];
  }
  const double n = static_cast<double>(runs);
  Mat16 cov = (s2 - s1 * s1.transpose() / n) / (n - 1.0);
  cov = 0.5 * (cov + cov.transpose()).eval();
  return CovarianceMatrix(cov);
}

double std_dev(const OutcomeVector& beta, const CovarianceMatrix& sigma) {
  const double q = beta.coeffs().dot(sigma.matrix() * beta.coeffs());
  if (q < -1e-12) throw std::domain_error("std_dev: negative variance");
  return std::sqrt(std::max(0.0, q));
}

double std_dev(const BellInequality& beta, const CovarianceMatrix& sigma) { return std_dev(beta.coeffs, sigma); }

Mat16 pseudo_inverse(const Mat16& m, double rel_cutoff) {
  Eigen::JacobiSVD<Mat16> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_cutoff * (sv.size() ? sv[0] : 0.0);
  Vec16 inv = Vec16::Zero();
  for (int k = 0; k < sv.size(); ++k)
    if (sv[k] > cutoff) inv[k] = 1.0 / sv[k];
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

BellInequality optimal_variant(const BellInequality& beta, const CovarianceMatrix& sigma) {
  const Mat16& pi = projector(Coarse::SI);
  const Mat16 pbar = Mat16::Identity() - pi;
  // beta* does not depend on the overall scale of Sigma; normalizing keeps the
  // relative pseudo-inverse cutoff meaningful next to the identity on Pbar.
  const double scale = sigma.matrix().cwiseAbs().maxCoeff();
  const Mat16 s = scale > 0.0 ? Mat16(sigma.matrix() / scale) : Mat16::Zero();
  const Mat16 m = pi * s * pi + pbar;
  const Mat16 op = pbar - pi * pseudo_inverse(m) * pi * s * pbar;
  return {OutcomeVector(op * beta.coeffs.coeffs()), beta.local_bound, beta.name};
}

double sigma_ratio(double value, double bound, double sd) {
  if (!(sd > 0.0)) throw std::domain_error("sigma_ratio: standard deviation must be positive");
  return (value - bound) / sd;
}

}  // namespace bellopt
