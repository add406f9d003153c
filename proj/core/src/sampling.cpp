#include "bellopt/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace bellopt {

SamplingScheme::SamplingScheme(std::int64_t total_trials, Allocation allocation)
    : n_(total_trials), allocation_(allocation) {
  if (allocation == Allocation::fixed_equal && n_ < 4)
    throw std::invalid_argument("SamplingScheme: fixed allocation needs at least 4 trials");
  if (n_ < 1) throw std::invalid_argument("SamplingScheme: needs at least 1 trial");
}

std::array<std::int64_t, 4> SamplingScheme::block_trials() const {
  std::array<std::int64_t, 4> out{};
  for (int k = 0; k < 4; ++k) out[k] = n_ / 4 + (k < n_ % 4 ? 1 : 0);
  return out;
}

std::int64_t RunCounts::block_total(int x, int y) const {
  std::int64_t s = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) s += n[index_of(a, b, x, y)];
  return s;
}

std::int64_t RunCounts::total() const {
  std::int64_t s = 0;
  for (auto v : n) s += v;
  return s;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Multinomial draw by the conditional binomial chain.
template <std::size_t K>
std::array<std::int64_t, K> multinomial(std::int64_t n, const std::array<double, K>& prob, Rng& rng) {
  std::array<std::int64_t, K> out{};
  double rest = 1.0;
  for (std::size_t k = 0; k + 1 < K && n > 0; ++k) {
    if (prob[k] <= 0.0) continue;
    const double q = rest > 0.0 ? std::min(1.0, prob[k] / rest) : 1.0;
    std::binomial_distribution<std::int64_t> draw(n, q);
    out[k] = draw(rng);
    n -= out[k];
    rest -= prob[k];
  }
  out[K - 1] += n;
  return out;
}

}  // namespace

Rng stream_rng(std::uint64_t seed, std::uint64_t run) {
  return Rng(splitmix64(splitmix64(seed) ^ (run * 0xd1b54a32d192ed03ull + 0x8cb92ba72f3d8dd7ull)));
}

RunCounts simulate_run(const OutcomeVector& p, const SamplingScheme& scheme, Rng& rng,
                       std::int64_t* rejections) {
  std::array<std::int64_t, 4> per_block{};
  if (scheme.allocation() == Allocation::fixed_equal) {
    per_block = scheme.block_trials();
  } else {
    for (;;) {
      per_block = multinomial<4>(scheme.total_trials(), {0.25, 0.25, 0.25, 0.25}, rng);
      if (*std::min_element(per_block.begin(), per_block.end()) > 0) break;
      if (rejections) ++*rejections;
    }
  }
  RunCounts c;
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) {
      std::array<double, 4> prob{};
      for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a) prob[a + 2 * b] = p(a, b, x, y);
      const auto drawn = multinomial<4>(per_block[block_of(x, y)], prob, rng);
      for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a) c.n[index_of(a, b, x, y)] = drawn[a + 2 * b];
    }
  return c;
}

OutcomeVector frequencies(const RunCounts& c) {
  Vec16 v;
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) {
      const std::int64_t total = c.block_total(x, y);
      if (total <= 0) throw std::domain_error("frequencies: empty setting block");
      for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a) {
          const int n = index_of(a, b, x, y);
          v[n] = static_cast<double>(c.n[n]) / static_cast<double>(total);
        }
    }
  return OutcomeVector(v);
}

OutcomeVector count_rates(const RunCounts& c) {
  const std::int64_t total = c.total();
  if (total <= 0) throw std::domain_error("count_rates: no trials");
  Vec16 v;
  for (int n = 0; n < kDim; ++n) v[n] = 4.0 * static_cast<double>(c.n[n]) / static_cast<double>(total);
  return OutcomeVector(v);
}

}  // namespace bellopt
