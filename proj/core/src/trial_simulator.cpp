#include "bellopt/trial_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"

namespace bellopt {

std::pair<double, double> mean_and_std(std::span<const double> values) {
  if (values.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return {mean, 0.0};
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / static_cast<double>(values.size() - 1))};
}

EnsembleReport run_ensemble(const OutcomeVector& p, std::span<const BellInequality> betas,
                            const SamplingScheme& scheme, std::int64_t runs, std::uint64_t seed, int threads) {
  if (runs < 1) throw std::invalid_argument("run_ensemble: needs at least 1 run");
  validate_distribution(p);

  const std::size_t k = betas.size();
  std::vector<double> values(static_cast<std::size_t>(runs) * k);
  std::vector<std::int64_t> rejected(static_cast<std::size_t>(runs), 0);

  constexpr std::int64_t kChunk = 1024;
  const std::int64_t chunks = (runs + kChunk - 1) / kChunk;
  detail::for_each_chunk(chunks, threads, [&](std::int64_t c) {
    const std::int64_t end = std::min(runs, (c + 1) * kChunk);
    for (std::int64_t r = c * kChunk; r < end; ++r) {
      Rng rng = stream_rng(seed, static_cast<std::uint64_t>(r));
      const OutcomeVector f = frequencies(simulate_run(p, scheme, rng, &rejected[r]));
      for (std::size_t j = 0; j < k; ++j) values[r * k + j] = bell_value(betas[j], f);
    }
  });

  EnsembleReport report;
  report.runs = runs;
  report.seed = seed;
  report.scheme = scheme;
  for (auto n : rejected) report.rejections += n;
  for (std::size_t j = 0; j < k; ++j) {
    InequalityStats s;
    s.name = betas[j].name;
    s.local_bound = betas[j].local_bound;
    s.values.resize(static_cast<std::size_t>(runs));
    for (std::int64_t r = 0; r < runs; ++r) s.values[r] = values[r * k + j];
    std::tie(s.mean, s.std_dev) = mean_and_std(s.values);
    report.inequalities.push_back(std::move(s));
  }
  return report;
}

Histogram make_histogram(const EnsembleReport& report, int bins) {
  if (bins < 1) throw std::invalid_argument("histogram: needs at least one bin");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : report.inequalities)
    for (double v : s.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (!std::isfinite(lo)) lo = hi = 0.0;
  if (hi <= lo) hi = lo + 1.0;

  Histogram h;
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) h.edges.push_back(i == bins ? hi : lo + i * width);
  for (const auto& s : report.inequalities) {
    std::vector<std::int64_t> counts(bins, 0);
    for (double v : s.values) {
      int i = static_cast<int>((v - lo) / width);
      counts[std::clamp(i, 0, bins - 1)]++;
    }
    h.counts.push_back(std::move(counts));
  }
  return h;
}

std::string histogram_csv(const EnsembleReport& report, const Histogram& h) {
  std::ostringstream out;
  out.precision(17);
  out << "bin_left,bin_right";
  for (const auto& s : report.inequalities) out << ',' << s.name;
  out << '\n';
  for (std::size_t i = 0; i + 1 < h.edges.size(); ++i) {
    out << h.edges[i] << ',' << h.edges[i + 1];
    for (const auto& c : h.counts) out << ',' << c[i];
    out << '\n';
  }
  return out.str();
}

std::string raw_values_csv(const EnsembleReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "run";
  for (const auto& s : report.inequalities) out << ',' << s.name;
  out << '\n';
  for (std::int64_t r = 0; r < report.runs; ++r) {
    out << r;
    for (const auto& s : report.inequalities) out << ',' << s.values[r];
    out << '\n';
  }
  return out.str();
}

}  // namespace bellopt
