#include "bellopt/setups.hpp"

#include <cmath>

namespace bellopt::setups {

namespace {

template <typename F>
OutcomeVector tabulate(F f) {
  Vec16 v;
  for (int n = 0; n < kDim; ++n) {
    const Labels t = labels_of(n);
    v[n] = f(t.a, t.b, t.x, t.y);
  }
  return OutcomeVector(v);
}

}  // namespace

OutcomeVector uniform() { return OutcomeVector::constant(0.25); }

OutcomeVector perfectly_correlated() {
  return tabulate([](int a, int b, int, int) { return a == b ? 0.5 : 0.0; });
}

OutcomeVector biased_coins() {
  return tabulate([](int, int b, int, int) { return 0.5 * (b == 0 ? 0.25 : 0.75); });
}

OutcomeVector signaling() {
  return tabulate([](int, int b, int x, int) { return b == x ? 0.5 : 0.0; });
}

OutcomeVector pr_box() {
  return tabulate([](int a, int b, int x, int y) { return (a ^ b) == (x & y) ? 0.5 : 0.0; });
}

OutcomeVector optimal_quantum() {
  const double c = 1.0 / (4.0 * std::sqrt(2.0));
  return tabulate([c](int a, int b, int x, int y) {
    const double tau = (x == 1 && y == 1) ? -1.0 : 1.0;
    return 0.25 + ((a + b) % 2 ? -1.0 : 1.0) * tau * c;
  });
}

OutcomeVector deterministic(std::array<int, 2> fa, std::array<int, 2> fb) {
  return tabulate([&](int a, int b, int x, int y) { return (a == fa[x] && b == fb[y]) ? 1.0 : 0.0; });
}

std::array<OutcomeVector, 16> deterministic_vertices() {
  std::array<OutcomeVector, 16> out;
  for (int m = 0; m < 16; ++m)
    out[m] = deterministic({m & 1, (m >> 1) & 1}, {(m >> 2) & 1, (m >> 3) & 1});
  return out;
}

OutcomeVector correlator_point(double ta0, double ta1, double tb0, double tb1) {
  const std::array<double, 2> ta{ta0, ta1}, tb{tb0, tb1};
  return tabulate([&](int a, int b, int x, int y) {
    const double e = std::cos(ta[x] - tb[y]);
    return 0.25 * (1.0 + ((a + b) % 2 ? -1.0 : 1.0) * e);
  });
}

OutcomeVector from_display(const std::array<std::array<double, 4>, 4>& rows) {
  return tabulate([&](int a, int b, int x, int y) { return rows[a + 2 * x][b + 2 * y]; });
}

std::array<std::array<double, 4>, 4> to_display(const OutcomeVector& v) {
  std::array<std::array<double, 4>, 4> rows{};
  for (int n = 0; n < kDim; ++n) {
    const Labels t = labels_of(n);
    rows[t.a + 2 * t.x][t.b + 2 * t.y] = v[n];
  }
  return rows;
}

}  // namespace bellopt::setups
