#include "bellopt/inequality_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bellopt/setups.hpp"

namespace bellopt {

double bell_value(const BellInequality& beta, const OutcomeVector& p) { return bell_value(beta.coeffs, p); }

namespace {

using Display = std::array<std::array<double, 4>, 4>;

// rows (a,x) -> a + 2x, columns (b,y) -> b + 2y
constexpr Display kCHSH = {{{0.5, -1.5, 0.5, -1.5},
                            {-1.5, 0.5, -1.5, 0.5},
                            {0.5, -1.5, -1.5, 0.5},
                            {-1.5, 0.5, 0.5, -1.5}}};

constexpr Display kCH = {{{-4, -4, 4, 0},
                          {-4, 0, 0, 0},
                          {4, 0, -4, 0},
                          {0, 0, 0, 0}}};

// CH for outcome 1 with marginals taken at the other party's setting 1:
// 4 (p11|00 - p10|01 - p01|10 - p11|11).
constexpr Display kEH = {{{0, 0, 0, 0},
                          {0, 4, -4, 0},
                          {0, -4, 0, 0},
                          {0, 0, 0, -4}}};

constexpr Display kOPT = {{{0, -1.5, 0, -0.5},
                           {-1.5, 1, -2.5, 1},
                           {0, -2.5, 0, 0.5},
                           {-0.5, 1, 0.5, -3}}};

}  // namespace

BellInequality catalog(std::string_view name) {
  if (name == "CHSH") return {setups::from_display(kCHSH), 0.0, "CHSH"};
  if (name == "CH") return {setups::from_display(kCH), 0.0, "CH"};
  if (name == "EH") return {setups::from_display(kEH), 0.0, "EH"};
  if (name == "OPT_REF") return {setups::from_display(kOPT), 0.0, "OPT_REF"};
  throw std::invalid_argument("catalog: unknown inequality '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() { return {"CHSH", "CH", "EH", "OPT_REF"}; }

BellInequality chsh_standard() {
  Vec16 v;
  for (int n = 0; n < kDim; ++n) {
    const Labels t = labels_of(n);
    const double corr = (t.a + t.b) % 2 ? -1.0 : 1.0;
    v[n] = (t.x == 1 && t.y == 1 ? -1.0 : 1.0) * corr;
  }
  return {OutcomeVector(v), 2.0, "CHSH_standard"};
}

BellInequality shift(const BellInequality& b, double c) {
  return {b.coeffs + OutcomeVector::constant(c), b.local_bound + 4.0 * c, b.name};
}

BellInequality rescale(const BellInequality& b, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("rescale: factor must be positive");
  return {s * b.coeffs, s * b.local_bound, b.name};
}

bool ns_equivalent(const BellInequality& b1, const BellInequality& b2, double tol) {
  if (std::abs(b1.local_bound - b2.local_bound) > tol) return false;
  const OutcomeVector diff = b1.coeffs - b2.coeffs;
  for (Subspace s : {Subspace::NO1, Subspace::MARG_A, Subspace::MARG_B, Subspace::CORR})
    if (project(diff, s).coeffs().cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

double deterministic_maximum(const BellInequality& b) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : setups::deterministic_vertices()) best = std::max(best, bell_value(b, v));
  return best;
}

BellInequality drop_normalization_freedom(const BellInequality& b) {
  const OutcomeVector extra = project(b.coeffs, Subspace::NO2) + project(b.coeffs, Subspace::NO3);
  return {b.coeffs - extra, b.local_bound, b.name};
}

}  // namespace bellopt
