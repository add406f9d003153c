#include "bellopt/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bellopt {

OutcomeVector::OutcomeVector(const Vec16& coeffs) : c_(coeffs) {
  if (!c_.allFinite()) throw std::invalid_argument("OutcomeVector: non-finite coefficient");
}

OutcomeVector OutcomeVector::from_array(const std::array<double, kDim>& coeffs) {
  return OutcomeVector(Eigen::Map<const Vec16>(coeffs.data()));
}

OutcomeVector OutcomeVector::constant(double value) { return OutcomeVector(Vec16::Constant(value)); }

std::array<double, kDim> OutcomeVector::to_array() const {
  std::array<double, kDim> out{};
  for (int n = 0; n < kDim; ++n) out[n] = c_[n];
  return out;
}

int sign_index(const Signs& s) {
  return (s.i < 0 ? 1 : 0) | (s.j < 0 ? 2 : 0) | (s.k < 0 ? 4 : 0) | (s.l < 0 ? 8 : 0);
}

Signs signs_of(int n) {
  return {(n & 1) ? -1 : 1, (n & 2) ? -1 : 1, (n & 4) ? -1 : 1, (n & 8) ? -1 : 1};
}

std::string sign_string(const Signs& s) {
  std::string out;
  for (int v : {s.i, s.j, s.k, s.l}) out += v > 0 ? '+' : '-';
  return out;
}

namespace {

bool valid_sign(int v) { return v == 1 || v == -1; }

double sign_pow(int base, int exponent) { return (base < 0 && exponent == 1) ? -1.0 : 1.0; }

constexpr Signs S(int i, int j, int k, int l) { return {i, j, k, l}; }

constexpr std::array<Signs, 1> kNO1 = {S(1, 1, 1, 1)};
constexpr std::array<Signs, 2> kNO2 = {S(1, 1, 1, -1), S(1, 1, -1, 1)};
constexpr std::array<Signs, 1> kNO3 = {S(1, 1, -1, -1)};
constexpr std::array<Signs, 2> kMARG_A = {S(-1, 1, 1, 1), S(-1, 1, -1, 1)};
constexpr std::array<Signs, 2> kMARG_B = {S(1, -1, 1, 1), S(1, -1, 1, -1)};
constexpr std::array<Signs, 4> kCORR = {S(-1, -1, 1, 1), S(-1, -1, 1, -1), S(-1, -1, -1, 1),
                                        S(-1, -1, -1, -1)};
constexpr std::array<Signs, 2> kSI_TO_A = {S(-1, 1, 1, -1), S(-1, 1, -1, -1)};
constexpr std::array<Signs, 2> kSI_TO_B = {S(1, -1, -1, 1), S(1, -1, -1, -1)};

Mat16 build_projector(std::span<const Signs> basis) {
  const Mat16& q = q_matrix();
  Mat16 p = Mat16::Zero();
  for (const Signs& s : basis) {
    const auto col = q.col(sign_index(s));
    p += col * col.transpose();
  }
  return p / 16.0;
}

}  // namespace

OutcomeVector q_basis(int i, int j, int k, int l) {
  if (!valid_sign(i) || !valid_sign(j) || !valid_sign(k) || !valid_sign(l))
    throw std::invalid_argument("q_basis: signs must be +1 or -1");
  Vec16 v;
  for (int n = 0; n < kDim; ++n) {
    const Labels t = labels_of(n);
    v[n] = sign_pow(i, t.a) * sign_pow(j, t.b) * sign_pow(k, t.x) * sign_pow(l, t.y);
  }
  return OutcomeVector(v);
}

OutcomeVector q_basis(const Signs& s) { return q_basis(s.i, s.j, s.k, s.l); }

const Mat16& q_matrix() {
  static const Mat16 q = [] {
    Mat16 m;
    for (int s = 0; s < kDim; ++s) m.col(s) = q_basis(signs_of(s)).coeffs();
    return m;
  }();
  return q;
}

std::array<double, kDim> alpha_coefficients(const OutcomeVector& v) {
  const Vec16 alpha = q_matrix().transpose() * v.coeffs() / 16.0;
  std::array<double, kDim> out{};
  for (int s = 0; s < kDim; ++s) out[s] = alpha[s];
  return out;
}

OutcomeVector from_alpha(const std::array<double, kDim>& alpha) {
  return OutcomeVector(q_matrix() * Eigen::Map<const Vec16>(alpha.data()));
}

std::string_view name_of(Subspace s) {
  switch (s) {
    case Subspace::NO1: return "NO1";
    case Subspace::NO2: return "NO2";
    case Subspace::NO3: return "NO3";
    case Subspace::MARG_A: return "MARG_A";
    case Subspace::MARG_B: return "MARG_B";
    case Subspace::CORR: return "CORR";
    case Subspace::SI_TO_A: return "SI_TO_A";
    case Subspace::SI_TO_B: return "SI_TO_B";
  }
  return "?";
}

std::string_view name_of(Coarse c) {
  switch (c) {
    case Coarse::NO: return "NO";
    case Coarse::NS: return "NS";
    case Coarse::SI: return "SI";
  }
  return "?";
}

Coarse coarse_of(Subspace s) {
  switch (s) {
    case Subspace::NO1:
    case Subspace::NO2:
    case Subspace::NO3: return Coarse::NO;
    case Subspace::MARG_A:
    case Subspace::MARG_B:
    case Subspace::CORR: return Coarse::NS;
    case Subspace::SI_TO_A:
    case Subspace::SI_TO_B: return Coarse::SI;
  }
  return Coarse::NO;
}

std::span<const Signs> members(Subspace s) {
  switch (s) {
    case Subspace::NO1: return kNO1;
    case Subspace::NO2: return kNO2;
    case Subspace::NO3: return kNO3;
    case Subspace::MARG_A: return kMARG_A;
    case Subspace::MARG_B: return kMARG_B;
    case Subspace::CORR: return kCORR;
    case Subspace::SI_TO_A: return kSI_TO_A;
    case Subspace::SI_TO_B: return kSI_TO_B;
  }
  return {};
}

int dimension(Subspace s) { return static_cast<int>(members(s).size()); }

int dimension(Coarse c) {
  int d = 0;
  for (Subspace s : kAllSubspaces)
    if (coarse_of(s) == c) d += dimension(s);
  return d;
}

const Mat16& projector(Subspace s) {
  static const std::array<Mat16, 8> cache = [] {
    std::array<Mat16, 8> out;
    for (Subspace t : kAllSubspaces) out[static_cast<int>(t)] = build_projector(members(t));
    return out;
  }();
  return cache[static_cast<int>(s)];
}

const Mat16& projector(Coarse c) {
  static const std::array<Mat16, 3> cache = [] {
    std::array<Mat16, 3> out;
    for (auto& m : out) m.setZero();
    for (Subspace t : kAllSubspaces) out[static_cast<int>(coarse_of(t))] += projector(t);
    return out;
  }();
  return cache[static_cast<int>(c)];
}

Mat16 projector(std::span<const Signs> basis) { return build_projector(basis); }

OutcomeVector project(const OutcomeVector& v, Subspace s) {
  return OutcomeVector(projector(s) * v.coeffs());
}

OutcomeVector project(const OutcomeVector& v, Coarse c) {
  return OutcomeVector(projector(c) * v.coeffs());
}

OutcomeVector DecomposedVector::coarse(Coarse c) const {
  Vec16 sum = Vec16::Zero();
  for (Subspace s : kAllSubspaces)
    if (coarse_of(s) == c) sum += component(s).coeffs();
  return OutcomeVector(sum);
}

OutcomeVector DecomposedVector::recompose() const {
  Vec16 sum = Vec16::Zero();
  for (const auto& part : parts_) sum += part.coeffs();
  return OutcomeVector(sum);
}

DecomposedVector decompose(const OutcomeVector& v) {
  std::array<OutcomeVector, 8> parts;
  for (Subspace s : kAllSubspaces) parts[static_cast<int>(s)] = project(v, s);
  return DecomposedVector(parts);
}

double bell_value(const OutcomeVector& beta, const OutcomeVector& p) { return beta.dot(p); }

double block_sum(const OutcomeVector& v, int x, int y) {
  double s = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) s += v(a, b, x, y);
  return s;
}

bool is_nonnegative(const OutcomeVector& v, double tol) { return v.coeffs().minCoeff() >= -tol; }

bool is_normalized(const OutcomeVector& v, double tol) {
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      if (std::abs(block_sum(v, x, y) - 1.0) > tol) return false;
  return true;
}

namespace {

// Largest violation of the marginal constraints: A's marginal must not depend
// on y, B's must not depend on x.
double signaling_gap(const OutcomeVector& v) {
  double gap = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int x = 0; x < 2; ++x) {
      const double m0 = v(a, 0, x, 0) + v(a, 1, x, 0);
      const double m1 = v(a, 0, x, 1) + v(a, 1, x, 1);
      gap = std::max(gap, std::abs(m0 - m1));
    }
  for (int b = 0; b < 2; ++b)
    for (int y = 0; y < 2; ++y) {
      const double m0 = v(0, b, 0, y) + v(1, b, 0, y);
      const double m1 = v(0, b, 1, y) + v(1, b, 1, y);
      gap = std::max(gap, std::abs(m0 - m1));
    }
  return gap;
}

}  // namespace

bool is_nonsignaling(const OutcomeVector& v, double tol) { return signaling_gap(v) <= tol; }

bool is_distribution(const OutcomeVector& v, double tol) {
  return is_nonnegative(v, 0.0) && is_normalized(v, tol);
}

void validate_distribution(const OutcomeVector& v, double tol) {
  for (int n = 0; n < kDim; ++n)
    if (v[n] < 0.0)
      throw std::invalid_argument("distribution: negative entry at index " + std::to_string(n));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      if (std::abs(block_sum(v, x, y) - 1.0) > tol)
        throw std::invalid_argument("distribution: block (x=" + std::to_string(x) +
                                    ", y=" + std::to_string(y) + ") does not sum to 1");
}

double correlator(const OutcomeVector& v, int x, int y) {
  double e = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) e += ((a + b) % 2 ? -1.0 : 1.0) * v(a, b, x, y);
  return e;
}

OutcomeVector correlator_direction(int x, int y) {
  Vec16 e = Vec16::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) e[index_of(a, b, x, y)] = ((a + b) % 2 ? -0.25 : 0.25);
  return OutcomeVector(e);
}

}  // namespace bellopt
