#pragma once

// 16-dimensional coefficient space of the (2,2,2) Bell scenario.
//
// Entries are indexed by (a,b,x,y) with index = a + 2b + 4x + 8y: outcome of
// party A varies fastest, then outcome of B, then the settings.

#include <array>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace bellopt {

using Vec16 = Eigen::Matrix<double, 16, 1>;
using Mat16 = Eigen::Matrix<double, 16, 16>;

inline constexpr int kDim = 16;

constexpr int index_of(int a, int b, int x, int y) { return a + 2 * b + 4 * x + 8 * y; }

struct Labels {
  int a, b, x, y;
};

constexpr Labels labels_of(int index) {
  return {index & 1, (index >> 1) & 1, (index >> 2) & 1, (index >> 3) & 1};
}

// Index of setting block (x,y).
constexpr int block_of(int x, int y) { return x + 2 * y; }

class OutcomeVector {
 public:
  OutcomeVector() : c_(Vec16::Zero()) {}
  // Throws std::invalid_argument on non-finite entries.
  explicit OutcomeVector(const Vec16& coeffs);
  static OutcomeVector from_array(const std::array<double, kDim>& coeffs);
  static OutcomeVector constant(double value);

  double operator[](int index) const { return c_[index]; }
  double operator()(int a, int b, int x, int y) const { return c_[index_of(a, b, x, y)]; }
  const Vec16& coeffs() const { return c_; }
  std::array<double, kDim> to_array() const;

  double dot(const OutcomeVector& other) const { return c_.dot(other.c_); }
  double norm() const { return c_.norm(); }

  friend OutcomeVector operator+(const OutcomeVector& u, const OutcomeVector& v) {
    return OutcomeVector(u.c_ + v.c_);
  }
  friend OutcomeVector operator-(const OutcomeVector& u, const OutcomeVector& v) {
    return OutcomeVector(u.c_ - v.c_);
  }
  friend OutcomeVector operator*(double s, const OutcomeVector& v) { return OutcomeVector(s * v.c_); }
  friend OutcomeVector operator*(const OutcomeVector& v, double s) { return OutcomeVector(s * v.c_); }

 private:
  Vec16 c_;
};

// ---------------------------------------------------------------------------
// Q basis: Q_{ijkl}(ab|xy) = i^a j^b k^x l^y

struct Signs {
  int i = 1, j = 1, k = 1, l = 1;
  friend bool operator==(const Signs&, const Signs&) = default;
};

// Canonical numbering of sign tuples: bit n set <=> n-th sign is -1.
int sign_index(const Signs& s);
Signs signs_of(int sign_index);
std::string sign_string(const Signs& s);  // e.g. "+--+"

// Throws std::invalid_argument if an argument is not +1 or -1.
OutcomeVector q_basis(int i, int j, int k, int l);
OutcomeVector q_basis(const Signs& s);

// Columns are the 16 Q vectors in sign_index order. Q^T Q = 16 I.
const Mat16& q_matrix();

// alpha[sign_index] with v = sum alpha_s Q_s.
std::array<double, kDim> alpha_coefficients(const OutcomeVector& v);
OutcomeVector from_alpha(const std::array<double, kDim>& alpha);

// ---------------------------------------------------------------------------
// Invariant subspaces

enum class Subspace { NO1, NO2, NO3, MARG_A, MARG_B, CORR, SI_TO_A, SI_TO_B };
enum class Coarse { NO, NS, SI };

inline constexpr std::array<Subspace, 8> kAllSubspaces = {
    Subspace::NO1,    Subspace::NO2,  Subspace::NO3,     Subspace::MARG_A,
    Subspace::MARG_B, Subspace::CORR, Subspace::SI_TO_A, Subspace::SI_TO_B};

std::string_view name_of(Subspace s);
std::string_view name_of(Coarse c);
Coarse coarse_of(Subspace s);

std::span<const Signs> members(Subspace s);
int dimension(Subspace s);
int dimension(Coarse c);

// Orthogonal projectors (1/16) sum_{s in label} Q_s Q_s^T, built once.
const Mat16& projector(Subspace s);
const Mat16& projector(Coarse c);
// Projector onto the span of an arbitrary set of Q vectors.
Mat16 projector(std::span<const Signs> basis);

OutcomeVector project(const OutcomeVector& v, Subspace s);
OutcomeVector project(const OutcomeVector& v, Coarse c);

class DecomposedVector {
 public:
  explicit DecomposedVector(const std::array<OutcomeVector, 8>& parts) : parts_(parts) {}

  const OutcomeVector& component(Subspace s) const { return parts_[static_cast<int>(s)]; }
  OutcomeVector coarse(Coarse c) const;
  OutcomeVector recompose() const;

 private:
  std::array<OutcomeVector, 8> parts_;
};

DecomposedVector decompose(const OutcomeVector& v);

// I = beta . p
double bell_value(const OutcomeVector& beta, const OutcomeVector& p);

// ---------------------------------------------------------------------------
// Distribution predicates. Distributions are OutcomeVectors that pass these.

bool is_nonnegative(const OutcomeVector& v, double tol = 0.0);
bool is_normalized(const OutcomeVector& v, double tol = 1e-12);
bool is_nonsignaling(const OutcomeVector& v, double tol);
bool is_distribution(const OutcomeVector& v, double tol = 1e-12);

// Throws std::invalid_argument describing the first violated constraint.
void validate_distribution(const OutcomeVector& v, double tol = 1e-12);

double block_sum(const OutcomeVector& v, int x, int y);

// E_xy = sum_ab (-1)^(a+b) p_ab|xy
double correlator(const OutcomeVector& v, int x, int y);
// Vector E_xy with CORR(v) = sum_xy correlator(v,x,y) * correlator_direction(x,y).
OutcomeVector correlator_direction(int x, int y);

}  // namespace bellopt
