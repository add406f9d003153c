#include "bellopt/quantum_models.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace bellopt {

using cd = std::complex<double>;

TwoQubitState::TwoQubitState(const Eigen::Matrix4cd& rho) : rho_(rho) {
  if (!rho_.allFinite()) throw std::invalid_argument("state: non-finite entry");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument("state: not Hermitian");
  if (std::abs(rho_.trace() - cd(1.0)) > 1e-12) throw std::invalid_argument("state: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) throw std::invalid_argument("state: not positive semidefinite");
}

TwoQubitState nv_state(double lambda, double visibility) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(0, 0) = rho(3, 3) = lambda / 2.0;
  rho(1, 1) = rho(2, 2) = (1.0 - lambda) / 2.0;
  rho(1, 2) = rho(2, 1) = -visibility / 2.0;
  return TwoQubitState(rho);
}

void ReadoutModel::validate() const {
  auto ok = [](double e) { return e >= 0.0 && e <= 1.0; };
  if (!ok(eta_plus) || !ok(eta_minus)) throw std::invalid_argument("readout: fidelities must lie in [0,1]");
}

std::array<Eigen::Matrix2cd, 2> ReadoutModel::effects() const {
  Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero();
  p0(0, 0) = eta_plus;
  p0(1, 1) = 1.0 - eta_minus;
  return {p0, Eigen::Matrix2cd::Identity() - p0};
}

Eigen::Matrix2cd spin_rotation(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  Eigen::Matrix2cd r;
  r << c, -s, s, c;
  return r;
}

OutcomeVector nv_distribution(const TwoQubitState& rho, const ReadoutModel& readout_a,
                              const ReadoutModel& readout_b, const MeasurementAngles& angles) {
  readout_a.validate();
  readout_b.validate();
  const auto ea = readout_a.effects();
  const auto eb = readout_b.effects();
  Vec16 p;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const Eigen::Matrix4cd u = Eigen::kroneckerProduct(spin_rotation(angles.a[x]), spin_rotation(angles.b[y]));
      const Eigen::Matrix4cd rotated = u * rho.matrix() * u.adjoint();
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const Eigen::Matrix4cd effect = Eigen::kroneckerProduct(ea[a], eb[b]);
          p[index_of(a, b, x, y)] = (effect * rotated).trace().real();
        }
    }
  OutcomeVector out(p);
  validate_distribution(out, 1e-10);
  return out;
}

OutcomeVector nv_distribution(double lambda, double visibility, const ReadoutModel& readout_a,
                              const ReadoutModel& readout_b, const MeasurementAngles& angles) {
  return nv_distribution(nv_state(lambda, visibility), readout_a, readout_b, angles);
}

MeasurementAngles nv_angles(double epsilon) {
  constexpr double pi = std::numbers::pi;
  return {{-3.0 * pi / 4.0 - epsilon, 3.0 * pi / 4.0 + epsilon}, {0.0, pi / 2.0}};
}

OutcomeVector nv_distribution(const NvParameters& params) {
  return nv_distribution(params.lambda, params.visibility, params.readout_a, params.readout_b,
                         nv_angles(params.epsilon));
}

// ---------------------------------------------------------------------------

namespace {

using Sparse = Eigen::SparseMatrix<double>;

// Fock basis of four modes; mode 0 (aH) varies fastest.
class FockSpace {
 public:
  explicit FockSpace(int cutoff) : d_(cutoff + 1), dim_(d_ * d_ * d_ * d_) {}

  int local() const { return d_; }
  int dim() const { return dim_; }
  int stride(int mode) const {
    int s = 1;
    for (int m = 0; m < mode; ++m) s *= d_;
    return s;
  }
  int occupation(int index, int mode) const { return (index / stride(mode)) % d_; }

  // a^k on `mode`, scaled entrywise by f(n_before).
  template <typename F>
  Sparse lowering(int mode, int k, F weight) const {
    std::vector<Eigen::Triplet<double>> t;
    for (int i = 0; i < dim_; ++i) {
      const int n = occupation(i, mode);
      if (n < k) continue;
      double amp = 1.0;
      for (int j = 0; j < k; ++j) amp *= std::sqrt(static_cast<double>(n - j));
      t.emplace_back(i - k * stride(mode), i, amp * weight(n));
    }
    Sparse m(dim_, dim_);
    m.setFromTriplets(t.begin(), t.end());
    return m;
  }

  // a_i^dagger b_i^dagger for the pair (mode_a, mode_b); truncated at the cutoff.
  Sparse pair_creation(int mode_a, int mode_b) const {
    std::vector<Eigen::Triplet<double>> t;
    for (int i = 0; i < dim_; ++i) {
      const int na = occupation(i, mode_a), nb = occupation(i, mode_b);
      if (na + 1 >= d_ || nb + 1 >= d_) continue;
      t.emplace_back(i + stride(mode_a) + stride(mode_b), i, std::sqrt((na + 1.0) * (nb + 1.0)));
    }
    Sparse m(dim_, dim_);
    m.setFromTriplets(t.begin(), t.end());
    return m;
  }

 private:
  int d_;
  int dim_;
};

constexpr int kAH = 0, kAV = 1, kBH = 2, kBV = 3;

double factorial(int n) { return std::tgamma(n + 1.0); }

// C(mu) = e^{-mu/2} sum_n mu^{n/2} / n!^{3/2} (a^dag b^dag)^n applied to v.
Eigen::VectorXd apply_pair_source(const FockSpace& fs, int mode_a, int mode_b, double mu,
                                  const Eigen::VectorXd& v) {
  const Sparse create = fs.pair_creation(mode_a, mode_b);
  Eigen::VectorXd term = v, out = Eigen::VectorXd::Zero(v.size());
  for (int n = 0; n < fs.local(); ++n) {
    out += std::pow(mu, n / 2.0) / std::pow(factorial(n), 1.5) * term;
    term = create * term;
  }
  return std::exp(-mu / 2.0) * out;
}

// K_k = (1-eta)^{k/2} eta^{N/2} a^k / sqrt(k!)
std::vector<Sparse> loss_kraus(const FockSpace& fs, int mode, double eta) {
  std::vector<Sparse> ops;
  for (int k = 0; k < fs.local(); ++k) {
    const double pre = std::pow(1.0 - eta, k / 2.0) / std::sqrt(factorial(k));
    ops.push_back(fs.lowering(mode, k, [&](int n) { return pre * std::pow(eta, (n - k) / 2.0); }));
  }
  return ops;
}

// exp(theta (aH^dag aV - aV^dag aH)) on one party's two modes, index nH + d nV.
Eigen::MatrixXd polarization_rotation(int d, double theta) {
  const int n = d * d;
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(n, n);
  for (int nh = 0; nh < d; ++nh)
    for (int nv = 0; nv < d; ++nv) {
      const int i = nh + d * nv;
      // aH^dag aV: (nh, nv) -> (nh + 1, nv - 1)
      if (nv > 0 && nh + 1 < d) gen(i + 1 - d, i) += std::sqrt((nh + 1.0) * nv);
      // aV^dag aH: (nh, nv) -> (nh - 1, nv + 1)
      if (nh > 0 && nv + 1 < d) gen(i - 1 + d, i) -= std::sqrt(nh * (nv + 1.0));
    }
  return (theta * gen).exp();
}

void validate(const SpdcParameters& p) {
  auto unit = [](double e) { return e >= 0.0 && e <= 1.0; };
  if (!(p.mu >= 0.0) || !std::isfinite(p.mu)) throw std::invalid_argument("spdc: mu must be >= 0");
  if (!(p.ratio_r >= 0.0) || !std::isfinite(p.ratio_r)) throw std::invalid_argument("spdc: r must be >= 0");
  if (!unit(p.eta_a) || !unit(p.eta_b)) throw std::invalid_argument("spdc: efficiencies must lie in [0,1]");
  if (p.cutoff < 1 || p.cutoff > 8) throw std::invalid_argument("spdc: cutoff must be in [1,8]");
  for (double t : {p.angles.a[0], p.angles.a[1], p.angles.b[0], p.angles.b[1]})
    if (!std::isfinite(t)) throw std::invalid_argument("spdc: non-finite angle");
}

}  // namespace

OutcomeVector spdc_distribution(const SpdcParameters& params) {
  validate(params);
  const FockSpace fs(params.cutoff);
  const int d = fs.local();
  const double r2 = params.ratio_r * params.ratio_r;
  const double mu_v = params.mu / (1.0 + r2);
  const double mu_h = r2 * params.mu / (1.0 + r2);

  Eigen::VectorXd vacuum = Eigen::VectorXd::Zero(fs.dim());
  vacuum[0] = 1.0;
  const Eigen::VectorXd psi =
      apply_pair_source(fs, kAH, kBH, mu_h, apply_pair_source(fs, kAV, kBV, mu_v, vacuum));

  const std::array<int, 4> loss_order = {kAH, kAV, kBV, kBH};
  std::vector<Eigen::VectorXd> branches{psi};
  for (int mode : loss_order) {
    const auto kraus = loss_kraus(fs, mode, mode == kAH || mode == kAV ? params.eta_a : params.eta_b);
    std::vector<Eigen::VectorXd> next;
    if (params.loss == LossModel::single_operator) {
      Sparse sum = kraus[0];
      for (std::size_t k = 1; k < kraus.size(); ++k) sum += kraus[k];
      for (const auto& v : branches) next.push_back(sum * v);
    } else {
      for (const auto& v : branches)
        for (const auto& k : kraus) {
          Eigen::VectorXd w = k * v;
          if (w.squaredNorm() > 0.0) next.push_back(std::move(w));
        }
    }
    branches = std::move(next);
  }

  // Party A occupies the fast index iA = nAH + d nAV, party B iB = nBH + d nBV.
  const int half = d * d;
  Vec16 p;
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) {
      const Eigen::MatrixXd ua = polarization_rotation(d, params.angles.a[x]);
      const Eigen::MatrixXd ub = polarization_rotation(d, -params.angles.b[y]);
      std::array<double, 4> block{};
      for (const auto& v : branches) {
        const Eigen::Map<const Eigen::MatrixXd> state(v.data(), half, half);
        const Eigen::MatrixXd rotated = ua * state * ub.transpose();
        for (int ib = 0; ib < half; ++ib)
          for (int ia = 0; ia < half; ++ia) {
            const int a = (ia % d) > 0 ? 1 : 0;
            const int b = (ib % d) > 0 ? 1 : 0;
            block[a + 2 * b] += rotated(ia, ib) * rotated(ia, ib);
          }
      }
      const double total = block[0] + block[1] + block[2] + block[3];
      for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a) p[index_of(a, b, x, y)] = block[a + 2 * b] / total;
    }
  OutcomeVector out(p);
  validate_distribution(out, 1e-10);
  return out;
}

}  // namespace bellopt
