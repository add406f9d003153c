#pragma once

// Physical source models producing (2,2,2) outcome distributions.

#include <array>
#include <numbers>

#include <Eigen/Dense>

#include "bellopt/tensor_core.hpp"

namespace bellopt {

// Measurement angles in radians: setting x of A uses a[x], setting y of B uses b[y].
struct MeasurementAngles {
  std::array<double, 2> a{};
  std::array<double, 2> b{};
};

// ---------------------------------------------------------------------------
// Deterministic two-qubit source

class TwoQubitState {
 public:
  // Throws std::invalid_argument unless Hermitian (1e-12), trace 1 (1e-12)
  // and PSD (eigenvalues >= -1e-10).
  explicit TwoQubitState(const Eigen::Matrix4cd& rho);
  const Eigen::Matrix4cd& matrix() const { return rho_; }

 private:
  Eigen::Matrix4cd rho_;
};

// Werner-like state around the singlet in basis |00>,|01>,|10>,|11>:
// diagonal (lambda, 1-lambda, 1-lambda, lambda)/2, coherence -V/2 between
// |01> and |10>. V = 1, lambda = 0 is the singlet.
TwoQubitState nv_state(double lambda, double visibility);

// Pi_0 = eta_plus |0><0| + (1 - eta_minus) |1><1|, Pi_1 = 1 - Pi_0.
struct ReadoutModel {
  double eta_plus = 1.0;
  double eta_minus = 1.0;

  void validate() const;  // throws std::invalid_argument outside [0,1]
  std::array<Eigen::Matrix2cd, 2> effects() const;
};

// exp(-i theta sigma_y / 2)
Eigen::Matrix2cd spin_rotation(double theta);

OutcomeVector nv_distribution(const TwoQubitState& rho, const ReadoutModel& readout_a,
                              const ReadoutModel& readout_b, const MeasurementAngles& angles);
OutcomeVector nv_distribution(double lambda, double visibility, const ReadoutModel& readout_a,
                              const ReadoutModel& readout_b, const MeasurementAngles& angles);

struct NvParameters {
  double lambda = 0.022;
  double visibility = 0.873;
  ReadoutModel readout_a{0.954, 0.994};
  ReadoutModel readout_b{0.939, 0.998};
  double epsilon = 0.026 * std::numbers::pi;
};

// A measures at -3pi/4 - eps and 3pi/4 + eps, B at 0 and pi/2.
MeasurementAngles nv_angles(double epsilon);
OutcomeVector nv_distribution(const NvParameters& params);

// ---------------------------------------------------------------------------
// Photon-pair source in a truncated Fock space of modes (aH, aV, bH, bV)

enum class LossModel {
  kraus,            // incoherent sum over photon-loss branches
  single_operator,  // sum of the loss branches as one coherent operator
};

struct SpdcParameters {
  double mu = 4e-4;        // mean pair number
  double ratio_r = 0.288;  // mu_H / mu_V = r^2
  double eta_a = 0.747;
  double eta_b = 0.756;
  MeasurementAngles angles = {{-4.2 * std::numbers::pi / 180.0, 25.9 * std::numbers::pi / 180.0},
                              {-4.2 * std::numbers::pi / 180.0, 25.9 * std::numbers::pi / 180.0}};
  int cutoff = 4;  // photons per mode
  LossModel loss = LossModel::kraus;
};

// Outcome 1 = click in the party's H mode after its polarization rotation.
// The two analyzers rotate in opposite senses (mirror geometry). Each setting
// block is normalized. Throws std::invalid_argument on invalid parameters.
OutcomeVector spdc_distribution(const SpdcParameters& params);

}  // namespace bellopt
