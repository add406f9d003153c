#pragma once

// JSON encodings shared by the tools and fixtures.
//
//   OutcomeVector:  {"coeffs": [16 numbers, index a + 2b + 4x + 8y], "labels": ["abxy-order"]}
//   BellInequality: the above plus "local_bound" and "name".

#include <stdexcept>
#include <string>
#include <string_view>

#include "bellopt/inequality_catalog.hpp"
#include "bellopt/tensor_core.hpp"
#include "bellopt/trial_simulator.hpp"
#include "bellopt/variance_optimizer.hpp"

namespace bellopt {

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_json(const OutcomeVector& v);
std::string to_json(const BellInequality& b);
OutcomeVector outcome_vector_from_json(std::string_view text);
BellInequality inequality_from_json(std::string_view text);

// Nonzero components (max |entry| > tol), with alpha coefficients per basis vector.
std::string decomposition_json(const OutcomeVector& v, double tol = 1e-12);

// Means, standard deviations and s-ratios per inequality.
std::string ensemble_summary_json(const EnsembleReport& report);

std::string covariance_json(const CovarianceMatrix& sigma);

// Parse and re-emit in canonical form (sorted keys, two-space indent).
std::string canonical_json(std::string_view text);

std::string_view name_of(Allocation a);
Allocation allocation_from_name(std::string_view name);

}  // namespace bellopt
