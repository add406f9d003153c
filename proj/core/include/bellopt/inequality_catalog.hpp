#pragma once

// Bell inequalities in the shifted/rescaled convention with local bound 0.

#include <string>
#include <string_view>
#include <vector>

#include "bellopt/tensor_core.hpp"

namespace bellopt {

struct BellInequality {
  OutcomeVector coeffs;
  double local_bound = 0.0;
  std::string name;
};

double bell_value(const BellInequality& beta, const OutcomeVector& p);

// Known names: CHSH, CH, EH, OPT_REF. Throws std::invalid_argument otherwise.
BellInequality catalog(std::string_view name);
std::vector<std::string> catalog_names();

// Textbook CHSH  sum_xy (-1)^(xy) E_xy <= 2, as an OutcomeVector.
BellInequality chsh_standard();

// coeffs + c * ones, local bound + 4c.
BellInequality shift(const BellInequality& b, double c);
// Throws std::invalid_argument unless s > 0.
BellInequality rescale(const BellInequality& b, double s);

// Equal NO1, MARG and CORR components (to tol) and equal local bounds.
// NO2/NO3 vanish on every normalized distribution and are ignored.
bool ns_equivalent(const BellInequality& b1, const BellInequality& b2, double tol = 1e-9);

// Maximum of bell_value over the 16 local deterministic vertices.
double deterministic_maximum(const BellInequality& b);

// Remove the NO2/NO3 parts, which never contribute on normalized inputs.
BellInequality drop_normalization_freedom(const BellInequality& b);

}  // namespace bellopt
