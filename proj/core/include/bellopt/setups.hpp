#pragma once

// Reference distributions used throughout the tests and tools.

#include <array>
#include <string_view>

#include "bellopt/tensor_core.hpp"

namespace bellopt::setups {

OutcomeVector uniform();                  // p = 1/4
OutcomeVector perfectly_correlated();     // 1/2 delta(a = b)
OutcomeVector biased_coins();             // A fair, B with p(b=0) = 1/4
OutcomeVector signaling();                // 1/2 delta(b = x)
OutcomeVector pr_box();                   // 1/2 delta(a xor b = x y)
OutcomeVector optimal_quantum();          // Tsirelson point for the CHSH orientation used here

// Local deterministic strategy a = fa[x], b = fb[y].
OutcomeVector deterministic(std::array<int, 2> fa, std::array<int, 2> fb);
// All 16 local deterministic vertices.
std::array<OutcomeVector, 16> deterministic_vertices();

// Quantum correlator family E_xy = cos(tA_x - tB_y) (maximally entangled
// state, measurements in a plane), marginals uniform.
OutcomeVector correlator_point(double ta0, double ta1, double tb0, double tb1);

// Matrix written with rows a + 2x and columns b + 2y.
OutcomeVector from_display(const std::array<std::array<double, 4>, 4>& rows);
std::array<std::array<double, 4>, 4> to_display(const OutcomeVector& v);

}  // namespace bellopt::setups
