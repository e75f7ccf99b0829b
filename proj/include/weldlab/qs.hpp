#pragma once
// Quasisymmetry constant estimation for circle homeomorphisms.
//
// The map is conjugated to the real line by the Cayley transform
// C(z) = i(1-z)/(1+z), so C(e^{i theta}) = tan(theta/2), and the classical
// ratio rho = (h(x+y) - h(x)) / (h(x) - h(x-y)) is swept over a dyadic grid.
// Probes whose interval [x-y, x+y] comes near the Cayley pole (the preimage
// of infinity) are excluded: the line functional is conjugation dependent
// there and blows up for any map not fixing -1.

#include <functional>
#include <vector>

#include "weldlab/circle_map.hpp"

namespace weldlab {

struct QsEstimate {
    double k = 1.0;  // +infinity when a ratio denominator collapses
    std::vector<double> scales;
    double worst_x = 0.0;
    double worst_y = 0.0;
};

// Sweep x = j 2^-depth over [-64, 64] and y in {2^-1, ..., 2^-depth}.
// Nondecreasing in depth; k = 1 exactly for the identity.
[[nodiscard]] QsEstimate qs_constant(const CircleMap& m, int depth = 8);

// Pull back an increasing homeomorphism of the real line (fixing infinity)
// to a sampled CircleMap through the Cayley transform.
[[nodiscard]] CircleMap circle_from_line_map(const std::function<double(double)>& line_map,
                                             int n = 1024);

}  // namespace weldlab
