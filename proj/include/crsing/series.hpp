#pragma once

#include <vector>

#include "polynomial.hpp"

namespace crsing {

// Power series solving for square analytic systems.  All results are jets:
// polynomials that agree with the exact series through total degree `cap`
// and carry nothing above it.

// Solve eqs_i(u, p) = 0 for the unknowns u (the listed ring slots) as
// series in the remaining slots.  Requires eqs(0) = 0 and an invertible
// Jacobian d eqs / d u at the origin; throws std::invalid_argument
// otherwise.  Returns one jet per unknown slot, in the given order; slots
// not being solved pass through the jets untouched, so the result can be
// substituted directly.
std::vector<Polynomial> implicit_series_solve(const std::vector<Polynomial>& eqs,
                                              const std::vector<int>& unknown_slots, int cap);

// Inverse jet of a self-map germ.  comps[j] is the image of slot slots[j];
// the map must fix the origin and have an invertible linear part in those
// slots (other slots may not appear).  Returns jets g with g(f) = identity
// through degree cap; by general theory f(g) then matches too.
std::vector<Polynomial> formal_inverse(const std::vector<Polynomial>& comps,
                                       const std::vector<int>& slots, int cap);

// Compose target map after source map: images of the outer map's slots are
// substituted by inner jets, truncated at cap.
std::vector<Polynomial> compose_jets(const std::vector<Polynomial>& outer,
                                     const std::vector<int>& slots,
                                     const std::vector<Polynomial>& inner, int cap);

}  // namespace crsing
