#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crsing/resolution.hpp"

namespace crsing {

// Restriction of the graph function to the antiholomorphic axis.  The
// resolution map built from the data is finite exactly when this is nonzero.
struct FinitenessResult {
    bool finite;
    Polynomial witness;  // rho with z1 and the real slots set to zero
};

FinitenessResult finiteness_test(const NormalFormData& data);

// Reduce the fibre equation F(t) = q to one variable: solve the middle
// components for the transverse slots as series with the first target
// coordinate kept formal, substitute into the graph component, then fill in
// the numeric target.  Returns ascending coefficients of a polynomial in t1
// whose roots near 0 are the fibre points over `target` (length n).
std::vector<GaussianRational> fibre_polynomial(const NormalFormData& data,
                                               const std::vector<GaussianRational>& target,
                                               int degree_cap);

// Certified count of complex roots of sum c_j t^j with |t| < radius.  Runs a
// simultaneous root iteration in high precision and accepts only when the
// correction discs are pairwise disjoint and clear of the boundary circle;
// empty result otherwise.
std::optional<long> count_roots_in_disc(const std::vector<GaussianRational>& coeffs,
                                        const Rational& radius);

struct CountResult {
    std::optional<long> count;  // empty when no trial certified
    int attempts = 0;
    int boundary_failures = 0;
};

// Count the points of a small fibre of the resolution map by certified root
// isolation of the reduced univariate equation.  When `target` is empty each
// trial samples a fresh target whose last coordinate is scaled so the fibre
// sits well inside the disc; an uncertifiable trial is discarded, never
// miscounted.
CountResult preimage_count(const NormalFormData& data,
                           const std::vector<GaussianRational>& target,
                           const Rational& radius, int trials, std::uint64_t seed);

enum class MultiplicityMethod { Order, LocalRing, Count, All };

struct MultiplicityVerdict {
    bool finite = false;
    std::optional<VanishingOrder> k_order;       // vanishing order of the witness
    std::optional<VanishingOrder> k_local_ring;  // dimension of the local quotient ring
    std::optional<long> k_count;                 // certified fibre cardinality
    bool agree = false;      // no two computed answers contradict each other
    bool confirmed = false;  // all three methods returned the same integer
};

// Multiplicity of the resolution map at 0 by the requested method(s).
MultiplicityVerdict multiplicity(const NormalFormData& data,
                                 MultiplicityMethod method = MultiplicityMethod::All,
                                 std::uint64_t seed = 1);

// Local intersection number dim_C O_0 / <components> of a holomorphic map
// germ; INFINITE when the zero set has positive dimension.
VanishingOrder map_multiplicity(const HoloMap& f);

}  // namespace crsing
