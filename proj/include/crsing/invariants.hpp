#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "crsing/finiteness.hpp"

namespace crsing {

// Record of the normalization steps applied to reach the symmetric
// quadratic form.  The rotation aligning the residue is a square root of
// conj(residue)/|residue| and is kept symbolically via the residue itself.
struct BishopChange {
    GaussianRational absorbed;     // w -> w - absorbed * z^2
    GaussianRational graph_scale;  // w -> w / graph_scale
    GaussianRational residue;      // coefficient of conj(z)^2 after both
    std::string str() const;
};

struct BishopData {
    bool infinite = false;  // no z*conj(z) term in any aligned form
    Rational gamma_sq;      // square of the invariant, exact; 0 when infinite
    std::optional<Rational> gamma;  // present when gamma_sq is a perfect square
    // z*conj(z) + gamma*(z^2 + conj(z)^2), or z^2 + conj(z)^2 for the
    // infinite case; present only when gamma itself is rational.
    std::optional<Polynomial> normal_quadratic;
    BishopChange change;
};

// Elliptic-model invariant of a graph surface whose defining function
// vanishes to order exactly 2.  The polynomial must involve only the
// leading complex pair of its ring.
BishopData bishop_invariant(const Polynomial& rho);

struct MoserData {
    VanishingOrder s;             // order of the antiholomorphic restriction
    MultiplicityVerdict verdict;  // full multiplicity cross-check of the map
};

// Higher-order invariant of a surface whose quadratic part reduces to
// z*conj(z); undefined otherwise.
MoserData moser_invariant(const Polynomial& rho, std::uint64_t seed = 1);

enum class M0Obstruction { OBSTRUCTED, NOT_OBSTRUCTED_UP_TO_CAP };

struct ObstructionReport {
    M0Obstruction verdict;
    Polynomial witness;  // the antiholomorphic restriction, truncated to cap
    int degree_cap;
};

// A nonzero antiholomorphic restriction obstructs equivalence to the model
// quadric w = z*conj(z); a vanishing one is reported relative to the cap.
ObstructionReport m0_equivalence_obstruction(const Polynomial& rho, int degree_cap);

struct ProbeReport {
    int trials = 0;
    int degree_cap = 0;
    M0Obstruction base_flag;
    VanishingOrder base_mult;  // local-ring multiplicity of the original map
    bool flag_stable = true;   // obstruction flag matched on every trial
    bool mult_stable = true;   // multiplicity matched on every trial
};

// Applies seeded random invertible coordinate changes that keep the graph
// shape, recomputes the defining function by series reversion to the cap,
// and checks that the obstruction flag and the local-ring multiplicity of
// the resolution map do not move.
ProbeReport invariance_probe(const Polynomial& rho, std::uint64_t seed, int trials,
                             int degree_cap);

}  // namespace crsing
