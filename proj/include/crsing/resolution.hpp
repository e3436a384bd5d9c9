#pragma once

#include <random>
#include <vector>

#include "crlocus.hpp"
#include "polynomial.hpp"

namespace crsing {

// Graph normal form for an n-manifold in C^n with a one-dimensional
// complex tangent at 0: z_n = rho(z1, conj z1, x'), y_alpha = r_alpha of
// the same arguments.  The ring holds z1 (complex) followed by the real
// slots x2..x_{n-1}; rho and every r_alpha vanish to order two, and the
// r_alpha are real-valued.
struct NormalFormData {
    RingPtr ring;
    Polynomial rho;
    std::vector<Polynomial> r;  // alpha = 2..n-1

    static NormalFormData make(RingPtr ring, Polynomial rho, std::vector<Polynomial> r);
    std::size_t n() const { return r.size() + 2; }
};

// True when every r_alpha(0, conj z1, 0) vanishes identically, so the
// r_alpha carry no harmonic tail.
bool antiholomorphic_parts_vanish(const NormalFormData& d);

// The change z_alpha -> z_alpha - 2 i h_alpha(z1) rewritten into the graph
// data; each h_alpha is holomorphic in z1 alone with order >= 2.  Negate
// the shifts to invert.
NormalFormData shift_graph_coordinates(const NormalFormData& d,
                                       const std::vector<Polynomial>& h);

struct HarmonicElimination {
    NormalFormData data;
    std::vector<Polynomial> shift;  // accumulated h_alpha
    int passes = 0;
    bool residual = false;  // x'-coupling kept regenerating harmonic terms
};

// Absorb the harmonic part of each r_alpha into z_alpha.  Data coupled
// through x' can regenerate harmonic terms at higher order each pass, so
// the loop caps out and flags instead of diverging.
HarmonicElimination eliminate_harmonic_terms(const NormalFormData& d, int max_passes = 32);

// Holomorphic polynomial map germ fixing 0: one component per coordinate
// slot of the source ring (holomorphic and real slots, in ring order),
// none of them touching an antiholomorphic slot.
struct HoloMap {
    RingPtr source;
    std::vector<int> coordinate_slots;
    std::vector<Polynomial> components;

    static HoloMap make(RingPtr source, std::vector<Polynomial> components);
    std::size_t dim() const { return components.size(); }
    Polynomial jacobian() const;  // determinant of the holomorphic differential
    std::vector<GaussianRational> apply(const Point& t) const;
};

// Point of the target ring with the given holomorphic coordinates.
Point target_point(const RingPtr& target, const std::vector<GaussianRational>& values);

// The parametrization (t1 + i t_n, t_alpha + i r_alpha, rho) of the graph
// data over real t1..tn.  Requires antiholomorphic_parts_vanish(d).
HoloMap build_resolution_map(const NormalFormData& d);

// Rank at 0 of the real linearization of the map restricted to real
// arguments; equals dim() exactly when the restriction immerses.
int real_rank_at_origin(const HoloMap& f);

struct PullbackLocus {
    Polynomial jacobian;
    std::vector<Polynomial> ideal;  // the preimage of the CR singular set
};

// The preimage of the CR singular set of the image is cut out of the
// source by the vanishing of the holomorphic Jacobian.  Throws
// std::domain_error when the Jacobian vanishes identically (the image is
// nowhere generic).
PullbackLocus pullback_singular_locus(const HoloMap& f);

// Square of the Jacobian: pushed forward along the inverse of f it is the
// CR function candidate that obstructs holomorphic extension across the
// singular locus.
Polynomial nonextendable_candidate(const HoloMap& f);

struct CandidateCheck {
    int points_checked = 0;
    bool passed = false;
};

// At each sample t with jacobian(t) != 0: the image must be a CR point of
// the target, the candidate must push forward through the local inverse
// jet and recompose to itself through degree cap, and the antiholomorphic
// tangent basis at the image must annihilate the pushed-forward jet.
// Throws std::invalid_argument when a sample kills the Jacobian.
CandidateCheck verify_cr_candidate(const HoloMap& f, const ManifoldSpec& target,
                                   const std::vector<Point>& samples, int cap = 8);

// Random small-rational source points avoiding the Jacobian zero set.
std::vector<Point> sample_resolution_points(const HoloMap& f, std::mt19937_64& rng, int count);

}  // namespace crsing
