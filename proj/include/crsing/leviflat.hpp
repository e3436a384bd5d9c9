#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "crlocus.hpp"
#include "polynomial.hpp"
#include "resolution.hpp"

namespace crsing {

// A classified intersection landed outside the dimensions a foliated image
// admits; feeding non-image data here is the only way to trigger it.
struct theorem_violation : std::logic_error {
    using std::logic_error::logic_error;
};

// Holomorphically parametrized family of complex leaves inside an ambient
// manifold: `map` has one component per ambient complex coordinate, each
// free of the conjugates of the leaf slots.  Fixing the parameters picks
// one leaf, a complex manifold of dimension leaf_dim.
struct LeafFamily {
    RingPtr ring;                      // leaf coordinates and parameters
    std::vector<int> leaf_slots;       // holomorphic slots of the leaf coordinates
    std::vector<int> parameter_slots;  // holomorphic slots of the parameters
    std::vector<Polynomial> map;       // ambient components
    int leaf_dim = 0;

    static LeafFamily make(RingPtr ring, std::vector<int> leaf_slots,
                           std::vector<int> parameter_slots, std::vector<Polynomial> map);
};

enum class FoliationVerdict { Foliated, ComplexGraph, NotRecognized };

// Recognition output for a codimension-two graph w = rho(z, conj z): when
// rho carries no conj(z_k) for k < m, the graph is foliated by the complex
// leaves {z' free, z_m = t, w = rho(z', t, conj t)} and is Levi-flat at
// its CR points; if conj(z_m) is absent too, rho is holomorphic and the
// graph is complex analytic.
struct GraphFoliation {
    FoliationVerdict verdict = FoliationVerdict::NotRecognized;
    Polynomial singular_equation;      // rho_{conj z_m}: cuts S out of M when foliated
    std::optional<LeafFamily> leaves;  // one complex parameter, leaf_dim = m - 1
    std::vector<Polynomial> chart;     // CR parametrization from R^2 x C^{m-1}
    RingPtr chart_ring;                // x, y real, then the leaf coordinates
};

// rho lives in a ring of m >= 2 complex variables (no w slot) and must
// vanish to order two at 0.  Recognition is one-sided: NotRecognized means
// the antiholomorphic-dependence test failed in these coordinates, not
// that the graph cannot be Levi-flat.
GraphFoliation is_leviflat_graph(const Polynomial& rho);

// Jacobian of the holomorphic extension of the chart (the real chart
// variables promoted to independent complex ones).  Its zero set pulls
// the CR singular set back to the chart; for graph charts it equals
// -2i times the pullback of the singular equation.
Polynomial chart_singular_equation(const GraphFoliation& g);

enum class LeafMeet { Empty, Hypersurface, FullLeaf };

struct LeafIntersection {
    LeafMeet kind = LeafMeet::Empty;
    int dimension = -1;  // complex dimension; -1 when empty
    int leaf_dim = 0;
    std::vector<Polynomial> equations;  // nonzero pullbacks in the leaf coordinates
    std::vector<Polynomial> basis;      // their reduced Groebner basis
};

// Pulls conjugate-closed singular equations back to the leaf at the given
// parameter values and measures the resulting complex variety.  A foliated
// image only admits empty, dim j-1, or dim j (the whole leaf); anything
// else throws theorem_violation.  Pullbacks that mix a leaf coordinate
// with its conjugate cannot be presented as a complex variety and throw
// std::invalid_argument.
LeafIntersection leaf_singular_intersection(const std::vector<Polynomial>& singular_equations,
                                            const LeafFamily& family,
                                            const std::vector<GaussianRational>& parameter);

// Classification counts over a rational parameter grid: per_axis points in
// [-radius, radius] on every real axis of every parameter.  When some leaf
// meets the singular set in dimension j-1, every nearby leaf must meet it
// too, so a grid holding both a Hypersurface leaf and an Empty leaf is
// flagged inconsistent.
struct LeafGridProbe {
    int empty = 0;
    int hypersurface = 0;
    int full_leaf = 0;
    int leaves = 0;
    bool lower_dim_leaves_all_meet = true;
};

LeafGridProbe leaf_grid_probe(const std::vector<Polynomial>& singular_equations,
                              const LeafFamily& family, int per_axis = 5,
                              const Rational& radius = Rational(1, 2));

enum class ImageVerdict { Consistent, NotACRSingularImage };

// Dimension bound for images of R^2 x C^{m-1}: the singular set of such an
// image has real dimension at least 2(m-1).  `bound` is dim of the variety
// cut by the conjugate-closed singular equations with z and conj z read as
// independent variables; the real singular set never exceeds it, so
// falling short of `required` certifies the graph is not such an image.
struct DimensionBound {
    ImageVerdict verdict = ImageVerdict::Consistent;
    int bound = 0;
    int required = 0;
    bool flatness_assumed = false;  // caller vouched instead of the graph test
};

// Throws std::invalid_argument when the graph test fails and the caller
// did not assert flatness, std::domain_error when rho is holomorphic (the
// graph is complex analytic and has no CR singular set to bound).
DimensionBound dimension_obstruction(const Polynomial& rho, bool assert_leviflat = false);

struct SheetReport {
    std::vector<Rational> direction;
    Polynomial sheet;               // real hypervariety equation in the target ring
    bool self_conjugate = false;
    bool reducible_possible = true;  // no factorization is attempted
    std::optional<bool> contains_image;
};

struct HypervarietyFamily {
    VanishingOrder multiplicity;  // of the pushing map at 0
    bool directions_independent = false;
    std::vector<SheetReport> sheets;
};

// For each direction v: the source sheet {sum_j v_j r_j = 0} contains the
// source manifold, so its image under the finite map f is a real
// hypervariety containing f(source).  The image equation is computed by
// eliminating the source variables from the graph ideal of (f, conj f)
// with z and conj z independent, then reading the result back in the
// target ring, symmetrized to a conjugation-invariant representative.
// When `image` is a graph manifold, containment of the image in each sheet
// is decided exactly by substitution; for general manifolds membership in
// the generated ideal is sufficient but not necessary, and a false verdict
// means unverified.  Throws std::domain_error when f cannot be certified
// finite.
HypervarietyFamily leviflat_hypervarieties(const HoloMap& f,
                                           const std::vector<Polynomial>& source_defining,
                                           const RingPtr& target,
                                           const std::vector<std::vector<Rational>>& directions,
                                           const std::optional<ManifoldSpec>& image = std::nullopt);

}  // namespace crsing
