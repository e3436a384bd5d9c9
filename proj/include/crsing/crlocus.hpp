#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace crsing {

enum class ManifoldKind { Graph, General };

// Real submanifold germ of C^n, either a codimension-two graph
// w = rho(z, conj z) or a general system of real-valued equations.
class ManifoldSpec {
  public:
    // rho must vanish to order >= 2 at 0 and not involve the graph slot.
    static ManifoldSpec graph(RingPtr ring, int w_slot, Polynomial rho);
    // Every r_j must be real-valued with r_j(0) = 0.
    static ManifoldSpec general(RingPtr ring, std::vector<Polynomial> defining);

    ManifoldKind kind() const { return kind_; }
    const RingPtr& ring() const { return ring_; }
    std::size_t ambient_dim() const { return n_; }  // complex dimension n
    std::size_t codim() const { return codim_; }    // real codimension d
    int w_slot() const { return w_slot_; }
    const Polynomial& rho() const { return rho_; }

    // Complex defining equations, closed under conjugation.
    const std::vector<Polynomial>& equations() const { return equations_; }

    // The graph rewritten with r1 = Re(w - rho), r2 = Im(w - rho).
    ManifoldSpec as_general() const;

    bool contains(const Point& p) const;

    // Graph manifolds only: the unique point over given z-coordinates.
    Point point_over(const std::vector<GaussianRational>& z_values) const;

  private:
    ManifoldSpec() = default;
    ManifoldKind kind_ = ManifoldKind::General;
    RingPtr ring_;
    std::size_t n_ = 0, codim_ = 0;
    int w_slot_ = -1;
    Polynomial rho_;
    std::vector<Polynomial> equations_;
};

// dim_C of the antiholomorphic tangent space at p: n minus the exact rank
// of the matrix of antiholomorphic Wirtinger derivatives of the defining
// equations.  Throws std::invalid_argument when p is not on M.
int cr_tangent_dim(const ManifoldSpec& m, const Point& p);

enum class LocusClass { Complex, LeviFlat, TotallyReal, CRSingular, MixedOrUnknown };
std::string locus_class_name(LocusClass c);

// Equations cutting the CR singular set out of M (to be intersected with
// the manifold equations), conjugate-closed.
struct LocusDescription {
    std::vector<Polynomial> equations;
    std::optional<Point> sampled_point;
    int dim_real_at_sampled_point = -1;
    int cr_dim_at_sampled_point = -1;
    LocusClass classification = LocusClass::MixedOrUnknown;
    bool smoothness_checked = false;
};

// Graph: { rho_conj(z_k) } and conjugates.  General: all dxd minors of the
// antiholomorphic Wirtinger matrix and conjugates.  Throws
// std::domain_error("not generic at any point") when every equation
// vanishes identically on M.
LocusDescription cr_singular_locus(const ManifoldSpec& m);

struct PointClassification {
    int real_tangent_dim = 0;  // dim_R of the tangent to the locus at p
    int cr_dim = 0;            // dim_C (T intersect JT)
    bool complex_point = false;
    bool totally_real = false;
    bool leviflat_certified = false;
    bool smooth_across_witnesses = false;  // equation rank constant over all samples
    LocusClass label = LocusClass::MixedOrUnknown;
};

// Exact tangent-space classification of the locus (cut inside M) at p.
// Witnesses are further locus points: equal equation-rank certifies
// smoothness, and a CR-dimension jump across them labels the locus
// CR-singular.  Throws std::invalid_argument when a point misses the
// locus and std::domain_error when p sits under the generic rank.
PointClassification classify_point(const ManifoldSpec& m, const LocusDescription& locus,
                                    const Point& p, const std::vector<Point>& witnesses = {});

// Store classification results into the description.
void apply_classification(LocusDescription& locus, const ManifoldSpec& m, const Point& p,
                          const std::vector<Point>& witnesses = {});

// For loci whose equations are all monomials: the coordinate branches,
// each a conjugate-closed list of vanishing variables, supersets dropped.
// nullopt when some equation is not a monomial.
std::optional<std::vector<std::vector<Polynomial>>> monomial_branches(
    const std::vector<Polynomial>& equations);

// Heuristic search for rational points of the real zero set of the given
// equations.  Results verify exactly; the search is seeded and may find
// fewer than requested.
std::vector<Point> find_rational_points(const std::vector<Polynomial>& equations,
                                        const RingPtr& ring, std::mt19937_64& rng, int count,
                                        int budget = 500);

}  // namespace crsing
