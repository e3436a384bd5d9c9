#include "crsing/crlocus.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "crsing/ideal.hpp"
#include "crsing/linalg.hpp"

namespace crsing {

namespace {

void require_all_complex(const RingPtr& ring, const char* who) {
    for (std::size_t i = 0; i < ring->size(); ++i)
        if (ring->var(static_cast<int>(i)).role == VarRole::Real)
            throw std::invalid_argument(std::string(who) + ": ambient ring must be complex");
}

std::vector<int> slots_with_role(const RingPtr& ring, VarRole role) {
    std::vector<int> out;
    for (std::size_t i = 0; i < ring->size(); ++i)
        if (ring->var(static_cast<int>(i)).role == role) out.push_back(static_cast<int>(i));
    return out;
}

void push_unique(std::vector<Polynomial>& list, const Polynomial& p) {
    if (p.is_zero()) return;
    for (const auto& q : list)
        if (q == p) return;
    list.push_back(p);
}

std::vector<Polynomial> conj_close(const std::vector<Polynomial>& gens) {
    std::vector<Polynomial> out;
    for (const auto& g : gens) {
        push_unique(out, g);
        push_unique(out, g.conj());
    }
    return out;
}

// One Jacobian row per equation: Wirtinger derivatives over every slot.
Matrix jacobian_at(const std::vector<Polynomial>& eqs, const Point& p) {
    const RingPtr& ring = p.ring();
    Matrix rows;
    rows.reserve(eqs.size());
    for (const auto& g : eqs) {
        Row row(ring->size());
        for (std::size_t k = 0; k < ring->size(); ++k)
            row[k] = evaluate(g.wirtinger(static_cast<int>(k)), p);
        rows.push_back(std::move(row));
    }
    return rows;
}

// J acts on doubled tangent vectors by i on holomorphic and -i on
// antiholomorphic entries.
std::vector<Row> apply_j(const std::vector<Row>& basis, const RingPtr& ring) {
    std::vector<Row> out = basis;
    const GaussianRational I = GaussianRational::i();
    for (auto& v : out)
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] *= ring->var(static_cast<int>(k)).role == VarRole::Holomorphic ? I : -I;
    return out;
}

bool on_all(const std::vector<Polynomial>& eqs, const Point& p) {
    for (const auto& g : eqs)
        if (!evaluate(g, p).is_zero()) return false;
    return true;
}

struct TangentData {
    int rank;
    int real_dim;
    int cr_dim;
    bool complex_point;
    bool totally_real;
};

TangentData tangent_data(const std::vector<Polynomial>& system, const Point& p) {
    const RingPtr& ring = p.ring();
    Matrix rows = jacobian_at(system, p);
    int rank = exact_rank(rows);
    int kernel_dim = static_cast<int>(ring->size()) - rank;
    auto kernel = kernel_basis(rows);
    auto j_kernel = apply_j(kernel, ring);
    int isect = intersection_dim(kernel, j_kernel);
    if (isect % 2 != 0) throw std::logic_error("tangent: odd J-invariant dimension");
    TangentData t;
    t.rank = rank;
    t.real_dim = kernel_dim;
    t.cr_dim = isect / 2;
    t.complex_point = (isect == kernel_dim);
    t.totally_real = (isect == 0);
    return t;
}

// Substitution images with every slot present: recorded images where set,
// the slot itself elsewhere.
std::vector<std::optional<Polynomial>> filled_images(
    const std::vector<std::optional<Polynomial>>& partial, const RingPtr& ring) {
    std::vector<std::optional<Polynomial>> im(ring->size());
    for (std::size_t s = 0; s < ring->size(); ++s)
        im[s] = partial[s] ? *partial[s] : Polynomial::variable(ring, static_cast<int>(s));
    return im;
}

// Graph-reduce the system by eliminating slots that occur linearly with a
// constant coefficient; count complex coordinate pairs left completely
// free.  Those pairs rule a genuine foliation by complex leaves: images
// stay holomorphic in them and no residual equation touches them.
std::optional<int> cylinder_foliation_rank(std::vector<Polynomial> eqs, const RingPtr& ring) {
    std::vector<std::optional<Polynomial>> images(ring->size());
    for (std::size_t pass = 0; pass <= ring->size(); ++pass) {
        auto im = filled_images(images, ring);
        std::vector<Polynomial> current;
        for (const auto& e : eqs) {
            Polynomial r = e.substitute(im, ring);
            if (r.is_zero()) continue;
            if (r.is_constant()) return std::nullopt;
            current.push_back(std::move(r));
        }
        eqs = std::move(current);

        int pick_slot = -1;
        std::size_t pick_eq = 0;
        for (std::size_t ei = 0; ei < eqs.size() && pick_slot < 0; ++ei) {
            // prefer eliminating antiholomorphic slots
            for (VarRole role : {VarRole::Antiholomorphic, VarRole::Holomorphic}) {
                for (int s : slots_with_role(ring, role)) {
                    if (images[static_cast<std::size_t>(s)]) continue;
                    if (eqs[ei].degree_in(s) != 1) continue;
                    Polynomial c = eqs[ei].wirtinger(s);
                    if (!c.is_constant() || c.is_zero()) continue;
                    pick_slot = s;
                    pick_eq = ei;
                    break;
                }
                if (pick_slot >= 0) break;
            }
        }
        if (pick_slot < 0) break;

        GaussianRational c = eqs[pick_eq].wirtinger(pick_slot).constant_term();
        Polynomial rest = eqs[pick_eq] - Polynomial::variable(ring, pick_slot).scaled(c);
        Polynomial image = rest.scaled(-(GaussianRational(1) / c));
        // fold the new assignment into the recorded images
        std::vector<std::optional<Polynomial>> one(ring->size());
        one[static_cast<std::size_t>(pick_slot)] = image;
        auto fold = filled_images(one, ring);
        for (auto& rec : images)
            if (rec) rec = rec->substitute(fold, ring);
        images[static_cast<std::size_t>(pick_slot)] = image;
    }

    int pairs = 0;
    for (int h : slots_with_role(ring, VarRole::Holomorphic)) {
        int a = ring->var(h).mate;
        if (images[static_cast<std::size_t>(h)] || images[static_cast<std::size_t>(a)]) continue;
        bool intact = true;
        for (const auto& e : eqs)
            if (e.degree_in(h) > 0 || e.degree_in(a) > 0) intact = false;
        for (const auto& rec : images)
            if (rec && rec->degree_in(a) > 0) intact = false;
        if (intact) ++pairs;
    }
    return pairs;
}

}  // namespace

ManifoldSpec ManifoldSpec::graph(RingPtr ring, int w_slot, Polynomial rho) {
    require_all_complex(ring, "graph manifold");
    if (w_slot < 0 || static_cast<std::size_t>(w_slot) >= ring->size() ||
        ring->var(w_slot).role != VarRole::Holomorphic)
        throw std::invalid_argument("graph manifold: invalid graph slot");
    if (!rho.ring() || !rho.ring()->same_as(*ring))
        throw std::invalid_argument("graph manifold: rho lives in a different ring");
    int w_bar = ring->var(w_slot).mate;
    if (rho.degree_in(w_slot) > 0 || rho.degree_in(w_bar) > 0)
        throw std::invalid_argument("graph manifold: rho must not involve the graph variable");
    auto ord = rho.order_of_vanishing();
    if (ord.kind == VanishingOrder::FINITE && ord.value < 2)
        throw std::invalid_argument("graph manifold: rho must vanish to order 2");

    ManifoldSpec m;
    m.kind_ = ManifoldKind::Graph;
    m.ring_ = ring;
    m.n_ = slots_with_role(ring, VarRole::Holomorphic).size();
    m.codim_ = 2;
    m.w_slot_ = w_slot;
    m.rho_ = rho;
    Polynomial q = Polynomial::variable(ring, w_slot) - rho;
    m.equations_ = {q, q.conj()};
    return m;
}

ManifoldSpec ManifoldSpec::general(RingPtr ring, std::vector<Polynomial> defining) {
    require_all_complex(ring, "general manifold");
    if (defining.empty()) throw std::invalid_argument("general manifold: no equations");
    for (const auto& r : defining) {
        if (!r.ring() || !r.ring()->same_as(*ring))
            throw std::invalid_argument("general manifold: equation in a different ring");
        if (!r.is_real_valued())
            throw std::invalid_argument("general manifold: equations must be real-valued");
        if (!r.constant_term().is_zero())
            throw std::invalid_argument("general manifold: equation does not vanish at 0");
    }
    ManifoldSpec m;
    m.kind_ = ManifoldKind::General;
    m.ring_ = ring;
    m.n_ = slots_with_role(ring, VarRole::Holomorphic).size();
    m.codim_ = defining.size();
    m.equations_ = std::move(defining);

    Point origin(ring);
    Matrix rows = jacobian_at(m.equations_, origin);
    if (exact_rank(rows) != static_cast<int>(m.codim_))
        throw std::invalid_argument("general manifold: differentials dependent at the base point");
    return m;
}

ManifoldSpec ManifoldSpec::as_general() const {
    if (kind_ != ManifoldKind::Graph)
        throw std::logic_error("as_general: spec is already general");
    const Polynomial& q = equations_[0];
    Polynomial qbar = equations_[1];
    GaussianRational half(make_rational(1, 2));
    GaussianRational minus_half_i = GaussianRational(Rational(0), make_rational(-1, 2));
    Polynomial r1 = (q + qbar).scaled(half);
    Polynomial r2 = (q - qbar).scaled(minus_half_i);
    return general(ring_, {r1, r2});
}

bool ManifoldSpec::contains(const Point& p) const { return on_all(equations_, p); }

Point ManifoldSpec::point_over(const std::vector<GaussianRational>& z_values) const {
    if (kind_ != ManifoldKind::Graph)
        throw std::logic_error("point_over: only graph manifolds are parametrized");
    Point p(ring_);
    std::size_t used = 0;
    for (int h : slots_with_role(ring_, VarRole::Holomorphic)) {
        if (h == w_slot_) continue;
        if (used >= z_values.size())
            throw std::invalid_argument("point_over: missing coordinate values");
        p.set(h, z_values[used++]);
    }
    if (used != z_values.size()) throw std::invalid_argument("point_over: extra coordinate values");
    p.set(w_slot_, evaluate(rho_, p));
    return p;
}

int cr_tangent_dim(const ManifoldSpec& m, const Point& p) {
    if (!m.contains(p)) throw std::invalid_argument("cr_tangent_dim: point is not on the manifold");
    std::vector<int> anti = slots_with_role(m.ring(), VarRole::Antiholomorphic);
    Matrix rows;
    for (const auto& g : m.equations()) {
        Row row;
        row.reserve(anti.size());
        for (int k : anti) row.push_back(evaluate(g.wirtinger(k), p));
        rows.push_back(std::move(row));
    }
    return static_cast<int>(m.ambient_dim()) - exact_rank(rows);
}

std::string locus_class_name(LocusClass c) {
    switch (c) {
        case LocusClass::Complex: return "complex";
        case LocusClass::LeviFlat: return "Levi-flat";
        case LocusClass::TotallyReal: return "totally-real";
        case LocusClass::CRSingular: return "CR-singular";
        case LocusClass::MixedOrUnknown: return "mixed/unknown";
    }
    return "mixed/unknown";
}

LocusDescription cr_singular_locus(const ManifoldSpec& m) {
    const RingPtr& ring = m.ring();
    LocusDescription out;
    if (m.kind() == ManifoldKind::Graph) {
        int w_bar = ring->var(m.w_slot()).mate;
        std::vector<Polynomial> gens;
        for (int k : slots_with_role(ring, VarRole::Antiholomorphic)) {
            if (k == w_bar) continue;
            push_unique(gens, m.rho().wirtinger(k));
        }
        if (gens.empty()) throw std::domain_error("not generic at any point");
        out.equations = conj_close(gens);
        return out;
    }

    std::vector<int> anti = slots_with_role(ring, VarRole::Antiholomorphic);
    const std::size_t d = m.codim(), n = anti.size();
    if (d > n) throw std::domain_error("not generic at any point");
    std::vector<std::vector<Polynomial>> wirt(d);
    for (std::size_t j = 0; j < d; ++j)
        for (int k : anti) wirt[j].push_back(m.equations()[j].wirtinger(k));

    std::vector<Polynomial> minors;
    std::vector<std::size_t> cols(d);
    // enumerate size-d column subsets
    for (std::size_t j = 0; j < d; ++j) cols[j] = j;
    while (true) {
        std::vector<std::vector<Polynomial>> sub(d, std::vector<Polynomial>());
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) sub[i].push_back(wirt[i][cols[j]]);
        push_unique(minors, poly_determinant(sub));
        // next combination
        std::size_t i = d;
        while (i-- > 0) {
            if (cols[i] + (d - i) < n) {
                ++cols[i];
                for (std::size_t j = i + 1; j < d; ++j) cols[j] = cols[j - 1] + 1;
                break;
            }
            if (i == 0) {
                i = d + 1;
                break;
            }
        }
        if (i == d + 1 || d == 0) break;
    }

    if (!minors.empty()) {
        // discard the case where every minor dies on M
        Complexification cx = complexify_ring(ring);
        std::vector<Polynomial> ideal_gens;
        for (const auto& g : m.equations()) ideal_gens.push_back(cx.to_doubled(g));
        auto gb = groebner_basis(ideal_gens, MonomialOrder::grevlex());
        bool some_alive = false;
        for (const auto& mi : minors)
            if (!normal_form(cx.to_doubled(mi), gb, MonomialOrder::grevlex()).is_zero())
                some_alive = true;
        if (!some_alive) minors.clear();
    }
    if (minors.empty()) throw std::domain_error("not generic at any point");
    out.equations = conj_close(minors);
    return out;
}

PointClassification classify_point(const ManifoldSpec& m, const LocusDescription& locus,
                                   const Point& p, const std::vector<Point>& witnesses) {
    if (!m.contains(p) || !on_all(locus.equations, p))
        throw std::invalid_argument("classify: point is not on the locus");

    std::vector<Polynomial> system = locus.equations;
    for (const auto& g : m.equations()) push_unique(system, g);
    system = conj_close(system);

    TangentData at_p = tangent_data(system, p);
    PointClassification out;
    out.real_tangent_dim = at_p.real_dim;
    out.cr_dim = at_p.cr_dim;
    out.complex_point = at_p.complex_point;
    out.totally_real = at_p.totally_real;

    bool rank_constant = true;
    bool cr_jump = false;
    for (const auto& w : witnesses) {
        if (!m.contains(w) || !on_all(locus.equations, w))
            throw std::invalid_argument("classify: witness is not on the locus");
        TangentData at_w = tangent_data(system, w);
        if (at_w.rank > at_p.rank)
            throw std::domain_error("classify: point is singular on the locus");
        if (at_w.rank != at_p.rank) rank_constant = false;
        if (at_w.cr_dim != at_p.cr_dim) cr_jump = true;
    }
    out.smooth_across_witnesses = !witnesses.empty() && rank_constant;

    if (cr_jump) {
        out.label = LocusClass::CRSingular;
        return out;
    }
    if (out.complex_point && out.real_tangent_dim > 0) {
        out.label = LocusClass::Complex;
        return out;
    }
    if (out.totally_real) {
        out.label = LocusClass::TotallyReal;
        return out;
    }
    auto leaves = cylinder_foliation_rank(system, m.ring());
    if (leaves && *leaves == out.cr_dim && out.cr_dim > 0) {
        out.leviflat_certified = true;
        out.label = LocusClass::LeviFlat;
        return out;
    }
    out.label = LocusClass::MixedOrUnknown;
    return out;
}

void apply_classification(LocusDescription& locus, const ManifoldSpec& m, const Point& p,
                          const std::vector<Point>& witnesses) {
    PointClassification c = classify_point(m, locus, p, witnesses);
    locus.sampled_point = p;
    locus.dim_real_at_sampled_point = c.real_tangent_dim;
    locus.cr_dim_at_sampled_point = c.cr_dim;
    locus.classification = c.label;
    locus.smoothness_checked = c.smooth_across_witnesses;
}

std::optional<std::vector<std::vector<Polynomial>>> monomial_branches(
    const std::vector<Polynomial>& equations) {
    if (equations.empty()) return std::nullopt;
    const RingPtr& ring = equations.front().ring();
    std::vector<std::vector<int>> factor_sets;
    for (const auto& e : equations) {
        if (e.is_zero()) continue;
        if (e.term_count() != 1 || e.degree() < 1) return std::nullopt;
        std::vector<int> factors;
        const Monomial& mono = e.terms().begin()->first;
        for (std::size_t s = 0; s < mono.size(); ++s)
            if (mono[s] > 0) factors.push_back(static_cast<int>(s));
        factor_sets.push_back(std::move(factors));
    }
    if (factor_sets.empty()) return std::nullopt;

    std::set<std::set<int>> branches = {{}};
    for (const auto& factors : factor_sets) {
        std::set<std::set<int>> next;
        for (const auto& b : branches)
            for (int s : factors) {
                std::set<int> nb = b;
                nb.insert(s);
                int mate = ring->conj_of(s);
                if (mate >= 0) nb.insert(mate);
                next.insert(std::move(nb));
            }
        branches = std::move(next);
    }

    std::vector<std::set<int>> minimal;
    for (const auto& b : branches) {
        bool absorbed = false;
        for (const auto& a : branches)
            if (a != b && std::includes(b.begin(), b.end(), a.begin(), a.end())) absorbed = true;
        if (!absorbed) minimal.push_back(b);
    }

    std::vector<std::vector<Polynomial>> out;
    for (const auto& b : minimal) {
        std::vector<Polynomial> eqs;
        for (int s : b) eqs.push_back(Polynomial::variable(ring, s));
        out.push_back(std::move(eqs));
    }
    return out;
}

std::vector<Point> find_rational_points(const std::vector<Polynomial>& equations,
                                        const RingPtr& ring, std::mt19937_64& rng, int count,
                                        int budget) {
    Realification rf = realify_ring(ring);
    std::vector<Polynomial> base;
    for (const auto& e : equations) {
        auto [re, im] = rf.split(e);
        push_unique(base, re);
        push_unique(base, im);
    }
    for (const auto& b : base)
        if (b.is_constant() && !b.is_zero()) return {};

    const RingPtr& rr = rf.real_ring;
    static const std::vector<Rational> pool = {
        Rational(0),          Rational(1),          Rational(-1),        Rational(2),
        Rational(-2),         make_rational(1, 2),  make_rational(-1, 2), Rational(3),
        Rational(-3),         make_rational(1, 3),  make_rational(-1, 3)};
    std::uniform_int_distribution<std::size_t> pool_pick(0, pool.size() - 1);

    std::vector<Point> points;
    std::vector<std::vector<GaussianRational>> seen;

    for (int attempt = 0; attempt < budget && static_cast<int>(points.size()) < count; ++attempt) {
        std::vector<std::optional<GaussianRational>> assigned(rr->size());
        std::vector<Polynomial> sys = base;
        bool dead = false;

        for (std::size_t iter = 0; iter < 4 * rr->size() + 4 && !dead; ++iter) {
            // substitute current assignments
            std::vector<std::optional<Polynomial>> im(rr->size());
            for (std::size_t s = 0; s < rr->size(); ++s)
                im[s] = assigned[s] ? Polynomial::constant(rr, *assigned[s])
                                    : Polynomial::variable(rr, static_cast<int>(s));
            std::vector<Polynomial> cur;
            for (const auto& e : sys) {
                Polynomial r = e.substitute(im, rr);
                if (r.is_zero()) continue;
                if (r.is_constant()) {
                    dead = true;
                    break;
                }
                cur.push_back(std::move(r));
            }
            if (dead) break;
            sys = std::move(cur);
            if (sys.empty()) break;

            // solve an equation that pins down a single variable
            bool solved = false;
            for (const auto& e : sys) {
                std::vector<int> occ;
                for (std::size_t s = 0; s < rr->size(); ++s)
                    if (!assigned[s] && e.degree_in(static_cast<int>(s)) > 0)
                        occ.push_back(static_cast<int>(s));
                if (occ.size() != 1) continue;
                int v = occ[0];
                if (e.degree_in(v) == 1) {
                    Polynomial c = e.wirtinger(v);
                    Polynomial k = e - Polynomial::variable(rr, v) * c;
                    if (c.is_constant() && k.is_constant()) {
                        assigned[static_cast<std::size_t>(v)] =
                            -(k.constant_term() / c.constant_term());
                        solved = true;
                        break;
                    }
                } else if (e.term_count() == 1) {
                    assigned[static_cast<std::size_t>(v)] = GaussianRational(0);
                    solved = true;
                    break;
                }
            }
            if (solved) continue;

            // otherwise guess one occurring variable
            std::vector<int> occurring;
            for (std::size_t s = 0; s < rr->size(); ++s) {
                if (assigned[s]) continue;
                for (const auto& e : sys)
                    if (e.degree_in(static_cast<int>(s)) > 0) {
                        occurring.push_back(static_cast<int>(s));
                        break;
                    }
            }
            if (occurring.empty()) break;
            std::uniform_int_distribution<std::size_t> var_pick(0, occurring.size() - 1);
            assigned[static_cast<std::size_t>(occurring[var_pick(rng)])] =
                GaussianRational(pool[pool_pick(rng)]);
        }
        if (dead || !sys.empty()) continue;

        for (std::size_t s = 0; s < rr->size(); ++s)
            if (!assigned[s]) assigned[s] = GaussianRational(pool[pool_pick(rng)]);

        Point pt(ring);
        std::vector<GaussianRational> sig;
        for (std::size_t s = 0; s < ring->size(); ++s) {
            const Variable& v = ring->var(static_cast<int>(s));
            if (v.role == VarRole::Antiholomorphic) continue;
            GaussianRational re = *assigned[static_cast<std::size_t>(rf.re_slot[s])];
            GaussianRational value = re;
            if (v.role == VarRole::Holomorphic) {
                GaussianRational imv = *assigned[static_cast<std::size_t>(rf.im_slot[s])];
                value = re + GaussianRational::i() * imv;
            }
            pt.set(static_cast<int>(s), value);
            sig.push_back(value);
        }
        if (!on_all(equations, pt)) continue;
        bool duplicate = false;
        for (const auto& old : seen)
            if (old == sig) duplicate = true;
        if (duplicate) continue;
        seen.push_back(std::move(sig));
        points.push_back(std::move(pt));
    }
    return points;
}

}  // namespace crsing
