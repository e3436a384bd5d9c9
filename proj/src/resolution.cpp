#include "crsing/resolution.hpp"

#include <stdexcept>

#include "crsing/linalg.hpp"
#include "crsing/series.hpp"

namespace crsing {

namespace {

void check_data_ring(const RingPtr& ring) {
    if (!ring || ring->size() < 2 || ring->var(0).role != VarRole::Holomorphic ||
        ring->var(0).mate != 1)
        throw std::invalid_argument("normal form: ring must start with one complex variable");
    for (std::size_t s = 2; s < ring->size(); ++s)
        if (ring->var(static_cast<int>(s)).role != VarRole::Real)
            throw std::invalid_argument("normal form: trailing variables must be real");
}

void check_order_two(const Polynomial& p, const char* who) {
    auto ord = p.order_of_vanishing();
    if (ord.kind == VanishingOrder::FINITE && ord.value < 2)
        throw std::invalid_argument(std::string(who) + " must vanish to order 2");
}

// r_alpha with z1 and x' set to zero: the harmonic tail in conj z1.
Polynomial antiholomorphic_part(const Polynomial& p, const RingPtr& ring) {
    std::vector<std::optional<Polynomial>> im(ring->size());
    im[0] = Polynomial(ring);
    im[1] = Polynomial::variable(ring, 1);
    for (std::size_t s = 2; s < ring->size(); ++s) im[s] = Polynomial(ring);
    return p.substitute(im, ring);
}

}  // namespace

NormalFormData NormalFormData::make(RingPtr ring, Polynomial rho, std::vector<Polynomial> r) {
    check_data_ring(ring);
    if (ring->size() != r.size() + 2)
        throw std::invalid_argument("normal form: one real slot per r_alpha expected");
    if (!rho.is_zero() && !rho.ring()->same_as(*ring))
        throw std::invalid_argument("normal form: rho lives in a different ring");
    check_order_two(rho, "normal form: rho");
    for (const auto& ra : r) {
        if (!ra.is_zero() && !ra.ring()->same_as(*ring))
            throw std::invalid_argument("normal form: r_alpha lives in a different ring");
        if (!ra.is_real_valued())
            throw std::invalid_argument("normal form: r_alpha must be real-valued");
        check_order_two(ra, "normal form: r_alpha");
    }
    NormalFormData d;
    d.ring = std::move(ring);
    d.rho = rho.is_zero() ? Polynomial(d.ring) : std::move(rho);
    d.r = std::move(r);
    for (auto& ra : d.r)
        if (ra.is_zero()) ra = Polynomial(d.ring);
    return d;
}

bool antiholomorphic_parts_vanish(const NormalFormData& d) {
    for (const auto& ra : d.r)
        if (!antiholomorphic_part(ra, d.ring).is_zero()) return false;
    return true;
}

NormalFormData shift_graph_coordinates(const NormalFormData& d, const std::vector<Polynomial>& h) {
    if (h.size() != d.r.size())
        throw std::invalid_argument("coordinate shift: one h_alpha per r_alpha expected");
    std::vector<Polynomial> hs;
    for (const auto& ha : h) {
        if (ha.is_zero()) {
            hs.push_back(Polynomial(d.ring));
            continue;
        }
        if (!ha.ring()->same_as(*d.ring))
            throw std::invalid_argument("coordinate shift: h lives in a different ring");
        for (std::size_t s = 1; s < d.ring->size(); ++s)
            if (ha.degree_in(static_cast<int>(s)) > 0)
                throw std::invalid_argument("coordinate shift: h must depend on z1 alone");
        check_order_two(ha, "coordinate shift: h");
        hs.push_back(ha);
    }

    // x_alpha expressed in the new coordinates picks up i (h - conj h)
    const GaussianRational I = GaussianRational::i();
    std::vector<std::optional<Polynomial>> im(d.ring->size());
    im[0] = Polynomial::variable(d.ring, 0);
    im[1] = Polynomial::variable(d.ring, 1);
    for (std::size_t s = 2; s < d.ring->size(); ++s) {
        const Polynomial& ha = hs[s - 2];
        im[s] = Polynomial::variable(d.ring, static_cast<int>(s)) +
                (ha - ha.conj()).scaled(I);
    }

    NormalFormData out;
    out.ring = d.ring;
    out.rho = d.rho.substitute(im, d.ring);
    for (std::size_t a = 0; a < d.r.size(); ++a)
        out.r.push_back(d.r[a].substitute(im, d.ring) - (hs[a] + hs[a].conj()));
    return out;
}

HarmonicElimination eliminate_harmonic_terms(const NormalFormData& d, int max_passes) {
    HarmonicElimination out;
    out.data = d;
    out.shift.assign(d.r.size(), Polynomial(d.ring));
    for (int pass = 0; pass < max_passes; ++pass) {
        std::vector<Polynomial> h;
        bool any = false;
        for (const auto& ra : out.data.r) {
            Polynomial tail = antiholomorphic_part(ra, d.ring);
            if (!tail.is_zero()) any = true;
            h.push_back(tail.conj());
        }
        if (!any) return out;
        out.data = shift_graph_coordinates(out.data, h);
        for (std::size_t a = 0; a < h.size(); ++a) out.shift[a] += h[a];
        ++out.passes;
    }
    out.residual = !antiholomorphic_parts_vanish(out.data);
    return out;
}

HoloMap HoloMap::make(RingPtr source, std::vector<Polynomial> components) {
    if (!source || source->size() == 0) throw std::invalid_argument("map: empty source ring");
    HoloMap f;
    for (std::size_t s = 0; s < source->size(); ++s)
        if (source->var(static_cast<int>(s)).role != VarRole::Antiholomorphic)
            f.coordinate_slots.push_back(static_cast<int>(s));
    if (components.size() != f.coordinate_slots.size())
        throw std::invalid_argument("map: one component per coordinate expected");
    for (const auto& c : components) {
        if (!c.is_zero() && !c.ring()->same_as(*source))
            throw std::invalid_argument("map: component in a different ring");
        if (!c.constant_term().is_zero())
            throw std::invalid_argument("map: components must vanish at the origin");
        for (std::size_t s = 0; s < source->size(); ++s)
            if (source->var(static_cast<int>(s)).role == VarRole::Antiholomorphic &&
                c.degree_in(static_cast<int>(s)) > 0)
                throw std::invalid_argument("map: components must be holomorphic");
    }
    f.source = std::move(source);
    f.components = std::move(components);
    for (auto& c : f.components)
        if (c.is_zero()) c = Polynomial(f.source);
    return f;
}

Polynomial HoloMap::jacobian() const {
    std::vector<std::vector<Polynomial>> rows;
    for (const auto& c : components) {
        std::vector<Polynomial> row;
        for (int s : coordinate_slots) row.push_back(c.wirtinger(s));
        rows.push_back(std::move(row));
    }
    return poly_determinant(rows);
}

std::vector<GaussianRational> HoloMap::apply(const Point& t) const {
    std::vector<GaussianRational> out;
    out.reserve(components.size());
    for (const auto& c : components) out.push_back(evaluate(c, t));
    return out;
}

Point target_point(const RingPtr& target, const std::vector<GaussianRational>& values) {
    Point p(target);
    std::size_t used = 0;
    for (std::size_t s = 0; s < target->size(); ++s) {
        if (target->var(static_cast<int>(s)).role == VarRole::Antiholomorphic) continue;
        if (used >= values.size()) throw std::invalid_argument("target point: missing values");
        p.set(static_cast<int>(s), values[used++]);
    }
    if (used != values.size()) throw std::invalid_argument("target point: extra values");
    return p;
}

HoloMap build_resolution_map(const NormalFormData& d) {
    if (!antiholomorphic_parts_vanish(d))
        throw std::invalid_argument("resolution map: harmonic terms not eliminated");
    const std::size_t n = d.n();
    std::vector<Ring::Decl> decls;
    for (std::size_t j = 1; j <= n; ++j) decls.push_back({"t" + std::to_string(j), false});
    RingPtr src = Ring::make(decls);

    const GaussianRational I = GaussianRational::i();
    Polynomial t1 = Polynomial::variable(src, 0);
    Polynomial tn = Polynomial::variable(src, static_cast<int>(n) - 1);
    std::vector<std::optional<Polynomial>> im(d.ring->size());
    im[0] = t1 + tn.scaled(I);
    im[1] = t1 - tn.scaled(I);
    for (std::size_t s = 2; s < d.ring->size(); ++s)
        im[s] = Polynomial::variable(src, static_cast<int>(s) - 1);

    std::vector<Polynomial> comps;
    comps.push_back(t1 + tn.scaled(I));
    for (std::size_t a = 0; a < d.r.size(); ++a)
        comps.push_back(Polynomial::variable(src, static_cast<int>(a) + 1) +
                        d.r[a].substitute(im, src).scaled(I));
    comps.push_back(d.rho.substitute(im, src));
    return HoloMap::make(src, comps);
}

int real_rank_at_origin(const HoloMap& f) {
    for (int s : f.coordinate_slots)
        if (f.source->var(s).role != VarRole::Real)
            throw std::invalid_argument("real rank: source must be a real ring");
    Point origin(f.source);
    Matrix rows;
    for (const auto& c : f.components) {
        Row re, imr;
        for (int s : f.coordinate_slots) {
            GaussianRational d = evaluate(c.wirtinger(s), origin);
            re.push_back(GaussianRational(d.re));
            imr.push_back(GaussianRational(d.im));
        }
        rows.push_back(std::move(re));
        rows.push_back(std::move(imr));
    }
    return exact_rank(rows);
}

PullbackLocus pullback_singular_locus(const HoloMap& f) {
    PullbackLocus out;
    out.jacobian = f.jacobian();
    if (out.jacobian.is_zero())
        throw std::domain_error("the Jacobian vanishes identically: the image is nowhere generic");
    out.ideal = {out.jacobian};
    return out;
}

Polynomial nonextendable_candidate(const HoloMap& f) {
    Polynomial j = f.jacobian();
    return j * j;
}

CandidateCheck verify_cr_candidate(const HoloMap& f, const ManifoldSpec& target,
                                   const std::vector<Point>& samples, int cap) {
    CandidateCheck out;
    out.passed = true;
    Polynomial jac = f.jacobian();
    Polynomial theta2 = jac * jac;
    const RingPtr& src = f.source;
    const RingPtr& tgt = target.ring();

    std::vector<int> anti;
    std::size_t tgt_coords = 0;
    for (std::size_t s = 0; s < tgt->size(); ++s) {
        if (tgt->var(static_cast<int>(s)).role == VarRole::Antiholomorphic)
            anti.push_back(static_cast<int>(s));
        else
            ++tgt_coords;
    }
    if (tgt_coords != f.dim())
        throw std::invalid_argument("candidate check: target dimension mismatch");

    for (const auto& t0 : samples) {
        if (evaluate(jac, t0).is_zero())
            throw std::invalid_argument("candidate check: sample lies over the singular locus");
        ++out.points_checked;

        auto q_values = f.apply(t0);
        Point q = target_point(tgt, q_values);
        if (!target.contains(q)) {
            out.passed = false;
            continue;
        }
        int expected = static_cast<int>(target.ambient_dim()) - static_cast<int>(target.codim());
        if (cr_tangent_dim(target, q) != expected) out.passed = false;

        // recenter the map at the sample
        std::vector<std::optional<Polynomial>> shift(src->size());
        for (std::size_t s = 0; s < src->size(); ++s)
            shift[s] = Polynomial::variable(src, static_cast<int>(s)) +
                       Polynomial::constant(src, t0.value(static_cast<int>(s)));
        std::vector<Polynomial> local;
        for (const auto& c : f.components) {
            Polynomial sc = c.substitute(shift, src);
            local.push_back(sc - Polynomial::constant(src, sc.constant_term()));
        }
        Polynomial psi = theta2.substitute(shift, src);

        auto inverse = formal_inverse(local, f.coordinate_slots, cap);
        Polynomial phi = compose_jets({psi}, f.coordinate_slots, inverse, cap)[0];
        Polynomial back = compose_jets({phi}, f.coordinate_slots, local, cap)[0];
        if (back != psi.truncated(cap)) out.passed = false;

        // the pushed-forward jet is holomorphic in the target coordinates,
        // so the antiholomorphic tangent basis must annihilate it
        std::vector<std::optional<Polynomial>> into_target(src->size());
        std::size_t holo_index = 0;
        for (std::size_t s = 0; s < tgt->size(); ++s) {
            if (tgt->var(static_cast<int>(s)).role == VarRole::Antiholomorphic) continue;
            into_target[static_cast<std::size_t>(f.coordinate_slots[holo_index])] =
                Polynomial::variable(tgt, static_cast<int>(s)) -
                Polynomial::constant(tgt, q.value(static_cast<int>(s)));
            ++holo_index;
        }
        Polynomial phi_target = phi.substitute(into_target, tgt);

        Matrix rows;
        for (const auto& g : target.equations()) {
            Row row;
            for (int k : anti) row.push_back(evaluate(g.wirtinger(k), q));
            rows.push_back(std::move(row));
        }
        for (const auto& v : kernel_basis(rows)) {
            GaussianRational lphi;
            for (std::size_t k = 0; k < anti.size(); ++k)
                lphi += v[k] * evaluate(phi_target.wirtinger(anti[k]), q);
            if (!lphi.is_zero()) out.passed = false;
        }
    }
    return out;
}

std::vector<Point> sample_resolution_points(const HoloMap& f, std::mt19937_64& rng, int count) {
    static const std::vector<Rational> pool = {
        Rational(1),         Rational(-1),         Rational(2),         Rational(-2),
        make_rational(1, 2), make_rational(-1, 2), make_rational(1, 3), Rational(3),
        Rational(0)};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    Polynomial jac = f.jacobian();

    std::vector<Point> out;
    std::vector<std::vector<GaussianRational>> seen;
    for (int attempt = 0; attempt < 40 * count && static_cast<int>(out.size()) < count;
         ++attempt) {
        Point t(f.source);
        std::vector<GaussianRational> sig;
        for (int s : f.coordinate_slots) {
            GaussianRational v(pool[pick(rng)]);
            if (f.source->var(s).role == VarRole::Holomorphic)
                v += GaussianRational::i() * GaussianRational(pool[pick(rng)]);
            t.set(s, v);
            sig.push_back(v);
        }
        if (evaluate(jac, t).is_zero()) continue;
        bool duplicate = false;
        for (const auto& old : seen)
            if (old == sig) duplicate = true;
        if (duplicate) continue;
        seen.push_back(std::move(sig));
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace crsing
