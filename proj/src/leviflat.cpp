#include "crsing/leviflat.hpp"

#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "crsing/finiteness.hpp"
#include "crsing/ideal.hpp"
#include "crsing/linalg.hpp"

namespace crsing {

namespace {

// Holomorphic slots of a pure-complex ring, in declaration order.
std::vector<int> graph_holo_slots(const RingPtr& ring, const char* who) {
    if (!ring) throw std::invalid_argument(std::string(who) + ": zero input");
    std::vector<int> holo;
    for (std::size_t i = 0; i < ring->size(); ++i) {
        VarRole role = ring->var(static_cast<int>(i)).role;
        if (role == VarRole::Real)
            throw std::invalid_argument(std::string(who) + ": ring has a real slot");
        if (role == VarRole::Holomorphic) {
            if (ring->conj_of(static_cast<int>(i)) < 0)
                throw std::invalid_argument(std::string(who) +
                                            ": ring must pair each variable with a conjugate");
            holo.push_back(static_cast<int>(i));
        }
    }
    return holo;
}

std::vector<int> checked_graph_slots(const Polynomial& rho, const char* who) {
    std::vector<int> holo = graph_holo_slots(rho.ring(), who);
    if (holo.size() < 2)
        throw std::invalid_argument(std::string(who) + ": needs at least two complex variables");
    auto ord = rho.order_of_vanishing();
    if (ord.kind == VanishingOrder::FINITE && ord.value < 2)
        throw std::invalid_argument(std::string(who) + ": rho must vanish to order two");
    return holo;
}

// Name not already declared in the ring, preferring `want`.
std::string fresh_name(const RingPtr& ring, std::string want) {
    while (ring->find(want) >= 0) want += "_";
    return want;
}

bool holomorphic_in(const Polynomial& p, const std::vector<int>& holo_slots) {
    if (p.is_zero()) return true;
    for (int s : holo_slots)
        if (p.degree_in(p.ring()->conj_of(s)) > 0) return false;
    return true;
}

// Ordinal of the complex variable owning this slot (holo or anti).
int var_ordinal(const RingPtr& ring, int slot) {
    int v = 0;
    for (int i = 0; i < slot; ++i)
        if (ring->var(i).role != VarRole::Antiholomorphic) ++v;
    if (ring->var(slot).role == VarRole::Antiholomorphic) --v;
    return v;
}

Polynomial shift_into(const Polynomial& p, const RingPtr& big, std::size_t offset) {
    Polynomial out(big);
    for (const auto& [m, c] : p.terms()) {
        Monomial mm(big->size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) mm[offset + i] = m[i];
        out.add_term(mm, c);
    }
    return out;
}

}  // namespace

LeafFamily LeafFamily::make(RingPtr ring, std::vector<int> leaf_slots,
                            std::vector<int> parameter_slots, std::vector<Polynomial> map) {
    if (!ring) throw std::invalid_argument("leaf family: zero ring");
    if (leaf_slots.empty()) throw std::invalid_argument("leaf family: no leaf coordinates");
    if (map.empty()) throw std::invalid_argument("leaf family: empty parametrization");
    std::set<int> seen;
    for (const auto* slots : {&leaf_slots, &parameter_slots})
        for (int s : *slots) {
            if (s < 0 || static_cast<std::size_t>(s) >= ring->size() ||
                ring->var(s).role != VarRole::Holomorphic)
                throw std::invalid_argument("leaf family: slot is not a holomorphic variable");
            if (!seen.insert(s).second)
                throw std::invalid_argument("leaf family: repeated slot");
        }
    for (const auto& comp : map) {
        if (!comp.ring() || (!comp.is_zero() && !comp.ring()->same_as(*ring)))
            throw std::invalid_argument("leaf family: component outside the family ring");
        if (!holomorphic_in(comp, leaf_slots))
            throw std::invalid_argument(
                "leaf family: parametrization is not holomorphic in the leaf coordinates");
    }
    LeafFamily f;
    f.ring = std::move(ring);
    f.leaf_slots = std::move(leaf_slots);
    f.parameter_slots = std::move(parameter_slots);
    f.map = std::move(map);
    f.leaf_dim = static_cast<int>(f.leaf_slots.size());
    return f;
}

GraphFoliation is_leviflat_graph(const Polynomial& rho) {
    std::vector<int> holo = checked_graph_slots(rho, "graph foliation");
    RingPtr ring = rho.ring();
    const std::size_t m = holo.size();

    GraphFoliation g;
    g.singular_equation = Polynomial(ring);
    for (std::size_t k = 0; k + 1 < m; ++k)
        if (rho.degree_in(ring->conj_of(holo[k])) > 0) {
            g.verdict = FoliationVerdict::NotRecognized;
            return g;
        }
    g.singular_equation = rho.wirtinger(ring->conj_of(holo[m - 1]));
    if (g.singular_equation.is_zero()) {
        g.verdict = FoliationVerdict::ComplexGraph;
        return g;
    }
    g.verdict = FoliationVerdict::Foliated;

    // Leaves: fix z_m = t; the w component is rho itself, already free of
    // the other conjugates.
    std::vector<Polynomial> map;
    for (std::size_t k = 0; k < m; ++k) map.push_back(Polynomial::variable(ring, holo[k]));
    map.push_back(rho);
    g.leaves = LeafFamily::make(ring, std::vector<int>(holo.begin(), holo.end() - 1),
                                {holo[m - 1]}, std::move(map));

    // Chart from R^2 x C^{m-1}: the parameter opens up as x + i y.
    std::vector<Ring::Decl> decls{{fresh_name(ring, "x"), false}, {fresh_name(ring, "y"), false}};
    for (std::size_t k = 0; k + 1 < m; ++k) decls.push_back({ring->var(holo[k]).name, true});
    g.chart_ring = Ring::make(decls);
    Polynomial horizontal = Polynomial::variable(g.chart_ring, 0) +
                            Polynomial::variable(g.chart_ring, 1).scaled(GaussianRational::i());
    std::vector<std::optional<Polynomial>> images(ring->size());
    for (std::size_t k = 0; k + 1 < m; ++k) {
        int chart_holo = 2 + 2 * static_cast<int>(k);
        images[static_cast<std::size_t>(holo[k])] = Polynomial::variable(g.chart_ring, chart_holo);
        images[static_cast<std::size_t>(ring->conj_of(holo[k]))] =
            Polynomial::variable(g.chart_ring, chart_holo + 1);
    }
    images[static_cast<std::size_t>(holo[m - 1])] = horizontal;
    images[static_cast<std::size_t>(ring->conj_of(holo[m - 1]))] = horizontal.conj();
    for (std::size_t k = 0; k + 1 < m; ++k)
        g.chart.push_back(*images[static_cast<std::size_t>(holo[k])]);
    g.chart.push_back(horizontal);
    g.chart.push_back(rho.substitute(images, g.chart_ring));
    return g;
}

Polynomial chart_singular_equation(const GraphFoliation& g) {
    if (g.verdict != FoliationVerdict::Foliated)
        throw std::invalid_argument("chart equation: the graph is not foliated");
    // Promote the chart to independent complex variables and differentiate.
    std::vector<std::string> names;
    std::vector<int> keep;
    for (std::size_t i = 0; i < g.chart_ring->size(); ++i) {
        const Variable& v = g.chart_ring->var(static_cast<int>(i));
        if (v.role == VarRole::Antiholomorphic) continue;
        names.push_back(v.name);
        keep.push_back(static_cast<int>(i));
    }
    RingPtr plain = Ring::make_plain(names);
    std::vector<std::vector<Polynomial>> jac;
    for (const auto& comp : g.chart) {
        Polynomial flat = comp.restricted_to(keep, plain);
        std::vector<Polynomial> row;
        for (std::size_t j = 0; j < plain->size(); ++j)
            row.push_back(flat.wirtinger(static_cast<int>(j)));
        jac.push_back(std::move(row));
    }
    return poly_determinant(jac);
}

LeafIntersection leaf_singular_intersection(const std::vector<Polynomial>& singular_equations,
                                            const LeafFamily& family,
                                            const std::vector<GaussianRational>& parameter) {
    if (parameter.size() != family.parameter_slots.size())
        throw std::invalid_argument("leaf intersection: one value per parameter");

    // Instantiate the family at the parameter values.
    std::vector<std::optional<Polynomial>> fix(family.ring->size());
    for (std::size_t i = 0; i < family.ring->size(); ++i)
        fix[i] = Polynomial::variable(family.ring, static_cast<int>(i));
    for (std::size_t p = 0; p < parameter.size(); ++p) {
        int s = family.parameter_slots[p];
        fix[static_cast<std::size_t>(s)] = Polynomial::constant(family.ring, parameter[p]);
        fix[static_cast<std::size_t>(family.ring->conj_of(s))] =
            Polynomial::constant(family.ring, parameter[p].conj());
    }
    std::vector<Polynomial> instance;
    for (const auto& comp : family.map) instance.push_back(comp.substitute(fix, family.ring));

    LeafIntersection out;
    out.leaf_dim = family.leaf_dim;
    std::vector<std::string> names;
    for (int s : family.leaf_slots) names.push_back(family.ring->var(s).name);
    RingPtr leaf_ring = Ring::make_plain(names);

    for (const auto& eq : singular_equations) {
        if (eq.is_zero()) continue;
        const RingPtr& er = eq.ring();
        std::vector<std::optional<Polynomial>> images(er->size());
        for (std::size_t s = 0; s < er->size(); ++s) {
            if (eq.degree_in(static_cast<int>(s)) == 0) continue;
            int v = var_ordinal(er, static_cast<int>(s));
            if (static_cast<std::size_t>(v) >= instance.size())
                throw std::invalid_argument(
                    "leaf intersection: equation uses a coordinate beyond the family");
            images[s] = er->var(static_cast<int>(s)).role == VarRole::Antiholomorphic
                            ? instance[static_cast<std::size_t>(v)].conj()
                            : instance[static_cast<std::size_t>(v)];
        }
        Polynomial pulled = eq.substitute(images, family.ring);
        if (pulled.is_zero()) continue;
        if (!holomorphic_in(pulled, family.leaf_slots)) {
            // At a point of the leaf the conjugate equation vanishes exactly
            // when the equation does, so a pure conjugate can stand in.
            Polynomial flipped = pulled.conj();
            if (!holomorphic_in(flipped, family.leaf_slots))
                throw std::invalid_argument(
                    "leaf intersection: pullback mixes a leaf coordinate with its conjugate");
            pulled = flipped;
        }
        out.equations.push_back(pulled.restricted_to(family.leaf_slots, leaf_ring));
    }

    if (out.equations.empty()) {
        out.kind = LeafMeet::FullLeaf;
        out.dimension = family.leaf_dim;
        return out;
    }
    out.basis = groebner_basis(out.equations, MonomialOrder::grevlex());
    int dim = ideal_dimension(out.basis);
    if (dim == -1) {
        out.kind = LeafMeet::Empty;
        out.dimension = -1;
    } else if (dim == family.leaf_dim - 1) {
        out.kind = LeafMeet::Hypersurface;
        out.dimension = dim;
    } else {
        throw theorem_violation("leaf intersection has dimension " + std::to_string(dim) +
                                " in a leaf of dimension " + std::to_string(family.leaf_dim) +
                                "; a foliated image admits only empty, full, or one less");
    }
    return out;
}

LeafGridProbe leaf_grid_probe(const std::vector<Polynomial>& singular_equations,
                              const LeafFamily& family, int per_axis, const Rational& radius) {
    if (per_axis < 1) throw std::invalid_argument("leaf grid: need at least one point per axis");
    if (sgn(radius) <= 0) throw std::invalid_argument("leaf grid: radius must be positive");
    std::vector<Rational> offsets;
    if (per_axis == 1) {
        offsets.push_back(0);
    } else {
        Rational step = radius * 2 / (per_axis - 1);
        for (int k = 0; k < per_axis; ++k) offsets.push_back(-radius + step * k);
    }

    const std::size_t axes = 2 * family.parameter_slots.size();
    std::vector<std::size_t> odo(axes, 0);
    LeafGridProbe probe;
    while (true) {
        std::vector<GaussianRational> parameter;
        for (std::size_t p = 0; p < family.parameter_slots.size(); ++p)
            parameter.emplace_back(offsets[odo[2 * p]], offsets[odo[2 * p + 1]]);
        LeafIntersection hit = leaf_singular_intersection(singular_equations, family, parameter);
        ++probe.leaves;
        switch (hit.kind) {
            case LeafMeet::Empty: ++probe.empty; break;
            case LeafMeet::Hypersurface: ++probe.hypersurface; break;
            case LeafMeet::FullLeaf: ++probe.full_leaf; break;
        }
        std::size_t i = 0;
        for (; i < axes; ++i) {
            if (++odo[i] < offsets.size()) break;
            odo[i] = 0;
        }
        if (i == axes) break;
    }
    probe.lower_dim_leaves_all_meet = !(probe.hypersurface > 0 && probe.empty > 0);
    return probe;
}

DimensionBound dimension_obstruction(const Polynomial& rho, bool assert_leviflat) {
    std::vector<int> holo = checked_graph_slots(rho, "dimension bound");
    GraphFoliation g = is_leviflat_graph(rho);
    if (g.verdict == FoliationVerdict::ComplexGraph)
        throw std::domain_error("dimension bound: the graph is complex analytic");
    if (g.verdict == FoliationVerdict::NotRecognized && !assert_leviflat)
        throw std::invalid_argument(
            "dimension bound: the graph test does not certify a Levi-flat image; assert it to "
            "proceed");

    RingPtr ring = rho.ring();
    std::vector<Polynomial> eqs;
    for (int s : holo) {
        Polynomial d = rho.wirtinger(ring->conj_of(s));
        if (d.is_zero()) continue;
        eqs.push_back(d);
        Polynomial dc = d.conj();
        if (dc != d) eqs.push_back(dc);
    }

    DimensionBound out;
    out.flatness_assumed = g.verdict != FoliationVerdict::Foliated;
    out.required = 2 * (static_cast<int>(holo.size()) - 1);
    out.bound = ideal_dimension(eqs);
    out.verdict = out.bound < out.required ? ImageVerdict::NotACRSingularImage
                                           : ImageVerdict::Consistent;
    return out;
}

namespace {

bool sheet_contains_image(const Polynomial& sheet, const ManifoldSpec& image) {
    if (image.kind() == ManifoldKind::Graph) {
        // On a graph w is solved for, so vanishing on the manifold is exactly
        // vanishing of the substituted polynomial.
        const RingPtr& ring = image.ring();
        std::vector<std::optional<Polynomial>> images(ring->size());
        for (std::size_t i = 0; i < ring->size(); ++i)
            images[i] = Polynomial::variable(ring, static_cast<int>(i));
        images[static_cast<std::size_t>(image.w_slot())] = image.rho();
        images[static_cast<std::size_t>(ring->conj_of(image.w_slot()))] = image.rho().conj();
        return sheet.substitute(images, ring).is_zero();
    }
    // Membership certifies containment; failure only means unverified.
    std::vector<Polynomial> basis = groebner_basis(image.equations(), MonomialOrder::grevlex());
    return normal_form(sheet, basis, MonomialOrder::grevlex()).is_zero();
}

}  // namespace

HypervarietyFamily leviflat_hypervarieties(const HoloMap& f,
                                           const std::vector<Polynomial>& source_defining,
                                           const RingPtr& target,
                                           const std::vector<std::vector<Rational>>& directions,
                                           const std::optional<ManifoldSpec>& image) {
    std::vector<int> tgt_holo = graph_holo_slots(target, "hypervarieties");
    if (tgt_holo.size() != f.dim())
        throw std::invalid_argument("hypervarieties: target dimension mismatch");
    if (source_defining.empty())
        throw std::invalid_argument("hypervarieties: no source defining functions");
    for (const auto& r : source_defining) {
        if (!r.ring() || !r.ring()->same_as(*f.source))
            throw std::invalid_argument("hypervarieties: defining function outside the source ring");
        if (!r.is_real_valued())
            throw std::invalid_argument("hypervarieties: defining functions must be real-valued");
    }
    if (directions.empty()) throw std::invalid_argument("hypervarieties: no directions");
    for (const auto& v : directions)
        if (v.size() != source_defining.size())
            throw std::invalid_argument("hypervarieties: direction length mismatch");
    if (image && !image->ring()->same_as(*target))
        throw std::invalid_argument("hypervarieties: image manifold lives in a different ring");

    HypervarietyFamily out;
    out.multiplicity = map_multiplicity(f);
    if (out.multiplicity.kind != VanishingOrder::FINITE)
        throw std::domain_error("hypervarieties: the map is not certified finite");

    Matrix dm;
    for (const auto& v : directions) {
        Row row;
        for (const auto& c : v) row.emplace_back(c);
        dm.push_back(std::move(row));
    }
    out.directions_independent = exact_rank(dm) == static_cast<int>(directions.size());

    // The doubled picture: source and target conjugates as fresh variables.
    const std::size_t src_n = f.source->size();
    std::vector<std::string> names;
    std::set<std::string> used;
    for (std::size_t i = 0; i < src_n; ++i) {
        std::string n = f.source->display_name(static_cast<int>(i));
        while (used.count(n)) n += "_";
        used.insert(n);
        names.push_back(n);
    }
    for (std::size_t i = 0; i < target->size(); ++i) {
        std::string n = "@" + target->display_name(static_cast<int>(i));
        while (used.count(n)) n += "_";
        used.insert(n);
        names.push_back(n);
    }
    RingPtr big = Ring::make_plain(names);

    std::vector<Polynomial> graph;
    for (std::size_t j = 0; j < f.dim(); ++j) {
        int h = tgt_holo[j];
        int a = target->conj_of(h);
        graph.push_back(Polynomial::variable(big, static_cast<int>(src_n) + h) -
                        shift_into(f.components[j], big, 0));
        graph.push_back(Polynomial::variable(big, static_cast<int>(src_n) + a) -
                        shift_into(f.components[j].conj(), big, 0));
    }
    std::vector<int> drop(src_n);
    std::iota(drop.begin(), drop.end(), 0);
    std::vector<int> keep(target->size());
    std::iota(keep.begin(), keep.end(), 0);

    for (const auto& v : directions) {
        Polynomial combo(f.source);
        for (std::size_t j = 0; j < v.size(); ++j)
            combo += source_defining[j].scaled(GaussianRational(v[j]));
        if (combo.is_zero())
            throw std::invalid_argument("hypervarieties: direction selects the zero combination");

        std::vector<Polynomial> gens = graph;
        gens.push_back(shift_into(combo, big, 0));
        EliminationResult er = eliminate(gens, drop);
        if (er.gens.empty())
            throw std::domain_error("hypervarieties: the pushforward imposed no relation");

        const Polynomial* pick = &er.gens.front();
        for (const auto& cand : er.gens) {
            if (cand.is_zero()) continue;
            auto key = [](const Polynomial& p) {
                return std::make_tuple(p.degree(), p.term_count(), p.str());
            };
            if (pick->is_zero() || key(cand) < key(*pick)) pick = &cand;
        }
        Polynomial h = pick->restricted_to(keep, target);
        Polynomial sheet = h + h.conj();
        if (sheet.is_zero()) sheet = (h - h.conj()).scaled(GaussianRational(0, -1));

        SheetReport rep;
        rep.direction = v;
        rep.sheet = sheet;
        rep.self_conjugate = sheet == sheet.conj();
        if (image) rep.contains_image = sheet_contains_image(sheet, *image);
        out.sheets.push_back(std::move(rep));
    }
    return out;
}

}  // namespace crsing
