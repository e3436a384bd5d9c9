#include "crsing/invariants.hpp"

#include <random>
#include <stdexcept>

#include "crsing/series.hpp"

namespace crsing {

namespace {

// rho must be a surface germ in the leading complex pair of its ring.
void check_surface_input(const Polynomial& rho) {
    if (rho.is_zero()) return;
    const RingPtr& r = rho.ring();
    if (r->size() < 2 || r->var(0).role != VarRole::Holomorphic || r->var(0).mate != 1)
        throw std::invalid_argument("surface input: ring must start with one complex variable");
    for (std::size_t s = 2; s < r->size(); ++s)
        if (rho.degree_in(static_cast<int>(s)) > 0)
            throw std::invalid_argument("surface input: only the first complex pair may occur");
}

GaussianRational quad_coefficient(const Polynomial& p, int dz, int dzbar) {
    for (const auto& [m, c] : p.terms())
        if (m[0] == dz && m[1] == dzbar && total_degree(m) == dz + dzbar) return c;
    return GaussianRational();
}

Polynomial pair_monomial(const RingPtr& r, int dz, int dzbar, const GaussianRational& c) {
    Polynomial z = Polynomial::variable(r, 0), zb = Polynomial::variable(r, 1);
    return z.pow(dz) * zb.pow(dzbar) * Polynomial::constant(r, c);
}

std::optional<Rational> exact_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational out(rn, rd);
    out.canonicalize();
    return out;
}

// Antiholomorphic restriction rho(0, conj z).
Polynomial anti_restriction(const Polynomial& rho) {
    const RingPtr& r = rho.ring();
    std::vector<std::optional<Polynomial>> im(r->size());
    for (std::size_t s = 0; s < r->size(); ++s)
        im[s] = s == 1 ? Polynomial::variable(r, 1) : Polynomial(r);
    return rho.substitute(im, r);
}

NormalFormData surface_data(const Polynomial& rho) {
    RingPtr dr = Ring::make({{rho.ring()->var(0).name, true}});
    return NormalFormData::make(dr, rho.restricted_to({0, 1}, dr), {});
}

}  // namespace

std::string BishopChange::str() const {
    std::string s = "w -> (w - " + absorbed.str() + "*z^2)/" + graph_scale.str();
    if (!residue.is_zero() && !residue.is_real())
        s += ", z -> u*z with u^2 = " + residue.str() + "/|" + residue.str() + "|";
    s += ", then w -> w + gamma*z^2";
    return s;
}

BishopData bishop_invariant(const Polynomial& rho) {
    check_surface_input(rho);
    auto ord = rho.order_of_vanishing();
    if (rho.is_zero() || ord.kind != VanishingOrder::FINITE || ord.value < 2)
        throw std::invalid_argument("elliptic invariant: surface must vanish to order 2");

    GaussianRational alpha = quad_coefficient(rho, 2, 0);
    GaussianRational beta = quad_coefficient(rho, 1, 1);
    GaussianRational gp = quad_coefficient(rho, 0, 2);
    if (beta.is_zero() && gp.is_zero())
        throw std::invalid_argument(
            "elliptic invariant: quadratic part is holomorphic, not a surface invariant");

    const RingPtr& r = rho.ring();
    BishopData out;
    out.change.absorbed = alpha;
    if (beta.is_zero()) {
        out.infinite = true;
        out.gamma_sq = Rational(0);
        out.change.graph_scale = gp;
        out.change.residue = GaussianRational(1);
        out.normal_quadratic =
            pair_monomial(r, 2, 0, GaussianRational(1)) + pair_monomial(r, 0, 2, GaussianRational(1));
        return out;
    }

    GaussianRational mu = gp / beta;
    out.gamma_sq = mu.norm2();
    out.change.graph_scale = beta;
    out.change.residue = mu;
    out.gamma = exact_sqrt(out.gamma_sq);
    if (out.gamma) {
        GaussianRational g(*out.gamma);
        out.normal_quadratic =
            pair_monomial(r, 1, 1, GaussianRational(1)) + pair_monomial(r, 2, 0, g) +
            pair_monomial(r, 0, 2, g);
    }
    return out;
}

MoserData moser_invariant(const Polynomial& rho, std::uint64_t seed) {
    auto b = bishop_invariant(rho);
    if (b.infinite || sgn(b.gamma_sq) != 0)
        throw std::domain_error(
            "higher invariant: defined only when the quadratic part reduces to z*conj(z)");
    MoserData out;
    out.verdict = multiplicity(surface_data(rho), MultiplicityMethod::All, seed);
    out.s = *out.verdict.k_order;
    return out;
}

ObstructionReport m0_equivalence_obstruction(const Polynomial& rho, int degree_cap) {
    check_surface_input(rho);
    if (rho.is_zero())
        return {M0Obstruction::NOT_OBSTRUCTED_UP_TO_CAP, rho, degree_cap};
    Polynomial w = anti_restriction(rho).truncated(degree_cap);
    return {w.is_zero() ? M0Obstruction::NOT_OBSTRUCTED_UP_TO_CAP : M0Obstruction::OBSTRUCTED,
            w, degree_cap};
}

ProbeReport invariance_probe(const Polynomial& rho, std::uint64_t seed, int trials,
                             int degree_cap) {
    check_surface_input(rho);
    auto data = surface_data(rho);
    const RingPtr& r = data.ring;
    const Polynomial base = data.rho;

    ProbeReport report;
    report.trials = trials;
    report.degree_cap = degree_cap;
    report.base_flag = m0_equivalence_obstruction(base, degree_cap).verdict;
    report.base_mult =
        *multiplicity(data, MultiplicityMethod::LocalRing).k_local_ring;

    const GaussianRational I = GaussianRational::i();
    const std::vector<GaussianRational> units{
        GaussianRational(1),  GaussianRational(-1), GaussianRational(2),
        GaussianRational(make_rational(1, 2)), I, -I, GaussianRational(1) + I};
    const std::vector<GaussianRational> any{
        GaussianRational(), GaussianRational(1), GaussianRational(-1),
        GaussianRational(2), GaussianRational(make_rational(-1, 2)), I,
        GaussianRational(1) - I};

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_unit(0, units.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_any(0, any.size() - 1);

    Polynomial z = Polynomial::variable(r, 0);
    for (int t = 0; t < trials; ++t) {
        // Graph-shape-preserving invertible change:
        //   z~ = a z + b w + e z^2 + f z w + g w^2
        //   w~ = c w + h z^2 + j z w + k w^2
        GaussianRational a = units[pick_unit(rng)], c = units[pick_unit(rng)];
        GaussianRational b = any[pick_any(rng)], e = any[pick_any(rng)];
        GaussianRational f = any[pick_any(rng)], g = any[pick_any(rng)];
        GaussianRational h = any[pick_any(rng)], j = any[pick_any(rng)];
        GaussianRational k = any[pick_any(rng)];

        Polynomial zr = base * z;  // z * rho
        Polynomial rr = base * base;
        Polynomial phi = z.scaled(a) + base.scaled(b) + (z * z).scaled(e) + zr.scaled(f) +
                         rr.scaled(g);
        Polynomial psi = base.scaled(c) + (z * z).scaled(h) + zr.scaled(j) + rr.scaled(k);

        auto inv = formal_inverse({phi.truncated(degree_cap), phi.conj().truncated(degree_cap)},
                                  {0, 1}, degree_cap);
        Polynomial moved =
            compose_jets({psi.truncated(degree_cap)}, {0, 1}, inv, degree_cap)[0];

        if (m0_equivalence_obstruction(moved, degree_cap).verdict != report.base_flag)
            report.flag_stable = false;
        auto moved_data = NormalFormData::make(r, moved, {});
        auto mult = *multiplicity(moved_data, MultiplicityMethod::LocalRing).k_local_ring;
        if (!(mult == report.base_mult)) report.mult_stable = false;
    }
    return report;
}

}  // namespace crsing
