#include "crsing/finiteness.hpp"

#include <gmpxx.h>

#include <random>
#include <stdexcept>
#include <string>

#include "crsing/ideal.hpp"
#include "crsing/series.hpp"

namespace crsing {

namespace {

// Complex arithmetic on GMP floats at fixed working precision.
constexpr unsigned kPrec = 192;

struct Cf {
    mpf_class re{0, kPrec}, im{0, kPrec};

    Cf() = default;
    Cf(const mpf_class& r, const mpf_class& i) : re(r, kPrec), im(i, kPrec) {}

    Cf operator+(const Cf& o) const { return {re + o.re, im + o.im}; }
    Cf operator-(const Cf& o) const { return {re - o.re, im - o.im}; }
    Cf operator*(const Cf& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Cf operator/(const Cf& o) const {
        mpf_class n2(o.re * o.re + o.im * o.im, kPrec);
        return {(re * o.re + im * o.im) / n2, (im * o.re - re * o.im) / n2};
    }
};

mpf_class cf_abs(const Cf& z) {
    mpf_class n2(z.re * z.re + z.im * z.im, kPrec);
    return sqrt(n2);
}

Cf to_cf(const GaussianRational& q) {
    return {mpf_class(q.re, kPrec), mpf_class(q.im, kPrec)};
}

Cf horner(const std::vector<Cf>& coeffs, const Cf& x) {
    Cf acc;
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * x + coeffs[j];
    return acc;
}

Polynomial antiholomorphic_axis(const NormalFormData& d) {
    const RingPtr& r = d.ring;
    std::vector<std::optional<Polynomial>> im(r->size());
    for (std::size_t s = 0; s < r->size(); ++s)
        im[s] = s == 1 ? Polynomial::variable(r, 1) : Polynomial(r);
    return d.rho.substitute(im, r);
}

Rational rational_pow(const Rational& base, int k) {
    Rational out(1);
    for (int j = 0; j < k; ++j) out *= base;
    return out;
}

GaussianRational small_gaussian(std::mt19937_64& rng, const Rational& scale,
                                bool bounded_below) {
    std::uniform_int_distribution<int> pick(-64, 64);
    for (;;) {
        long a = pick(rng), b = pick(rng);
        if (bounded_below && a * a + b * b < 1024) continue;
        return GaussianRational(scale * make_rational(a, 64), scale * make_rational(b, 64));
    }
}

}  // namespace

FinitenessResult finiteness_test(const NormalFormData& data) {
    Polynomial w = antiholomorphic_axis(data);
    return {!w.is_zero(), w};
}

std::vector<GaussianRational> fibre_polynomial(const NormalFormData& data,
                                               const std::vector<GaussianRational>& target,
                                               int degree_cap) {
    const std::size_t n = data.n();
    if (target.size() != n)
        throw std::invalid_argument("fibre polynomial: target has wrong dimension");
    if (degree_cap < 1) throw std::invalid_argument("fibre polynomial: cap must be positive");

    // Working ring: the fibre slot t1, the transverse unknowns, and formal
    // copies of the first n-1 target coordinates.
    std::vector<std::string> names{"t1"};
    for (std::size_t a = 0; a < data.r.size(); ++a) names.push_back("t" + std::to_string(a + 2));
    names.push_back("s1");
    for (std::size_t a = 0; a < data.r.size(); ++a) names.push_back("s" + std::to_string(a + 2));
    RingPtr R = Ring::make_plain(names);
    const int s1 = static_cast<int>(n) - 1;

    Polynomial t1 = Polynomial::variable(R, 0);
    Polynomial s1v = Polynomial::variable(R, s1);
    Polynomial zbar_image = t1.scaled(GaussianRational(2)) - s1v;

    std::vector<std::optional<Polynomial>> im(data.ring->size());
    im[0] = s1v;
    im[1] = zbar_image;
    for (std::size_t a = 0; a < data.r.size(); ++a)
        im[2 + a] = Polynomial::variable(R, static_cast<int>(a) + 1);

    std::vector<Polynomial> transverse;
    if (!data.r.empty()) {
        std::vector<Polynomial> eqs;
        std::vector<int> unknowns;
        for (std::size_t a = 0; a < data.r.size(); ++a) {
            Polynomial eq = Polynomial::variable(R, static_cast<int>(a) + 1) +
                            data.r[a].substitute(im, R, degree_cap).scaled(GaussianRational::i()) -
                            Polynomial::variable(R, static_cast<int>(n + a));
            eqs.push_back(eq);
            unknowns.push_back(static_cast<int>(a) + 1);
        }
        transverse = implicit_series_solve(eqs, unknowns, degree_cap);
    }

    std::vector<std::optional<Polynomial>> graph_im(data.ring->size());
    graph_im[0] = s1v;
    graph_im[1] = zbar_image;
    for (std::size_t a = 0; a < data.r.size(); ++a) graph_im[2 + a] = transverse[a];
    Polynomial u = data.rho.substitute(graph_im, R, degree_cap);

    RingPtr T = Ring::make_plain({"t1"});
    std::vector<std::optional<Polynomial>> numeric(R->size());
    numeric[0] = Polynomial::variable(T, 0);
    numeric[s1] = Polynomial::constant(T, target[0]);
    for (std::size_t a = 0; a < data.r.size(); ++a)
        numeric[n + a] = Polynomial::constant(T, target[a + 1]);
    Polynomial v = u.substitute(numeric, T) - Polynomial::constant(T, target[n - 1]);

    if (v.is_zero()) return {};
    std::vector<GaussianRational> coeffs(static_cast<std::size_t>(v.degree()) + 1);
    for (const auto& [m, c] : v.terms()) coeffs[static_cast<std::size_t>(m[0])] = c;
    return coeffs;
}

std::optional<long> count_roots_in_disc(const std::vector<GaussianRational>& coeffs_in,
                                        const Rational& radius) {
    std::vector<GaussianRational> coeffs = coeffs_in;
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    if (coeffs.empty()) return std::nullopt;

    // Roots at the centre split off exactly.
    long at_zero = 0;
    while (coeffs.size() > 1 && coeffs.front().is_zero()) {
        coeffs.erase(coeffs.begin());
        ++at_zero;
    }
    const std::size_t d = coeffs.size() - 1;
    if (d == 0) return at_zero;

    std::vector<Cf> monic(coeffs.size());
    Cf lead = to_cf(coeffs.back());
    for (std::size_t j = 0; j < coeffs.size(); ++j) monic[j] = to_cf(coeffs[j]) / lead;
    monic.back() = {mpf_class(1, kPrec), mpf_class(0, kPrec)};

    // Simultaneous (Weierstrass) iteration from staggered complex seeds.
    std::vector<Cf> x(d);
    Cf seed(mpf_class(0.4, kPrec), mpf_class(0.9, kPrec));
    Cf acc(mpf_class(1, kPrec), mpf_class(0, kPrec));
    for (std::size_t i = 0; i < d; ++i) {
        acc = acc * seed;
        x[i] = acc;
    }

    std::vector<Cf> w(d);
    mpf_class tol(1, kPrec);
    mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), 150);  // far below certification needs
    bool converged = false;
    for (int iter = 0; iter < 400 && !converged; ++iter) {
        mpf_class worst(0, kPrec);
        for (std::size_t i = 0; i < d; ++i) {
            Cf denom(mpf_class(1, kPrec), mpf_class(0, kPrec));
            for (std::size_t j = 0; j < d; ++j)
                if (j != i) denom = denom * (x[i] - x[j]);
            w[i] = horner(monic, x[i]) / denom;
            x[i] = x[i] - w[i];
            mpf_class m = cf_abs(w[i]);
            if (m > worst) worst = m;
        }
        converged = worst < tol;
    }
    if (!converged) return std::nullopt;

    // Final corrections give inclusion discs; certify only when the discs
    // are pairwise disjoint and none touches the counting circle.  The
    // radius must dominate the evaluation roundoff, or a multiple root
    // could masquerade as a separated cluster.
    mpf_class eval_eps(1, kPrec), slop(1, kPrec);
    mpf_div_2exp(eval_eps.get_mpf_t(), eval_eps.get_mpf_t(), kPrec - 6);
    mpf_div_2exp(slop.get_mpf_t(), slop.get_mpf_t(), 170);
    std::vector<mpf_class> rad(d);
    for (std::size_t i = 0; i < d; ++i) {
        Cf denom(mpf_class(1, kPrec), mpf_class(0, kPrec));
        for (std::size_t j = 0; j < d; ++j)
            if (j != i) denom = denom * (x[i] - x[j]);
        mpf_class mag = cf_abs(x[i]);
        mpf_class coeff_sum(0, kPrec);
        for (std::size_t j = monic.size(); j-- > 0;)
            coeff_sum = coeff_sum * mag + cf_abs(monic[j]);
        mpf_class noise(coeff_sum * eval_eps / cf_abs(denom), kPrec);
        rad[i] = mpf_class(
            2 * static_cast<long>(d) * (cf_abs(horner(monic, x[i]) / denom) + noise) +
                slop * (1 + mag),
            kPrec);
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (cf_abs(x[i] - x[j]) <= rad[i] + rad[j]) return std::nullopt;

    mpf_class circle(radius, kPrec);
    long inside = 0;
    for (std::size_t i = 0; i < d; ++i) {
        mpf_class m = cf_abs(x[i]);
        if (m + rad[i] < circle)
            ++inside;
        else if (m - rad[i] <= circle)
            return std::nullopt;  // straddles the boundary
    }
    return at_zero + inside;
}

CountResult preimage_count(const NormalFormData& data,
                           const std::vector<GaussianRational>& target,
                           const Rational& radius, int trials, std::uint64_t seed) {
    auto fin = finiteness_test(data);
    if (!fin.finite) throw std::domain_error("fibre counting requires a finite map");
    if (sgn(radius) <= 0) throw std::invalid_argument("fibre counting: radius must be positive");
    const std::size_t n = data.n();
    if (!target.empty() && target.size() != n)
        throw std::invalid_argument("fibre counting: target has wrong dimension");

    const int k = fin.witness.order_of_vanishing().value;
    const int cap = 2 * k + 4;
    // The fibre over q sits near |t1| ~ |q_n|^(1/k); scale the last target
    // coordinate so those points land well inside the counting disc.
    const Rational side_scale = make_rational(1, 1000);
    const Rational graph_scale = rational_pow(radius * make_rational(2, 5), k);

    CountResult out;
    for (int trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(trial));
        std::vector<GaussianRational> q;
        if (trial == 0 && !target.empty()) {
            q = target;
        } else {
            for (std::size_t j = 0; j + 1 < n; ++j)
                q.push_back(small_gaussian(rng, side_scale, false));
            q.push_back(small_gaussian(rng, graph_scale, true));
        }
        ++out.attempts;
        auto count = count_roots_in_disc(fibre_polynomial(data, q, cap), radius);
        if (count) {
            out.count = count;
            return out;
        }
        ++out.boundary_failures;
    }
    return out;
}

MultiplicityVerdict multiplicity(const NormalFormData& data, MultiplicityMethod method,
                                 std::uint64_t seed) {
    MultiplicityVerdict v;
    auto fin = finiteness_test(data);
    v.finite = fin.finite;

    const bool all = method == MultiplicityMethod::All;
    if (all || method == MultiplicityMethod::Order)
        v.k_order = fin.witness.order_of_vanishing();
    if (all || method == MultiplicityMethod::LocalRing)
        v.k_local_ring = map_multiplicity(build_resolution_map(data));
    if ((all || method == MultiplicityMethod::Count) && fin.finite)
        v.k_count = preimage_count(data, {}, make_rational(1, 10), 8, seed).count;

    std::vector<long> ints;
    bool some_infinite = false;
    for (const auto& vo : {v.k_order, v.k_local_ring}) {
        if (!vo) continue;
        if (vo->kind == VanishingOrder::FINITE) ints.push_back(vo->value);
        if (vo->kind == VanishingOrder::INFINITE) some_infinite = true;
    }
    if (v.k_count) ints.push_back(*v.k_count);
    v.agree = true;
    for (long i : ints)
        if (i != ints.front()) v.agree = false;
    if (some_infinite && !ints.empty()) v.agree = false;
    v.confirmed = v.agree && ints.size() == 3 && v.k_order && v.k_local_ring && v.k_count &&
                  v.k_order->kind == VanishingOrder::FINITE &&
                  v.k_local_ring->kind == VanishingOrder::FINITE;
    return v;
}

VanishingOrder map_multiplicity(const HoloMap& f) {
    // The quotient is taken over the map's own coordinates; conjugate slots
    // of a complex source play no role and must not pad the dimension.
    std::vector<std::string> names;
    for (int s : f.coordinate_slots) names.push_back(f.source->var(s).name);
    RingPtr plain = Ring::make_plain(names);
    std::vector<Polynomial> gens;
    for (const auto& c : f.components) gens.push_back(c.restricted_to(f.coordinate_slots, plain));
    try {
        auto lm = local_multiplicity(gens);
        if (!lm.finite) return VanishingOrder::infinite();
        return VanishingOrder::finite(static_cast<int>(lm.value));
    } catch (const cap_exceeded&) {
        return VanishingOrder::unknown_beyond(caps().max_degree);
    }
}

}  // namespace crsing
