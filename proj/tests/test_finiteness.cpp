#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crsing/finiteness.hpp"
#include "crsing/ideal.hpp"
#include "crsing/parser.hpp"

using namespace crsing;

namespace {
Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(s, r); }
GaussianRational gr(long n, long d = 1) { return GaussianRational(make_rational(n, d)); }
GaussianRational gi(long n, long d = 1) {
    return GaussianRational(Rational(0), make_rational(n, d));
}

NormalFormData quadric() {
    auto r = Ring::make({{"z1", true}});
    return NormalFormData::make(r, P(r, "z1*conj(z1)"), {});
}
NormalFormData elliptic() {
    auto r = Ring::make({{"z1", true}});
    return NormalFormData::make(r, P(r, "z1*conj(z1) + z1^2 + conj(z1)^2"), {});
}
NormalFormData cubic_tail() {
    auto r = Ring::make({{"z1", true}});
    return NormalFormData::make(r, P(r, "z1*conj(z1) + z1^3 + conj(z1)^3"), {});
}
NormalFormData three_dim() {
    auto r = Ring::make({{"z1", true}, {"x2", false}});
    return NormalFormData::make(r, P(r, "z1*conj(z1) + (z1^2 + conj(z1)^2)/2 + x2^2"),
                                {P(r, "z1*conj(z1)")});
}
}

TEST_CASE("finiteness witness is the antiholomorphic restriction") {
    auto m0 = finiteness_test(quadric());
    CHECK_FALSE(m0.finite);
    CHECK(m0.witness.is_zero());

    auto r = Ring::make({{"z1", true}});
    auto gamma = NormalFormData::make(r, P(r, "z1*conj(z1) + (z1^2 + conj(z1)^2)/4"), {});
    auto fin = finiteness_test(gamma);
    CHECK(fin.finite);
    CHECK(fin.witness == P(r, "conj(z1)^2/4"));
    CHECK(fin.witness.order_of_vanishing() == VanishingOrder::finite(2));

    // every term carries z1, so the restriction collapses
    auto mixed = NormalFormData::make(r, P(r, "z1*conj(z1)^2"), {});
    CHECK_FALSE(finiteness_test(mixed).finite);
}

TEST_CASE("fibre polynomial reduces the map to one variable exactly") {
    auto c = fibre_polynomial(elliptic(), {gr(1, 100), gr(1, 1000)}, 8);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == gr(-9, 10000));
    CHECK(c[1] == gr(-1, 50));
    CHECK(c[2] == gr(4));

    // the transverse slot is solved for and substituted away
    auto c3 = fibre_polynomial(three_dim(), {gr(1, 10), gr(1, 10), gr(1, 100)}, 8);
    REQUIRE(c3.size() == 3);
    CHECK(c3[0] == gr(-1, 10000) + gi(1, 500));
    CHECK(c3[1] == gr(1, 250) + gi(-1, 25));
    CHECK(c3[2] == gr(49, 25));

    CHECK_THROWS_AS(fibre_polynomial(elliptic(), {gr(1)}, 8), std::invalid_argument);
    CHECK_THROWS_AS(fibre_polynomial(elliptic(), {gr(0), gr(0)}, 0), std::invalid_argument);
}

TEST_CASE("certified root counting in a disc") {
    Rational tenth = make_rational(1, 10);
    CHECK(count_roots_in_disc({gr(-1, 100), gr(1)}, tenth) == 1);
    CHECK(count_roots_in_disc({gr(5)}, tenth) == 0);

    // t^3 - t/64: roots 0 and +-1/8
    std::vector<GaussianRational> cubic{gr(0), gr(-1, 64), gr(0), gr(1)};
    CHECK(count_roots_in_disc(cubic, make_rational(1, 4)) == 3);
    CHECK(count_roots_in_disc(cubic, tenth) == 1);

    // a root on the boundary circle refuses to certify
    CHECK_FALSE(count_roots_in_disc({gr(-1, 10), gr(1)}, tenth).has_value());

    // roots at the centre split off exactly, coincident roots elsewhere fail
    CHECK(count_roots_in_disc({gr(0), gr(0), gr(1)}, tenth) == 2);
    CHECK_FALSE(count_roots_in_disc({gr(1, 400), gr(-1, 10), gr(1)}, tenth).has_value());

    CHECK_FALSE(count_roots_in_disc({}, tenth).has_value());
    CHECK_FALSE(count_roots_in_disc({gr(0), gr(0)}, tenth).has_value());
}

TEST_CASE("fibre counting over sampled targets") {
    auto two = preimage_count(elliptic(), {}, make_rational(1, 10), 8, 3);
    REQUIRE(two.count.has_value());
    CHECK(*two.count == 2);

    auto three = preimage_count(cubic_tail(), {}, make_rational(1, 10), 8, 3);
    REQUIRE(three.count.has_value());
    CHECK(*three.count == 3);

    auto dim3 = preimage_count(three_dim(), {}, make_rational(1, 10), 8, 3);
    REQUIRE(dim3.count.has_value());
    CHECK(*dim3.count == 2);

    CHECK_THROWS_AS(preimage_count(quadric(), {}, make_rational(1, 10), 8, 3),
                    std::domain_error);
    CHECK_THROWS_AS(preimage_count(elliptic(), {}, make_rational(-1, 10), 8, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(preimage_count(elliptic(), {gr(1)}, make_rational(1, 10), 8, 3),
                    std::invalid_argument);
}

TEST_CASE("fibre counts are stable across seeds and never certify wrongly") {
    auto d = elliptic();
    int certified = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto res = preimage_count(d, {}, make_rational(1, 10), 1, seed);
        if (res.count) {
            CHECK(*res.count == 2);
            ++certified;
        }
    }
    CHECK(certified >= 95);
}

TEST_CASE("multiplicity agrees across all three methods") {
    auto v2 = multiplicity(elliptic());
    CHECK(v2.finite);
    CHECK(*v2.k_order == VanishingOrder::finite(2));
    CHECK(*v2.k_local_ring == VanishingOrder::finite(2));
    CHECK(v2.k_count.value() == 2);
    CHECK(v2.agree);
    CHECK(v2.confirmed);

    auto v3 = multiplicity(cubic_tail());
    CHECK(*v3.k_order == VanishingOrder::finite(3));
    CHECK(*v3.k_local_ring == VanishingOrder::finite(3));
    CHECK(v3.k_count.value() == 3);
    CHECK(v3.confirmed);

    auto vd = multiplicity(three_dim());
    CHECK(*vd.k_order == VanishingOrder::finite(2));
    CHECK(*vd.k_local_ring == VanishingOrder::finite(2));
    CHECK(vd.k_count.value() == 2);
    CHECK(vd.confirmed);
}

TEST_CASE("the basic quadric has no finite multiplicity") {
    auto v = multiplicity(quadric());
    CHECK_FALSE(v.finite);
    CHECK(*v.k_order == VanishingOrder::infinite());
    CHECK(*v.k_local_ring == VanishingOrder::infinite());
    CHECK_FALSE(v.k_count.has_value());
    CHECK(v.agree);
    CHECK_FALSE(v.confirmed);

    // the graph component factors through the first coordinate
    auto f = build_resolution_map(quadric());
    CHECK(ideal_membership(f.components[1], {f.components[0]}, MonomialOrder::grevlex()));
}

TEST_CASE("single method selection fills only its own slot") {
    auto d = elliptic();
    auto vo = multiplicity(d, MultiplicityMethod::Order);
    CHECK(vo.k_order.has_value());
    CHECK_FALSE(vo.k_local_ring.has_value());
    CHECK_FALSE(vo.k_count.has_value());
    CHECK(vo.agree);
    CHECK_FALSE(vo.confirmed);

    auto vl = multiplicity(d, MultiplicityMethod::LocalRing);
    CHECK_FALSE(vl.k_order.has_value());
    CHECK(*vl.k_local_ring == VanishingOrder::finite(2));

    auto vc = multiplicity(d, MultiplicityMethod::Count);
    CHECK(vc.k_count.value() == 2);
}

TEST_CASE("local multiplicity of explicit map germs") {
    auto er = Ring::make({{"z", true}, {"w1", true}, {"w2", true}});
    auto f = HoloMap::make(er, {P(er, "z"), P(er, "w1 + i*w2"), P(er, "(w1 - i*w2)^2")});
    CHECK(map_multiplicity(f) == VanishingOrder::finite(2));

    auto flat = Ring::make({{"t1", false}, {"t2", false}});
    auto line = HoloMap::make(flat, {P(flat, "t1 + i*t2"), Polynomial(flat)});
    CHECK(map_multiplicity(line) == VanishingOrder::infinite());
}

TEST_CASE("local multiplicity is invariant under linear coordinate changes") {
    auto src = Ring::make({{"t1", false}, {"t2", false}});
    Polynomial f1 = P(src, "t1 + i*t2"), f2 = P(src, "3*t1^2 - t2^2");
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> entry(-3, 3);
    int done = 0;
    while (done < 20) {
        long a = entry(rng), b = entry(rng), c = entry(rng), d = entry(rng);
        long p = entry(rng), q = entry(rng), u = entry(rng), v = entry(rng);
        if (a * d - b * c == 0 || p * v - q * u == 0) continue;
        std::vector<std::optional<Polynomial>> im(2);
        im[0] = P(src, "t1").scaled(gr(a)) + P(src, "t2").scaled(gr(b));
        im[1] = P(src, "t1").scaled(gr(c)) + P(src, "t2").scaled(gr(d));
        Polynomial g1 = f1.substitute(im, src), g2 = f2.substitute(im, src);
        auto moved = HoloMap::make(
            src, {g1.scaled(gr(p)) + g2.scaled(gr(q)), g1.scaled(gr(u)) + g2.scaled(gr(v))});
        CHECK(map_multiplicity(moved) == VanishingOrder::finite(2));
        ++done;
    }
}
