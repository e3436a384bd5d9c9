#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crsing/ideal.hpp"
#include "crsing/parser.hpp"
#include "crsing/resolution.hpp"

using namespace crsing;

namespace {
Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(s, r); }
RingPtr data_ring_2() { return Ring::make({{"z1", true}}); }
RingPtr data_ring_3() { return Ring::make({{"z1", true}, {"x2", false}}); }

// graph equations pulled back along the map over real arguments
void check_parametrizes(const NormalFormData& d, const HoloMap& f) {
    const RingPtr& src = f.source;
    GaussianRational half(make_rational(1, 2));
    GaussianRational minus_half_i(Rational(0), make_rational(-1, 2));
    std::vector<std::optional<Polynomial>> im(d.ring->size());
    im[0] = f.components[0];
    im[1] = f.components[0].conj();
    for (std::size_t s = 2; s < d.ring->size(); ++s)
        im[s] = (f.components[s - 1] + f.components[s - 1].conj()).scaled(half);
    CHECK(f.components.back() == d.rho.substitute(im, src));
    for (std::size_t a = 0; a < d.r.size(); ++a) {
        Polynomial y = (f.components[a + 1] - f.components[a + 1].conj()).scaled(minus_half_i);
        CHECK(y == d.r[a].substitute(im, src));
    }
}
}

TEST_CASE("normal form data validates its input") {
    auto r = data_ring_3();
    CHECK_THROWS_AS(NormalFormData::make(r, P(r, "z1"), {Polynomial(r)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(NormalFormData::make(r, Polynomial(r), {P(r, "i*z1^2")}),
                    std::invalid_argument);
    CHECK_THROWS_AS(NormalFormData::make(r, Polynomial(r), {}), std::invalid_argument);
    auto bad = Ring::make({{"x", false}, {"z", true}});
    CHECK_THROWS_AS(NormalFormData::make(bad, Polynomial(bad), {Polynomial(bad)}),
                    std::invalid_argument);
}

TEST_CASE("harmonic terms are absorbed into a holomorphic shift") {
    auto r = data_ring_3();
    auto d = NormalFormData::make(r, P(r, "z1*conj(z1) + x2*conj(z1)"),
                                  {P(r, "z1*conj(z1) + (z1^2 + conj(z1)^2)/2")});
    CHECK_FALSE(antiholomorphic_parts_vanish(d));

    auto out = eliminate_harmonic_terms(d);
    CHECK(out.passes == 1);
    CHECK_FALSE(out.residual);
    REQUIRE(out.shift.size() == 1);
    CHECK(out.shift[0] == P(r, "z1^2/2"));
    CHECK(out.data.r[0] == P(r, "z1*conj(z1)"));
    CHECK(out.data.rho ==
          P(r, "z1*conj(z1) + x2*conj(z1) + i/2*(z1^2*conj(z1) - conj(z1)^3)"));
    CHECK(antiholomorphic_parts_vanish(out.data));

    // negating the recorded shift restores the input exactly
    auto back = shift_graph_coordinates(out.data, {-out.shift[0]});
    CHECK(back.rho == d.rho);
    CHECK(back.r[0] == d.r[0]);
}

TEST_CASE("normalized data passes through the elimination untouched") {
    auto r = data_ring_3();
    auto d = NormalFormData::make(r, P(r, "z1*conj(z1)"), {P(r, "z1*conj(z1)")});
    auto out = eliminate_harmonic_terms(d);
    CHECK(out.passes == 0);
    CHECK_FALSE(out.residual);
    CHECK(out.shift[0].is_zero());
    CHECK(out.data.r[0] == d.r[0]);
    CHECK(out.data.rho == d.rho);
}

TEST_CASE("coupled harmonic terms regenerate and get flagged") {
    auto r = data_ring_3();
    auto d = NormalFormData::make(
        r, P(r, "z1*conj(z1)"), {P(r, "x2*(z1 + conj(z1)) + z1^2 + conj(z1)^2")});
    auto out = eliminate_harmonic_terms(d, 3);
    CHECK(out.passes == 3);
    CHECK(out.residual);

    // the shift map still inverts exactly at the stage it stopped
    auto back = shift_graph_coordinates(out.data, {-out.shift[0]});
    CHECK(back.r[0] == d.r[0]);

    CHECK_THROWS_AS(shift_graph_coordinates(d, {P(r, "conj(z1)^2")}), std::invalid_argument);
}

TEST_CASE("resolution map of the basic quadric") {
    auto r = data_ring_2();
    auto d = NormalFormData::make(r, P(r, "z1*conj(z1)"), {});
    auto f = build_resolution_map(d);
    REQUIRE(f.dim() == 2);
    auto t = f.source;
    CHECK(f.components[0] == P(t, "t1 + i*t2"));
    CHECK(f.components[1] == P(t, "t1^2 + t2^2"));
    CHECK(f.jacobian() == P(t, "2*t2 - 2*i*t1"));
    CHECK(real_rank_at_origin(f) == 2);
    check_parametrizes(d, f);
    CHECK(nonextendable_candidate(f) == P(t, "4*t2^2 - 8*i*t1*t2 - 4*t1^2"));
}

TEST_CASE("resolution map with an elliptic quadratic part") {
    auto r = data_ring_2();
    auto d = NormalFormData::make(r, P(r, "z1*conj(z1) + (z1^2 + conj(z1)^2)/4"), {});
    auto f = build_resolution_map(d);
    auto t = f.source;
    CHECK(f.components[1] == P(t, "3/2*t1^2 + 1/2*t2^2"));
    CHECK(f.jacobian() == P(t, "t2 - 3*i*t1"));
    CHECK(real_rank_at_origin(f) == 2);
    check_parametrizes(d, f);
}

TEST_CASE("resolution map in three dimensions") {
    auto r = data_ring_3();
    auto d = NormalFormData::make(r, P(r, "z1*conj(z1)"), {P(r, "z1*conj(z1)")});
    auto f = build_resolution_map(d);
    REQUIRE(f.dim() == 3);
    auto t = f.source;
    CHECK(f.components[0] == P(t, "t1 + i*t3"));
    CHECK(f.components[1] == P(t, "t2 + i*(t1^2 + t3^2)"));
    CHECK(f.components[2] == P(t, "t1^2 + t3^2"));
    CHECK(f.jacobian() == P(t, "2*t3 - 2*i*t1"));
    CHECK(real_rank_at_origin(f) == 3);
    check_parametrizes(d, f);

    auto raw = NormalFormData::make(r, P(r, "z1*conj(z1)"), {P(r, "z1^2 + conj(z1)^2")});
    CHECK_THROWS_AS(build_resolution_map(raw), std::invalid_argument);
}

TEST_CASE("pullback locus is cut by the Jacobian") {
    auto r = data_ring_2();
    auto d = NormalFormData::make(r, P(r, "z1*conj(z1)"), {});
    auto f = build_resolution_map(d);
    auto locus = pullback_singular_locus(f);
    REQUIRE(locus.ideal.size() == 1);
    CHECK(locus.ideal[0] == f.jacobian());

    // the Jacobian zero set maps into the image locus, its complement out
    auto target_ring = Ring::make({{"z", true}, {"w", true}});
    auto m = ManifoldSpec::graph(target_ring, 2, P(target_ring, "z*conj(z)"));
    auto s = cr_singular_locus(m);
    Point origin(f.source);
    CHECK(evaluate(locus.jacobian, origin).is_zero());
    Point q0 = target_point(target_ring, f.apply(origin));
    for (const auto& g : s.equations) CHECK(evaluate(g, q0).is_zero());

    Point t(f.source);
    t.set(0, GaussianRational(1));
    t.set(1, GaussianRational(2));
    CHECK_FALSE(evaluate(locus.jacobian, t).is_zero());
    Point q1 = target_point(target_ring, f.apply(t));
    CHECK(m.contains(q1));
    CHECK_FALSE(evaluate(s.equations[0], q1).is_zero());

    // an identity map has empty pullback locus
    auto flat = Ring::make({{"t1", false}, {"t2", false}});
    auto id = HoloMap::make(flat, {P(flat, "t1"), P(flat, "t2")});
    CHECK(pullback_singular_locus(id).jacobian == P(flat, "1"));

    // a degenerate graph yields an identically vanishing Jacobian
    auto r3 = data_ring_3();
    auto degenerate = NormalFormData::make(r3, Polynomial(r3), {Polynomial(r3)});
    auto g = build_resolution_map(degenerate);
    CHECK_THROWS_AS(pullback_singular_locus(g), std::domain_error);
}

TEST_CASE("explicit holomorphic map with a complex source") {
    auto src = Ring::make({{"z", true}, {"w1", true}, {"w2", true}});
    auto f = HoloMap::make(
        src, {P(src, "z"), P(src, "w1 + i*w2"), P(src, "(w1 - i*w2)^2")});
    CHECK(f.jacobian() == P(src, "-4*i*w1 - 4*w2"));
    CHECK(ideals_equal({f.jacobian()}, {P(src, "w1 - i*w2")}, MonomialOrder::grevlex()));
    CHECK(nonextendable_candidate(f) == P(src, "-16*w1^2 + 32*i*w1*w2 + 16*w2^2"));

    CHECK_THROWS_AS(HoloMap::make(src, {P(src, "conj(z)"), P(src, "w1"), P(src, "w2")}),
                    std::invalid_argument);
}

TEST_CASE("CR candidate verification at rational points") {
    auto r = data_ring_2();
    auto d = NormalFormData::make(r, P(r, "z1*conj(z1)"), {});
    auto f = build_resolution_map(d);
    auto target_ring = Ring::make({{"z", true}, {"w", true}});
    auto m = ManifoldSpec::graph(target_ring, 2, P(target_ring, "z*conj(z)"));

    std::mt19937_64 rng(5);
    auto samples = sample_resolution_points(f, rng, 20);
    REQUIRE(samples.size() == 20);
    auto check = verify_cr_candidate(f, m, samples, 6);
    CHECK(check.points_checked == 20);
    CHECK(check.passed);

    // a sample over the singular locus is rejected outright
    CHECK_THROWS_AS(verify_cr_candidate(f, m, {Point(f.source)}), std::invalid_argument);

    // a wrong target fails the containment leg
    auto other = ManifoldSpec::graph(target_ring, 2,
                                     P(target_ring, "z*conj(z) + (z^2 + conj(z)^2)/4"));
    Point t(f.source);
    t.set(0, GaussianRational(1));
    t.set(1, GaussianRational(2));
    auto bad = verify_cr_candidate(f, other, {t}, 6);
    CHECK(bad.points_checked == 1);
    CHECK_FALSE(bad.passed);
}

TEST_CASE("CR candidate verification for the complex-source map") {
    auto src = Ring::make({{"z", true}, {"w1", true}, {"w2", true}});
    auto f = HoloMap::make(
        src, {P(src, "z"), P(src, "w1 + i*w2"), P(src, "(w1 - i*w2)^2")});
    auto tr = Ring::make({{"z1", true}, {"z2", true}, {"w", true}});
    auto image = ManifoldSpec::graph(
        tr, 4, P(tr, "(conj(z2) + i*z1*conj(z1) + (z1*conj(z1))^2)^2"));

    // source samples satisfy Im w1 = |z|^2/2, Im w2 = |z|^4/2
    GaussianRational I = GaussianRational::i();
    Point a(src);
    a.set(0, GaussianRational(1));
    a.set(2, I * GaussianRational(make_rational(1, 2)));
    a.set(4, I * GaussianRational(make_rational(1, 2)));
    Point b(src);
    b.set(0, I);
    b.set(2, I * GaussianRational(make_rational(1, 2)));
    b.set(4, I * GaussianRational(make_rational(1, 2)));
    Point c(src);
    c.set(0, GaussianRational(make_rational(1, 2)));
    c.set(2, I * GaussianRational(make_rational(1, 8)));
    c.set(4, I * GaussianRational(make_rational(1, 32)));

    auto check = verify_cr_candidate(f, image, {a, b, c}, 6);
    CHECK(check.points_checked == 3);
    CHECK(check.passed);
}

TEST_CASE("Jacobian vanishes at the origin exactly when the image origin is singular") {
    auto r = data_ring_2();
    auto target_ring = Ring::make({{"z", true}, {"w", true}});
    for (const char* rho : {"z1*conj(z1)", "z1*conj(z1) + (z1^2 + conj(z1)^2)/4"}) {
        auto d = NormalFormData::make(r, P(r, rho), {});
        auto f = build_resolution_map(d);
        std::string target_rho(rho);
        for (std::string::size_type pos; (pos = target_rho.find("z1")) != std::string::npos;)
            target_rho.replace(pos, 2, "z");
        auto m = ManifoldSpec::graph(target_ring, 2, P(target_ring, target_rho));
        auto s = cr_singular_locus(m);
        Point origin(f.source);
        Point q = target_point(target_ring, f.apply(origin));
        bool in_locus = true;
        for (const auto& g : s.equations)
            if (!evaluate(g, q).is_zero()) in_locus = false;
        CHECK(evaluate(f.jacobian(), origin).is_zero() == in_locus);
    }
}
