#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crsing/leviflat.hpp"
#include "crsing/parser.hpp"

using namespace crsing;

namespace {
Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(s, r); }
RingPtr c2() { return Ring::make({{"z1", true}, {"z2", true}}); }
RingPtr c3() { return Ring::make({{"z1", true}, {"z2", true}, {"z3", true}}); }
GaussianRational gr(long n) { return GaussianRational(n); }
}

TEST_CASE("graph recognition separates foliated, complex, and unrecognized") {
    auto r = c2();

    auto g = is_leviflat_graph(P(r, "z2*conj(z2) + 1/2*conj(z2)^2"));
    CHECK(g.verdict == FoliationVerdict::Foliated);
    CHECK(g.singular_equation == P(r, "z2 + conj(z2)"));
    REQUIRE(g.leaves.has_value());
    CHECK(g.leaves->leaf_dim == 1);
    CHECK(g.leaves->leaf_slots == std::vector<int>{0});
    CHECK(g.leaves->parameter_slots == std::vector<int>{2});
    REQUIRE(g.leaves->map.size() == 3);
    CHECK(g.leaves->map[0] == P(r, "z1"));
    CHECK(g.leaves->map[1] == P(r, "z2"));
    CHECK(g.leaves->map[2] == P(r, "z2*conj(z2) + 1/2*conj(z2)^2"));

    // Chart from R^2 x C: (xi, x + i y, rho with z2 opened up as x + i y).
    REQUIRE(g.chart.size() == 3);
    REQUIRE(g.chart_ring);
    CHECK(g.chart_ring->size() == 4);  // x, y real, z1 complex
    CHECK(g.chart[2] == P(g.chart_ring, "(x + i*y)*(x - i*y) + 1/2*(x - i*y)^2"));

    CHECK(is_leviflat_graph(P(r, "z1*conj(z2)^2")).verdict == FoliationVerdict::Foliated);
    CHECK(is_leviflat_graph(P(r, "z1*conj(z2)^2")).singular_equation == P(r, "2*z1*conj(z2)"));
    CHECK(is_leviflat_graph(P(r, "z2*conj(z2)")).verdict == FoliationVerdict::Foliated);

    auto bad = is_leviflat_graph(P(r, "z1*conj(z1)"));
    CHECK(bad.verdict == FoliationVerdict::NotRecognized);
    CHECK_FALSE(bad.leaves.has_value());
    CHECK(bad.chart.empty());

    auto flat = is_leviflat_graph(P(r, "z2^2"));
    CHECK(flat.verdict == FoliationVerdict::ComplexGraph);
    CHECK(flat.singular_equation.is_zero());
    CHECK(is_leviflat_graph(Polynomial(r)).verdict == FoliationVerdict::ComplexGraph);

    auto r3 = c3();
    auto g3 = is_leviflat_graph(P(r3, "z3*conj(z3) + conj(z3)^3"));
    CHECK(g3.verdict == FoliationVerdict::Foliated);
    CHECK(g3.singular_equation == P(r3, "z3 + 3*conj(z3)^2"));
    REQUIRE(g3.leaves.has_value());
    CHECK(g3.leaves->leaf_dim == 2);

    CHECK_THROWS_AS(is_leviflat_graph(P(r, "conj(z1)")), std::invalid_argument);
    auto r1 = Ring::make({{"z", true}});
    CHECK_THROWS_AS(is_leviflat_graph(P(r1, "z*conj(z)")), std::invalid_argument);
    auto rm = Ring::make({{"z", true}, {"t", false}});
    CHECK_THROWS_AS(is_leviflat_graph(P(rm, "z*conj(z)")), std::invalid_argument);
}

TEST_CASE("leaf families validate their data") {
    auto r = c2();
    auto rho = P(r, "z1*conj(z2)^2");
    CHECK_THROWS_AS(LeafFamily::make(nullptr, {0}, {2}, {rho}), std::invalid_argument);
    CHECK_THROWS_AS(LeafFamily::make(r, {}, {2}, {rho}), std::invalid_argument);
    CHECK_THROWS_AS(LeafFamily::make(r, {0}, {2}, {}), std::invalid_argument);
    CHECK_THROWS_AS(LeafFamily::make(r, {1}, {2}, {rho}), std::invalid_argument);  // anti slot
    CHECK_THROWS_AS(LeafFamily::make(r, {0}, {0}, {rho}), std::invalid_argument);  // repeated
    // not holomorphic in the leaf coordinate
    CHECK_THROWS_AS(LeafFamily::make(r, {0}, {2}, {P(r, "conj(z1)")}), std::invalid_argument);
}

TEST_CASE("chart singular equation is the foliation Jacobian") {
    auto r = c2();

    auto g = is_leviflat_graph(P(r, "z2*conj(z2) + 1/2*conj(z2)^2"));
    REQUIRE(g.chart_ring);
    Polynomial jac = chart_singular_equation(g);
    // -2i times the singular equation z2 + conj(z2) pulled back to x + i y.
    CHECK(jac == P(jac.ring(), "-4*i*x"));

    auto g2 = is_leviflat_graph(P(r, "z1*conj(z2)^2"));
    Polynomial jac2 = chart_singular_equation(g2);
    CHECK(jac2 == P(jac2.ring(), "-4*i*z1*(x - i*y)"));

    auto r3 = c3();
    auto g3 = is_leviflat_graph(P(r3, "z3*conj(z3) + conj(z3)^3"));
    Polynomial jac3 = chart_singular_equation(g3);
    CHECK(jac3 == P(jac3.ring(), "-2*i*(x + i*y + 3*(x - i*y)^2)"));

    auto bad = is_leviflat_graph(P(r, "z1*conj(z1)"));
    CHECK_THROWS_AS(chart_singular_equation(bad), std::invalid_argument);
}

TEST_CASE("leaf intersections obey the image dichotomy") {
    auto r = c2();

    auto g = is_leviflat_graph(P(r, "z1*conj(z2)^2"));
    REQUIRE(g.leaves.has_value());
    std::vector<Polynomial> eqs{g.singular_equation};

    auto hit = leaf_singular_intersection(eqs, *g.leaves, {gr(1)});
    CHECK(hit.kind == LeafMeet::Hypersurface);
    CHECK(hit.dimension == 0);
    CHECK(hit.leaf_dim == 1);
    REQUIRE(hit.equations.size() == 1);
    CHECK(hit.equations[0] == P(hit.equations[0].ring(), "2*z1"));
    REQUIRE(hit.basis.size() == 1);
    CHECK(hit.basis[0] == P(hit.basis[0].ring(), "z1"));

    auto origin = leaf_singular_intersection(eqs, *g.leaves, {gr(0)});
    CHECK(origin.kind == LeafMeet::FullLeaf);
    CHECK(origin.dimension == 1);
    CHECK(origin.equations.empty());

    // The conjugate-closed mate pulls back antiholomorphically; its
    // conjugate cuts the same points of the leaf.
    std::vector<Polynomial> closed{g.singular_equation, g.singular_equation.conj()};
    auto both = leaf_singular_intersection(closed, *g.leaves, {gr(1)});
    CHECK(both.kind == LeafMeet::Hypersurface);
    CHECK(both.equations.size() == 2);

    auto gq = is_leviflat_graph(P(r, "z2*conj(z2) + 1/2*conj(z2)^2"));
    std::vector<Polynomial> eq2{gq.singular_equation};
    CHECK(leaf_singular_intersection(eq2, *gq.leaves, {gr(1)}).kind == LeafMeet::Empty);
    CHECK(leaf_singular_intersection(eq2, *gq.leaves, {gr(1)}).dimension == -1);
    CHECK(leaf_singular_intersection(eq2, *gq.leaves, {GaussianRational::i()}).kind ==
          LeafMeet::FullLeaf);
    CHECK(leaf_singular_intersection(eq2, *gq.leaves, {GaussianRational(1, 1)}).kind ==
          LeafMeet::Empty);

    auto r3 = c3();
    auto g3 = is_leviflat_graph(P(r3, "z3*conj(z3) + conj(z3)^3"));
    std::vector<Polynomial> eq3{g3.singular_equation};
    CHECK(leaf_singular_intersection(eq3, *g3.leaves, {gr(0)}).kind == LeafMeet::FullLeaf);
    CHECK(leaf_singular_intersection(eq3, *g3.leaves, {GaussianRational(Rational(-1, 3))}).kind ==
          LeafMeet::FullLeaf);
    CHECK(leaf_singular_intersection(eq3, *g3.leaves, {gr(1)}).kind == LeafMeet::Empty);
    CHECK(leaf_singular_intersection(eq3, *g3.leaves, {GaussianRational::i()}).kind ==
          LeafMeet::Empty);

    auto g3b = is_leviflat_graph(P(r3, "z1*conj(z3)^2"));
    auto plane = leaf_singular_intersection({g3b.singular_equation}, *g3b.leaves, {gr(1)});
    CHECK(plane.kind == LeafMeet::Hypersurface);
    CHECK(plane.dimension == 1);
    CHECK(plane.leaf_dim == 2);

    // A zero-dimensional slice cannot come from a foliated image.
    CHECK_THROWS_AS(
        leaf_singular_intersection({P(r3, "z1"), P(r3, "z2")}, *g3b.leaves, {gr(1)}),
        theorem_violation);

    // A pullback genuinely mixing a leaf coordinate with its conjugate has
    // no holomorphic presentation.
    CHECK_THROWS_AS(leaf_singular_intersection({P(r, "z1 + conj(z1)")}, *g.leaves, {gr(1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(leaf_singular_intersection(eqs, *g.leaves, {}), std::invalid_argument);
}

TEST_CASE("leaf grids census the foliation") {
    auto r = c2();

    auto g = is_leviflat_graph(P(r, "z1*conj(z2)^2"));
    auto probe = leaf_grid_probe({g.singular_equation}, *g.leaves);
    CHECK(probe.leaves == 25);
    CHECK(probe.empty == 0);
    CHECK(probe.hypersurface == 24);  // every leaf but t = 0 meets S in a point
    CHECK(probe.full_leaf == 1);
    CHECK(probe.lower_dim_leaves_all_meet);

    auto gq = is_leviflat_graph(P(r, "z2*conj(z2) + 1/2*conj(z2)^2"));
    auto probe2 = leaf_grid_probe({gq.singular_equation}, *gq.leaves);
    CHECK(probe2.leaves == 25);
    CHECK(probe2.empty == 20);  // S sits over Re t = 0, one grid column
    CHECK(probe2.hypersurface == 0);
    CHECK(probe2.full_leaf == 5);
    CHECK(probe2.lower_dim_leaves_all_meet);

    auto single = leaf_grid_probe({g.singular_equation}, *g.leaves, 1);
    CHECK(single.leaves == 1);
    CHECK(single.full_leaf == 1);

    // Data no foliated image produces: isolated hits next to misses.
    auto odd = leaf_grid_probe({P(r, "z1*z2 - 1")}, *g.leaves);
    CHECK(odd.hypersurface == 24);
    CHECK(odd.empty == 1);
    CHECK_FALSE(odd.lower_dim_leaves_all_meet);

    CHECK_THROWS_AS(leaf_grid_probe({g.singular_equation}, *g.leaves, 0), std::invalid_argument);
    CHECK_THROWS_AS(leaf_grid_probe({g.singular_equation}, *g.leaves, 5, Rational(0)),
                    std::invalid_argument);
}

TEST_CASE("dimension bound flags impossible images") {
    auto r = c2();

    // Singular set would need real dimension 2 but the equations cut it to
    // the origin: no finite map image looks like this graph.
    auto rho = P(r, "1/2*(z1^2 + conj(z1)^2 + z2^2 + conj(z2)^2)");
    CHECK_THROWS_AS(dimension_obstruction(rho), std::invalid_argument);
    auto bound = dimension_obstruction(rho, true);
    CHECK(bound.verdict == ImageVerdict::NotACRSingularImage);
    CHECK(bound.bound == 0);
    CHECK(bound.required == 2);
    CHECK(bound.flatness_assumed);

    auto ok = dimension_obstruction(P(r, "z2*conj(z2) + 1/2*conj(z2)^2"));
    CHECK(ok.verdict == ImageVerdict::Consistent);
    CHECK(ok.bound == 3);
    CHECK(ok.required == 2);
    CHECK_FALSE(ok.flatness_assumed);

    auto tight = dimension_obstruction(P(r, "z1*conj(z2)^2"));
    CHECK(tight.verdict == ImageVerdict::Consistent);
    CHECK(tight.bound == 2);
    CHECK(tight.required == 2);

    auto disc = dimension_obstruction(P(r, "z2*conj(z2)"));
    CHECK(disc.verdict == ImageVerdict::Consistent);
    CHECK(disc.bound == 2);

    CHECK_THROWS_AS(dimension_obstruction(P(r, "z2^2")), std::domain_error);
    CHECK_THROWS_AS(dimension_obstruction(Polynomial(r)), std::domain_error);
}

TEST_CASE("pushforward sheets contain the image") {
    // Identity map, flat source hypersurface Im w = 0.
    auto cs = Ring::make({{"z", true}, {"w", true}});
    auto f = HoloMap::make(cs, {P(cs, "z"), P(cs, "w")});
    auto ct = Ring::make({{"Z", true}, {"W", true}});
    auto fam = leviflat_hypervarieties(f, {P(cs, "i/2*(conj(w) - w)")}, ct, {{Rational(1)}});
    CHECK(fam.multiplicity.kind == VanishingOrder::FINITE);
    CHECK(fam.multiplicity.value == 1);
    CHECK(fam.directions_independent);
    REQUIRE(fam.sheets.size() == 1);
    CHECK(fam.sheets[0].sheet == P(ct, "2*i*(conj(W) - W)"));
    CHECK(fam.sheets[0].self_conjugate);
    CHECK(fam.sheets[0].reducible_possible);
    CHECK_FALSE(fam.sheets[0].contains_image.has_value());
}

TEST_CASE("both sheets through a real-graph image are recovered") {
    auto src = Ring::make({{"z1", true}, {"z2", true}, {"w", true}});
    auto f = HoloMap::make(src, {P(src, "z1"), P(src, "z2"), P(src, "w")});
    auto tgt = Ring::make({{"Z1", true}, {"Z2", true}, {"W", true}});

    auto r1 = P(src, "i/2*(conj(w) - w)");
    auto r2 = P(src, "1/2*(w + conj(w) - z1^2 - conj(z1)^2 - z2^2 - conj(z2)^2)");
    auto image = ManifoldSpec::graph(tgt, tgt->find("W"),
                                     P(tgt, "1/2*(Z1^2 + conj(Z1)^2 + Z2^2 + conj(Z2)^2)"));

    auto fam = leviflat_hypervarieties(f, {r1, r2}, tgt,
                                       {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}},
                                       image);
    CHECK(fam.multiplicity.value == 1);
    CHECK(fam.directions_independent);
    REQUIRE(fam.sheets.size() == 2);
    CHECK(fam.sheets[0].sheet == P(tgt, "2*i*(conj(W) - W)"));
    CHECK(fam.sheets[1].sheet ==
          P(tgt, "2*(Z1^2 + conj(Z1)^2 + Z2^2 + conj(Z2)^2 - W - conj(W))"));
    for (const auto& sheet : fam.sheets) {
        CHECK(sheet.self_conjugate);
        REQUIRE(sheet.contains_image.has_value());
        CHECK(*sheet.contains_image);
    }

    // Dependent directions are flagged but still produce sheets.
    auto dep = leviflat_hypervarieties(f, {r1, r2}, tgt,
                                       {{Rational(1), Rational(0)}, {Rational(2), Rational(0)}});
    CHECK_FALSE(dep.directions_independent);
    CHECK(dep.sheets[0].sheet == dep.sheets[1].sheet);
}

TEST_CASE("a two-sheeted image lies on degree-eight hypervarieties") {
    // Source graph w = conj(z2) + i z1 conj(z1) + (z1 conj(z1))^2 pushed by
    // (z1, z2, w) -> (z1, z2, w^2): the image is the graph of
    // (conj(Z2) + i Z1 conj(Z1) + (Z1 conj(Z1))^2)^2.
    auto src = Ring::make({{"z1", true}, {"z2", true}, {"w", true}});
    auto f = HoloMap::make(src, {P(src, "z1"), P(src, "z2"), P(src, "w^2")});
    auto tgt = Ring::make({{"Z1", true}, {"Z2", true}, {"Z3", true}});

    auto rho_src = P(src, "conj(z2) + i*z1*conj(z1) + z1^2*conj(z1)^2");
    auto d = P(src, "w") - rho_src;
    auto r1 = (d - d.conj()).scaled(GaussianRational(Rational(0), Rational(-1, 2)));  // Im
    auto r2 = (d + d.conj()).scaled(GaussianRational(Rational(1, 2)));                // Re
    REQUIRE(r1.is_real_valued());
    REQUIRE(r2.is_real_valued());

    auto rho_tilde = P(tgt, "(conj(Z2) + i*Z1*conj(Z1) + Z1^2*conj(Z1)^2)^2");
    auto image = ManifoldSpec::graph(tgt, tgt->find("Z3"), rho_tilde);

    auto fam = leviflat_hypervarieties(f, {r1, r2}, tgt,
                                       {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}},
                                       image);
    CHECK(fam.multiplicity.kind == VanishingOrder::FINITE);
    CHECK(fam.multiplicity.value == 2);
    CHECK(fam.directions_independent);
    REQUIRE(fam.sheets.size() == 2);

    auto z3 = P(tgt, "Z3");
    auto z3c = P(tgt, "conj(Z3)");
    auto four = P(tgt, "4*Z3*conj(Z3)");
    auto D = P(tgt, "Z2 - conj(Z2) - 2*i*Z1*conj(Z1)");
    auto inner1 = D * D - z3 - z3c;
    auto h1 = inner1 * inner1 - four;
    CHECK(fam.sheets[0].sheet.scaled(gr(8)) == h1);

    auto S = P(tgt, "Z2 + conj(Z2) + 2*Z1^2*conj(Z1)^2");
    auto inner2 = S * S - z3 - z3c;
    auto h2 = inner2 * inner2 - four;
    CHECK(fam.sheets[1].sheet.scaled(gr(8)) == h2);

    for (const auto& sheet : fam.sheets) {
        CHECK(sheet.self_conjugate);
        REQUIRE(sheet.contains_image.has_value());
        CHECK(*sheet.contains_image);
    }
}

TEST_CASE("hypervariety construction validates its input") {
    auto src = Ring::make({{"z", true}, {"w", true}});
    auto f = HoloMap::make(src, {P(src, "z"), P(src, "w")});
    auto tgt = Ring::make({{"Z", true}, {"W", true}});
    auto r1 = P(src, "i/2*(conj(w) - w)");

    CHECK_THROWS_AS(leviflat_hypervarieties(f, {}, tgt, {{Rational(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(leviflat_hypervarieties(f, {r1}, tgt, {}), std::invalid_argument);
    CHECK_THROWS_AS(leviflat_hypervarieties(f, {r1}, tgt, {{Rational(1), Rational(2)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(leviflat_hypervarieties(f, {r1}, tgt, {{Rational(0)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(leviflat_hypervarieties(f, {P(src, "w")}, tgt, {{Rational(1)}}),
                    std::invalid_argument);

    // Collapsed map: the fibre through 0 has positive dimension.
    auto squash = HoloMap::make(src, {P(src, "z"), P(src, "z")});
    CHECK_THROWS_AS(leviflat_hypervarieties(squash, {r1}, tgt, {{Rational(1)}}),
                    std::domain_error);

    // The image manifold must live in the target ring.
    auto wrong = ManifoldSpec::graph(src, src->find("w"), P(src, "z*conj(z)"));
    CHECK_THROWS_AS(leviflat_hypervarieties(f, {r1}, tgt, {{Rational(1)}}, wrong),
                    std::invalid_argument);
}
