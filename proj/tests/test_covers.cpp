#include <doctest.h>

#include <algorithm>
#include <memory>

#include "fixtures.hpp"
#include "stpl/covers.hpp"

using namespace stpl;
using fixtures::pt;
using fixtures::share;

namespace {

// Barycentric coordinate of corner (cx, cy) at (x, y) in the split unit square.
Rational corner_weight(int cx, int cy, const Rational& x, const Rational& y) {
    bool lower = x + y <= Rational(1);
    if (lower) {
        if (cx == 0 && cy == 0) return Rational(1) - x - y;
        if (cx == 1 && cy == 0) return x;
        if (cx == 0 && cy == 1) return y;
        return Rational(0);
    }
    if (cx == 1 && cy == 1) return x + y - Rational(1);
    if (cx == 1 && cy == 0) return Rational(1) - y;
    if (cx == 0 && cy == 1) return Rational(1) - x;
    return Rational(0);
}

std::vector<Point<Rational>> grid_samples(int n) {
    std::vector<Point<Rational>> out;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) out.push_back(pt(Rational(i, n), Rational(j, n)));
    return out;
}

}  // namespace

TEST_CASE("corner stars of the square meet their edge neighbours") {
    auto sq = share(fixtures::split_square());
    auto cover = vertex_star_cover(sq);
    const int corners[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};  // lex order
    for (size_t e = 0; e < 4; ++e) {
        std::vector<size_t> expect;
        for (size_t f = 0; f < 4; ++f) {
            bool meet = false;
            for (const auto& p : grid_samples(8))
                if (corner_weight(corners[e][0], corners[e][1], p[0], p[1]) > Rational(0) &&
                    corner_weight(corners[f][0], corners[f][1], p[0], p[1]) > Rational(0))
                    meet = true;
            if (meet) expect.push_back(f);
        }
        REQUIRE(cover.centers[e] == pt(corners[e][0], corners[e][1]));
        CHECK(cover.star_of(e) == expect);
    }
    CHECK(cover.star_of(0).size() == 3);
}

TEST_CASE("star membership agrees with barycentric weights") {
    auto sq = share(fixtures::split_square());
    auto cover = vertex_star_cover(sq);
    const int corners[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};  // lex order
    for (const auto& p : grid_samples(12))
        for (size_t e = 0; e < 4; ++e)
            CHECK(cover.contains(e, p) == (corner_weight(corners[e][0], corners[e][1], p[0], p[1]) > Rational(0)));
}

TEST_CASE("barycentric refinement of the corner cover refines but does not star-refine") {
    auto sq = share(fixtures::split_square());
    auto coarse = vertex_star_cover(sq);
    auto fine_c = share(barycentric_subdivision(*sq).complex);
    auto fine = vertex_star_cover(fine_c);
    // Oracle: each fine star's sample barycenters sit in one corner star.
    bool oracle_refines = true;
    const int corners[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};  // lex order
    for (size_t i = 0; i < fine.size(); ++i) {
        std::vector<Point<Rational>> samples;
        for (size_t s = 0; s < fine_c->size(); ++s)
            if (fine.contains(i, fine_c->barycenter(fine_c->simplex(s))))
                samples.push_back(fine_c->barycenter(fine_c->simplex(s)));
        bool any = false;
        for (const auto& c : corners) {
            bool all = true;
            for (const auto& p : samples) all = all && corner_weight(c[0], c[1], p[0], p[1]) > Rational(0);
            any = any || all;
        }
        oracle_refines = oracle_refines && any;
    }
    auto r = refine_check(fine, coarse);
    CHECK(r.refines == oracle_refines);
    CHECK(r.refines);
    CHECK_FALSE(r.star_refines);
    CHECK(is_refinement(*fine_c, *sq));
    CHECK_FALSE(is_refinement(*sq, *fine_c));
}

TEST_CASE("overlapping halves of an interval") {
    auto iv = share(fixtures::interval());
    auto v = vertex_star_cover(iv);
    auto r = refine_check(v, v);
    CHECK(r.refines);
    CHECK_FALSE(r.star_refines);  // star of the middle element is all of [0,2]
    auto halves = StarCover::make(iv, {{Rational(0)}, {Rational(2)}, {Rational(1)}});
    CHECK(halves.contains(2, {Rational(1, 2)}));
    CHECK_FALSE(halves.contains(0, {Rational(1)}));
}

TEST_CASE("incompatible carriers are rejected") {
    auto a = vertex_star_cover(share(fixtures::split_square()));
    auto b = vertex_star_cover(share(DownComplex::make(2, {pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)},
                                                        {{0, 1, 3}, {0, 2, 3}}, true)));
    CHECK_THROWS_AS(refine_check(a, b), IncompatibleCarriers);
}

TEST_CASE("hull containment in a star") {
    auto sq = share(fixtures::split_square());
    auto cover = vertex_star_cover(sq);
    // element 2 is the star of (1,0)
    CHECK(cover.contains_hull(2, {pt(Rational(1, 4), Rational(1, 8)), pt(Rational(7, 8), Rational(3, 4))}));
    CHECK_FALSE(cover.contains_hull(2, {pt(Rational(1, 4), Rational(1, 8)), pt(Rational(0), Rational(1))}));
    CHECK(cover.contains_hull(0, {pt(Rational(9, 10), Rational(0)), pt(Rational(0), Rational(9, 10))}));

    // Fan with a reflex corner: the star of the apex is not convex.
    auto fan = share(DownComplex::make(2, {pt(0, 0), pt(2, 0), pt(1, 2), pt(1, Rational(1, 2))},
                                       {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}}, true));
    auto apex = StarCover::make(fan, {pt(1, 2)});
    auto p1 = pt(Rational(1, 2), Rational(3, 10));
    auto p2 = pt(Rational(3, 2), Rational(3, 10));
    CHECK(apex.contains(0, p1));
    CHECK(apex.contains(0, p2));
    CHECK_FALSE(apex.contains(0, pt(1, Rational(3, 10))));
    CHECK_FALSE(apex.contains_hull(0, {p1, p2}));
    CHECK(apex.contains_hull(0, {p1, pt(1, 1)}));
}

namespace {

// Pairwise and triple intersections of vertex stars are the stars of their
// common simplex; the witness from star_intersection must carry it.
void audit_goodness(const StarCover& c) {
    const auto& k = *c.carrier;
    // simplexes containing a vertex set, by intersecting per-vertex lists
    std::vector<std::vector<size_t>> with(k.num_vertices());
    for (size_t s = 0; s < k.size(); ++s)
        for (auto v : k.simplex(s)) with[v].push_back(s);
    auto containing = [&](const Simplex& need) {
        std::vector<size_t> out = with[need[0]];
        for (size_t i = 1; i < need.size(); ++i) {
            std::vector<size_t> next;
            std::set_intersection(out.begin(), out.end(), with[need[i]].begin(), with[need[i]].end(),
                                  std::back_inserter(next));
            out = std::move(next);
        }
        return out;
    };
    for (size_t a = 0; a < c.size(); ++a)
        for (size_t b = a + 1; b < c.size(); ++b) {
            Simplex ab = {*k.find_vertex(c.centers[a]), *k.find_vertex(c.centers[b])};
            std::sort(ab.begin(), ab.end());
            auto z = star_intersection(c.centers[a], c.centers[b], k);
            auto both = containing(ab);
            CHECK(z.has_value() == !both.empty());
            if (!z) continue;

            CHECK(containing(k.carrier(*z)) == both);
            for (size_t d = b + 1; d < c.size(); ++d) {
                Simplex abd = ab;
                abd.push_back(*k.find_vertex(c.centers[d]));
                std::sort(abd.begin(), abd.end());
                if (containing({abd[0], abd[1]}).empty() || containing({abd[1], abd[2]}).empty()) continue;
                auto z3 = star_intersection(*z, c.centers[d], k);
                auto all3 = containing(abd);
                CHECK(z3.has_value() == !all3.empty());
                if (z3) CHECK(containing(k.carrier(*z3)) == all3);
            }
        }
}

OpenRegion punctured_square() {
    auto base = share(fixtures::grid_square(1));
    auto centre = *base->find(Simplex{*base->find_vertex(pt(0, 0))});
    return OpenRegion{base, Subcomplex{{centre}}};
}

}  // namespace

TEST_CASE("good cover of the whole square") {
    auto g = good_cover(OpenRegion::whole(share(fixtures::split_square())), nullptr, 1);
    CHECK(g.rounds == 1);
    CHECK(g.cover.carrier->num_vertices() == 4 + 5 + 2);
    CHECK(g.cover.size() == 11);
    audit_goodness(g.cover);
    for (size_t s = 0; s < g.cover.carrier->size(); ++s)
        CHECK(g.cover.covers(g.cover.carrier->barycenter(g.cover.carrier->simplex(s))));
}

TEST_CASE("good cover of the punctured square") {
    auto region = punctured_square();
    auto outer = region.base->points();
    outer.erase(std::find(outer.begin(), outer.end(), pt(0, 0)));
    auto v = StarCover::make(region.base, outer);
    auto g = good_cover(region, &v, 3);
    REQUIRE(g.chain.size() == 3);
    MESSAGE("rounds " << g.rounds << " elements " << g.cover.size() << " carrier " << g.cover.carrier->size());
    for (size_t e = 0; e < g.cover.size(); ++e) {
        CHECK_FALSE(g.cover.contains(e, pt(0, 0)));
        CHECK(region.contains(g.cover.centers[e]));
    }
    // Every sample at distance >= 1/3 from the puncture is covered.
    for (int i = -24; i <= 24; ++i)
        for (int j = -24; j <= 24; ++j) {
            auto p = pt(Rational(i, 24), Rational(j, 24));
            if (linf(p, pt(0, 0)) >= Rational(1, 3)) CHECK(g.cover.covers(p));
        }
    // Nested chain.
    for (size_t i = 1; i < g.chain.size(); ++i)
        for (const auto& s : g.chain[i - 1])
            CHECK(std::find(g.chain[i].begin(), g.chain[i].end(), s) != g.chain[i].end());
    // Each element lies in a target element.
    CHECK(refine_check(g.cover, v).refines);
    audit_goodness(g.cover);
}

TEST_CASE("good cover stages are prefixes") {
    auto region = punctured_square();
    auto g2 = good_cover(region, nullptr, 2);
    auto g3 = good_cover(region, nullptr, 3);
    REQUIRE(g3.chain.size() == 3);
    CHECK(g3.chain[0] == g2.chain[0]);
    CHECK(g3.chain[1] == g2.chain[1]);
    CHECK(g3.rounds >= g2.rounds);
}

TEST_CASE("subdivision cap is enforced") {
    auto region = punctured_square();
    auto outer = region.base->points();
    outer.erase(std::find(outer.begin(), outer.end(), pt(0, 0)));
    auto v = StarCover::make(region.base, outer);
    CHECK_THROWS_AS(good_cover(region, &v, 3, 1), SubdivisionCapExceeded);
}

TEST_CASE("semi-good refinement of the hexagon cover") {
    auto hex = share(fixtures::hexagon());
    auto v = vertex_star_cover(hex);
    auto region = OpenRegion::whole(hex);
    auto w = semi_good_refinement(v, region);
    CHECK(w.kind == CoverKind::semi_good);
    REQUIRE(w.outer.size() == w.size());
    for (size_t e = 0; e < w.size(); ++e) CHECK(v.contains_closed_element(w.outer[e], w, e));
    CHECK(refine_check(w, v).refines);
    for (size_t s = 0; s < w.carrier->size(); ++s)
        CHECK(w.covers(w.carrier->barycenter(w.carrier->simplex(s))));
}

TEST_CASE("two-step good chain on the circle") {
    auto tri = share(DownComplex::make(2, {pt(0, 0), pt(4, 0), pt(0, 4)}, {{0, 1}, {1, 2}, {0, 2}}, true));
    auto u = vertex_star_cover(tri);
    auto w2 = n_good_refinement(u, OpenRegion::whole(tri), 2);
    CHECK(good_level(w2) == 2);
    const StarCover* prev = &u;
    std::vector<const StarCover*> links = {&chain_step(w2, 1), &chain_step(w2, 0)};
    for (auto w : links) {
        const auto& v = *w->witness;
        CHECK(v.witness->carrier == prev->carrier);
        CHECK(refine_check(v, *prev).star_refines);
        CHECK(refine_check(*w, v).refines);
        for (size_t e = 0; e < w->size(); ++e) CHECK(v.contains_closed_element(w->outer[e], *w, e));
        prev = w;
    }
    CHECK_THROWS_AS(chain_step(w2, 2), InvalidInput);
    CHECK(good_level(u) == 0);
}
