// Shared complexes used across the test suites.
#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <vector>

#include "stpl/plmaps.hpp"

#include "stpl/complex.hpp"

namespace fixtures {

using stpl::DownComplex;
using stpl::Point;
using stpl::Rational;

inline Point<Rational> pt(Rational x, Rational y) { return {x, y}; }

inline stpl::ComplexPtr share(DownComplex c) { return std::make_shared<DownComplex>(std::move(c)); }

inline DownComplex standard_triangle() {
    return DownComplex::make(2, {pt(0, 0), pt(1, 0), pt(0, 1)}, {{0, 1, 2}}, true);
}

/// Unit square split by the diagonal from (1,0) to (0,1).
inline DownComplex split_square() {
    return DownComplex::make(2, {pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)}, {{0, 1, 2}, {1, 2, 3}}, true);
}

/// Square annulus between [-1,1]^2 and [-2,2]^2, 8 triangles.
inline DownComplex annulus() {
    std::vector<Point<Rational>> p = {pt(-1, -1), pt(1, -1), pt(1, 1), pt(-1, 1),
                                      pt(-2, -2), pt(2, -2), pt(2, 2), pt(-2, 2)};
    std::vector<std::vector<stpl::VertexId>> t;
    for (stpl::VertexId i = 0; i < 4; ++i) {
        stpl::VertexId j = (i + 1) % 4;
        t.push_back({i, j, 4 + i});
        t.push_back({j, 4 + i, 4 + j});
    }
    return DownComplex::make(2, p, t, true);
}

/// Minimal 7-vertex torus, realized on the vertices of a 6-simplex in R^6.
inline DownComplex torus7() {
    std::vector<Point<Rational>> p;
    for (int i = 0; i < 7; ++i) {
        Point<Rational> q(6, Rational(0));
        if (i > 0) q[static_cast<size_t>(i - 1)] = Rational(1);
        p.push_back(q);
    }
    std::vector<std::vector<stpl::VertexId>> t;
    for (stpl::VertexId i = 0; i < 7; ++i) {
        t.push_back({i, (i + 1) % 7, (i + 3) % 7});
        t.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return DownComplex::make(6, p, t, true);
}

/// [0,2] with vertices 0, 1, 2.
inline DownComplex interval() {
    return DownComplex::make(1, {{Rational(0)}, {Rational(1)}, {Rational(2)}}, {{0, 1}, {1, 2}}, true);
}

/// Hexagon circle in the plane.
inline DownComplex hexagon() {
    std::vector<Point<Rational>> p = {pt(2, 0), pt(1, 2), pt(-1, 2), pt(-2, 0), pt(-1, -2), pt(1, -2)};
    std::vector<std::vector<stpl::VertexId>> e;
    for (stpl::VertexId i = 0; i < 6; ++i) e.push_back({i, (i + 1) % 6});
    return DownComplex::make(2, p, e, true);
}

/// n-gon circle domain: vertex i at a rational point of the square [-1,1]^2 boundary.
inline DownComplex polygon(int n) {
    std::vector<Point<Rational>> p;
    for (int i = 0; i < n; ++i) {
        // walk the square boundary with perimeter 8
        Rational s = Rational(8 * i, n);
        Rational x, y;
        if (s < Rational(2)) { x = Rational(1); y = Rational(-1) + s; }
        else if (s < Rational(4)) { x = Rational(3) - s; y = Rational(1); }
        else if (s < Rational(6)) { x = Rational(-1); y = Rational(5) - s; }
        else { x = s - Rational(7); y = Rational(-1); }
        p.push_back(pt(x, y));
    }
    std::vector<std::vector<stpl::VertexId>> e;
    for (int i = 0; i < n; ++i)
        e.push_back({static_cast<stpl::VertexId>(i), static_cast<stpl::VertexId>((i + 1) % n)});
    return DownComplex::make(2, p, e, true);
}

/// [-2,2]^2 integer grid, each unit square split by its (x,y)->(x+1,y+1) diagonal.
inline DownComplex grid_square(int half = 2) {
    std::vector<Point<Rational>> p;
    auto id = [&](int x, int y) { return static_cast<stpl::VertexId>((x + half) * (2 * half + 1) + (y + half)); };
    for (int x = -half; x <= half; ++x)
        for (int y = -half; y <= half; ++y) p.push_back(pt(x, y));
    std::vector<std::vector<stpl::VertexId>> t;
    for (int x = -half; x < half; ++x)
        for (int y = -half; y < half; ++y) {
            t.push_back({id(x, y), id(x + 1, y), id(x + 1, y + 1)});
            t.push_back({id(x, y), id(x, y + 1), id(x + 1, y + 1)});
        }
    return DownComplex::make(2, p, t, true);
}

/// Walk order of the hexagon / polygon vertices (counterclockwise).
inline std::vector<Point<Rational>> hexagon_walk() {
    return {pt(2, 0), pt(1, 2), pt(-1, 2), pt(-2, 0), pt(-1, -2), pt(1, -2)};
}

inline std::vector<Point<Rational>> polygon_walk(int n) {
    std::vector<Point<Rational>> out;
    for (int i = 0; i < n; ++i) {
        Rational s = Rational(8 * i, n);
        if (s < Rational(2)) out.push_back(pt(1, Rational(-1) + s));
        else if (s < Rational(4)) out.push_back(pt(Rational(3) - s, 1));
        else if (s < Rational(6)) out.push_back(pt(-1, Rational(5) - s));
        else out.push_back(pt(s - Rational(7), -1));
    }
    return out;
}

inline DownComplex circle_from_walk(const std::vector<Point<Rational>>& walk) {
    std::vector<std::vector<stpl::VertexId>> e;
    auto n = static_cast<stpl::VertexId>(walk.size());
    for (stpl::VertexId i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
    return DownComplex::make(walk.front().size(), walk, e, true);
}

/// Point at arc parameter t (in edge units, taken mod the walk length).
inline Point<Rational> arc_point(const std::vector<Point<Rational>>& walk, Rational t) {
    Rational n(static_cast<long>(walk.size()));
    while (t < Rational(0)) t += n;
    while (!(t < n)) t -= n;
    long i = 0;
    while (!(t < Rational(i + 1))) ++i;
    Rational frac = t - Rational(i);
    const auto& a = walk[static_cast<size_t>(i)];
    const auto& b = walk[static_cast<size_t>((i + 1) % static_cast<long>(walk.size()))];
    Point<Rational> out;
    for (size_t k = 0; k < a.size(); ++k) out.push_back(a[k] + frac * (b[k] - a[k]));
    return out;
}

/// Degree-d circle map: the i-th vertex of the domain walk goes to arc
/// parameter d * m * i / n + shift of the codomain walk (m codomain edges).
inline stpl::DownMap circle_map(const std::vector<Point<Rational>>& dom_walk,
                                const std::vector<Point<Rational>>& cod_walk, long d, Rational shift = Rational(0)) {
    auto dom = std::make_shared<DownComplex>(circle_from_walk(dom_walk));
    auto cod = std::make_shared<DownComplex>(circle_from_walk(cod_walk));
    std::vector<Point<Rational>> images(dom_walk.size());
    Rational n(static_cast<long>(dom_walk.size())), m(static_cast<long>(cod_walk.size()));
    for (size_t i = 0; i < dom_walk.size(); ++i) {
        Rational t = Rational(d) * m * Rational(static_cast<long>(i)) / n + shift;
        images[*dom->find_vertex(dom_walk[i])] = arc_point(cod_walk, t);
    }
    return stpl::DownMap::make(dom, cod, images);
}

/// Arc parameter of a point on the walk (oracle, by direct search over edges).
inline Rational arc_of(const std::vector<Point<Rational>>& walk, const Point<Rational>& p) {
    for (size_t i = 0; i < walk.size(); ++i) {
        const auto& a = walk[i];
        const auto& b = walk[(i + 1) % walk.size()];
        // p = a + s (b - a) with 0 <= s < 1
        Rational s;
        bool set = false, ok = true;
        for (size_t k = 0; k < a.size(); ++k) {
            Rational d = b[k] - a[k];
            if (d.is_zero()) {
                ok = ok && p[k] == a[k];
                continue;
            }
            Rational sk = (p[k] - a[k]) / d;
            if (set && sk != s) ok = false;
            s = sk;
            set = true;
        }
        if (ok && set && s >= Rational(0) && s < Rational(1)) return Rational(static_cast<long>(i)) + s;
    }
    throw std::runtime_error("point not on walk");
}

/// Winding of a circle map between planar walks (oracle): domain vertices in
/// walk order, image arc steps wrapped to the short way round, summed.
inline Rational winding_oracle(const std::vector<Point<Rational>>& dom_walk, const std::vector<Point<Rational>>& cod_walk,
                               const std::vector<Point<Rational>>& dom_pts, const std::vector<Point<Rational>>& images) {
    std::vector<std::pair<Rational, Rational>> order;
    for (size_t i = 0; i < dom_pts.size(); ++i)
        order.emplace_back(arc_of(dom_walk, dom_pts[i]), arc_of(cod_walk, images[i]));
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Rational m(static_cast<long>(cod_walk.size())), half = m / Rational(2), total(0);
    for (size_t i = 0; i < order.size(); ++i) {
        Rational d = order[(i + 1) % order.size()].second - order[i].second;
        while (d >= half) d -= m;
        while (d < -half) d += m;
        total += d;
    }
    return total / m;
}

/// The complex with every coordinate multiplied by (1 + eps).
inline stpl::UpComplex inflate(const DownComplex& c) {
    using stpl::InfScalar;
    std::vector<Point<InfScalar>> pts;
    for (const auto& p : c.points()) {
        Point<InfScalar> q;
        for (const auto& x : p) q.push_back(InfScalar(x) * (InfScalar(1) + InfScalar::eps()));
        pts.push_back(q);
    }
    std::vector<std::vector<stpl::VertexId>> simps;
    for (auto m : c.maximal()) simps.push_back(c.simplex(m));
    return stpl::UpComplex::make(c.ambient_dim(), pts, simps, true);
}

}  // namespace fixtures
