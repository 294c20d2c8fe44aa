#include "stpl/covers.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace stpl {

namespace {

bool includes(const Simplex& big, const Simplex& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Simplex set_union(const Simplex& a, const Simplex& b) {
    Simplex out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::pair<Point<Rational>, Point<Rational>> bbox(const std::vector<Point<Rational>>& pts) {
    Point<Rational> lo = pts.front(), hi = pts.front();
    for (const auto& p : pts)
        for (size_t i = 0; i < p.size(); ++i) {
            if (p[i] < lo[i]) lo[i] = p[i];
            if (hi[i] < p[i]) hi[i] = p[i];
        }
    return {lo, hi};
}

}  // namespace

bool OpenRegion::contains(const Point<Rational>& x) const {
    auto c = base->try_carrier(x);
    if (!c) return false;
    return !excluded.contains(*base->find(*c));
}

std::vector<std::vector<Point<Rational>>> OpenRegion::excluded_cells() const {
    std::vector<std::vector<Point<Rational>>> out;
    for (auto i : excluded.members) {
        bool maximal = true;
        for (auto j : excluded.members) {
            if (j == i) continue;
            const auto& a = base->simplex(i);
            const auto& b = base->simplex(j);
            if (b.size() > a.size() && includes(b, a)) { maximal = false; break; }
        }
        if (maximal) out.push_back(simplex_points(*base, base->simplex(i)));
    }
    return out;
}

std::optional<Rational> OpenRegion::distance_to_frontier(const std::vector<Point<Rational>>& cell) const {
    auto cells = excluded_cells();
    if (cells.empty()) return std::nullopt;
    std::optional<Rational> best;
    for (const auto& q : cells) {
        Rational d = (cell.size() == 1 && q.size() == 1) ? linf(cell[0], q[0]) : simplex_distance(cell, q);
        if (!best || d < *best) best = d;
    }
    return best;
}

StarCover StarCover::make(ComplexPtr carrier, std::vector<Point<Rational>> centers) {
    StarCover c;
    c.carrier = std::move(carrier);
    c.centers = std::move(centers);
    for (const auto& x : c.centers) c.cores.push_back(c.carrier->carrier(x));
    for (size_t e = 0; e < c.cores.size(); ++e) c.by_core[c.cores[e]].push_back(e);
    return c;
}

std::vector<size_t> StarCover::elements_with_core_in(const Simplex& s) const {
    std::vector<size_t> out;
    if (s.size() > 20) throw InvalidInput("simplex too large for face enumeration");
    for (unsigned mask = 1; mask < (1u << s.size()); ++mask) {
        Simplex face;
        for (size_t i = 0; i < s.size(); ++i)
            if (mask & (1u << i)) face.push_back(s[i]);
        auto it = by_core.find(face);
        if (it != by_core.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool StarCover::contains(size_t e, const Point<Rational>& x) const {
    auto c = carrier->try_carrier(x);
    return c && includes(*c, cores[e]);
}

bool StarCover::contains_hull(size_t e, const std::vector<Point<Rational>>& pts) const {
    const auto& core = cores[e];
    Simplex all;
    for (const auto& p : pts) {
        auto c = carrier->try_carrier(p);
        if (!c || !includes(*c, core)) return false;
        all = set_union(all, *c);
    }
    if (pts.size() <= 1 || carrier->find(all)) return true;
    auto [lo, hi] = bbox(pts);
    for (auto m : carrier->maximal_near(lo, hi)) {
        const auto& ms = carrier->simplex(m);
        if (!includes(ms, core)) {
            if (closed_simplexes_meet(pts, simplex_points(*carrier, ms))) return false;
            continue;
        }
        for (auto v : core) {
            Simplex face;
            for (auto u : ms)
                if (u != v) face.push_back(u);
            if (face.empty()) continue;
            if (closed_simplexes_meet(pts, simplex_points(*carrier, face))) return false;
        }
    }
    return true;
}

std::vector<size_t> StarCover::elements_containing_hull(const std::vector<Point<Rational>>& pts) const {
    std::vector<size_t> out;
    for (size_t e = 0; e < size(); ++e)
        if (contains_hull(e, pts)) out.push_back(e);
    return out;
}

std::optional<size_t> StarCover::find_hull(const std::vector<Point<Rational>>& pts) const {
    if (pts.empty()) return std::nullopt;
    auto c0 = carrier->try_carrier(pts[0]);
    if (!c0) return std::nullopt;
    for (auto e : elements_with_core_in(*c0))
        if (contains_hull(e, pts)) return e;
    return std::nullopt;
}

bool StarCover::contains_element(size_t e, const StarCover& other, size_t f) const {
    if (carrier == other.carrier || carrier->same_as(*other.carrier))
        return includes(other.cores[f], cores[e]);
    if (carrier->size() >= other.carrier->size()) {
        // This carrier is the finer one: sample its open simplexes.
        for (size_t i = 0; i < carrier->size(); ++i) {
            auto x = carrier->barycenter(carrier->simplex(i));
            if (other.contains(f, x) && !includes(carrier->simplex(i), cores[e])) return false;
        }
        return true;
    }
    for (auto i : other.carrier->cofaces(other.cores[f]))
        if (!contains(e, other.carrier->barycenter(other.carrier->simplex(i)))) return false;
    return true;
}

bool StarCover::contains_closed_element(size_t e, const StarCover& other, size_t f) const {
    for (auto i : other.carrier->cofaces(other.cores[f]))
        if (!contains_hull(e, simplex_points(*other.carrier, other.carrier->simplex(i)))) return false;
    return true;
}

std::vector<size_t> StarCover::star_of(size_t e) const {
    std::set<size_t> out;
    for (auto c : carrier->cofaces(cores[e]))
        for (auto f : elements_with_core_in(carrier->simplex(c))) out.insert(f);
    return {out.begin(), out.end()};
}

std::vector<size_t> StarCover::star_of_points(const std::vector<Point<Rational>>& pts) const {
    std::vector<size_t> out;
    for (size_t f = 0; f < size(); ++f)
        for (const auto& p : pts)
            if (contains(f, p)) { out.push_back(f); break; }
    return out;
}

bool StarCover::covers(const Point<Rational>& x) const {
    auto c = carrier->try_carrier(x);
    return c && !elements_with_core_in(*c).empty();
}

bool is_refinement(const DownComplex& fine, const DownComplex& coarse) {
    if (fine.ambient_dim() != coarse.ambient_dim()) return false;
    for (const auto& p : coarse.points())
        if (!fine.find_vertex(p)) return false;
    std::vector<Simplex> vc(fine.num_vertices());
    for (VertexId v = 0; v < fine.num_vertices(); ++v) {
        auto c = coarse.try_carrier(fine.point(v));
        if (!c) return false;
        vc[v] = *c;
    }
    for (size_t i = 0; i < fine.size(); ++i) {
        const auto& s = fine.simplex(i);
        auto c = coarse.try_carrier(fine.barycenter(s));
        if (!c) return false;
        for (auto v : s)
            if (!includes(*c, vc[v])) return false;
    }
    // Same underlying set: every coarse maximal simplex is filled by fine simplexes.
    std::vector<Rational> vol(coarse.size(), Rational(0));
    for (size_t i = 0; i < fine.size(); ++i) {
        const auto& s = fine.simplex(i);
        auto c = *coarse.find(coarse.carrier(fine.barycenter(s)));
        if (coarse.simplex(c).size() != s.size()) continue;
        vol[c] += relative_volume(simplex_points(coarse, coarse.simplex(c)), simplex_points(fine, s));
    }
    for (auto m : coarse.maximal())
        if (vol[m] != Rational(1)) return false;
    return true;
}

namespace {

void require_compatible(const StarCover& u, const StarCover& v) {
    if (u.carrier == v.carrier || u.carrier->same_as(*v.carrier)) return;
    const auto& a = *u.carrier;
    const auto& b = *v.carrier;
    bool ok = a.size() >= b.size() ? is_refinement(a, b) : is_refinement(b, a);
    if (!ok) throw IncompatibleCarriers("cover carriers are not subdivisions of one another");
}

}  // namespace

RefineReport refine_check(const StarCover& u, const StarCover& v) {
    require_compatible(u, v);
    RefineReport r;
    // inside[i]: v-elements containing u-element i. A v-element containing
    // St(core_i) contains the center of element i.
    std::vector<std::vector<size_t>> inside(u.size());
    r.refines = true;
    for (size_t i = 0; i < u.size(); ++i) {
        auto c = v.carrier->try_carrier(u.centers[i]);
        if (c)
            for (auto j : v.elements_with_core_in(*c))
                if (v.contains_element(j, u, i)) inside[i].push_back(j);
        r.refines = r.refines && !inside[i].empty();
    }
    r.star_refines = r.refines;
    for (size_t i = 0; i < u.size() && r.star_refines; ++i) {
        std::vector<size_t> common = inside[i];
        for (auto f : u.star_of(i)) {
            std::vector<size_t> next;
            std::set_intersection(common.begin(), common.end(), inside[f].begin(), inside[f].end(),
                                  std::back_inserter(next));
            common = std::move(next);
            if (common.empty()) break;
        }
        r.star_refines = !common.empty();
    }
    return r;
}

StarCover vertex_star_cover(ComplexPtr carrier) {
    auto pts = carrier->points();
    return StarCover::make(std::move(carrier), std::move(pts));
}

namespace {

// Iterated subdivision of a fixed complex with parents composed into it.
struct Tower {
    const DownComplex* base;
    Subdivision<Rational> cur;
    explicit Tower(const DownComplex& k) : base(&k), cur{k, {}} {
        cur.parent.resize(k.size());
        for (size_t i = 0; i < k.size(); ++i) cur.parent[i] = i;
    }
    void step() {
        auto next = barycentric_subdivision(cur.complex);
        for (auto& p : next.parent) p = cur.parent[p];
        cur = std::move(next);
    }
    // carrier in the base of each fine vertex
    std::vector<Simplex> vertex_carriers() const {
        std::vector<Simplex> out(cur.complex.num_vertices());
        for (VertexId v = 0; v < out.size(); ++v)
            out[v] = base->simplex(cur.parent[*cur.complex.find(Simplex{v})]);
        return out;
    }
    std::vector<std::vector<VertexId>> neighbours() const {
        std::vector<std::set<VertexId>> nb(cur.complex.num_vertices());
        for (const auto& s : cur.complex.simplexes())
            for (auto a : s)
                for (auto b : s) nb[a].insert(b);
        std::vector<std::vector<VertexId>> out;
        for (auto& n : nb) out.emplace_back(n.begin(), n.end());
        return out;
    }
};

// Fine vertices inside the region and the union of v.
std::vector<char> candidates(const Tower& t, const std::vector<Simplex>& vc, const StarCover& v,
                             const OpenRegion& region) {
    std::vector<char> out(vc.size(), 0);
    for (VertexId w = 0; w < vc.size(); ++w) {
        bool in = false;
        for (const auto& core : v.cores)
            if (includes(vc[w], core)) { in = true; break; }
        out[w] = in && (!region.base || region.contains(t.cur.complex.point(w)));
    }
    return out;
}

}  // namespace

StarCover star_refinement(const StarCover& v, const OpenRegion& region, int cap) {
    Tower t(*v.carrier);
    for (int m = 1; m <= cap; ++m) {
        t.step();
        auto vc = t.vertex_carriers();
        auto cand = candidates(t, vc, v, region);
        auto nb = t.neighbours();
        bool ok = true;
        std::vector<Point<Rational>> centers;
        for (VertexId w = 0; w < vc.size() && ok; ++w) {
            if (!cand[w]) continue;
            bool found = false;
            for (size_t j = 0; j < v.size() && !found; ++j) {
                bool all = true;
                for (auto u : nb[w])
                    if (cand[u] && !includes(vc[u], v.cores[j])) { all = false; break; }
                found = all;
            }
            ok = found;
            centers.push_back(t.cur.complex.point(w));
        }
        if (!ok) continue;
        auto out = StarCover::make(std::make_shared<DownComplex>(t.cur.complex), std::move(centers));
        out.kind = CoverKind::star_refining;
        out.witness = std::make_shared<StarCover>(v);
        return out;
    }
    throw SubdivisionCapExceeded("star refinement needs more than " + std::to_string(cap) + " subdivisions");
}

StarCover semi_good_refinement(const StarCover& v, const OpenRegion& region, int cap) {
    Tower t(*v.carrier);
    for (int m = 1; m <= cap; ++m) {
        t.step();
        auto vc = t.vertex_carriers();
        auto cand = candidates(t, vc, v, region);
        auto nb = t.neighbours();
        bool ok = true;
        std::vector<Point<Rational>> centers;
        std::vector<size_t> outer;
        for (VertexId w = 0; w < vc.size() && ok; ++w) {
            if (!cand[w]) continue;
            std::optional<size_t> found;
            for (size_t j = 0; j < v.size() && !found; ++j) {
                bool all = true;
                for (auto u : nb[w])
                    if (!includes(vc[u], v.cores[j])) { all = false; break; }
                if (all) found = j;
            }
            ok = found.has_value();
            if (ok) {
                centers.push_back(t.cur.complex.point(w));
                outer.push_back(*found);
            }
        }
        if (!ok) continue;
        auto out = StarCover::make(std::make_shared<DownComplex>(t.cur.complex), std::move(centers));
        out.kind = CoverKind::semi_good;
        out.outer = std::move(outer);
        out.witness = std::make_shared<StarCover>(v);
        return out;
    }
    throw SubdivisionCapExceeded("semi-good refinement needs more than " + std::to_string(cap) + " subdivisions");
}

StarCover n_good_refinement(const StarCover& u, const OpenRegion& region, int n, int cap) {
    if (n < 1) throw InvalidInput("n-good refinement needs n >= 1");
    auto cur = std::make_shared<StarCover>(u);
    for (int step = 1; step <= n; ++step) {
        auto v = star_refinement(*cur, region, cap);
        auto w = semi_good_refinement(v, region, cap);
        w.kind = CoverKind::n_good;
        w.level = step;
        cur = std::make_shared<StarCover>(std::move(w));
    }
    return *cur;
}

int good_level(const StarCover& c) { return c.kind == CoverKind::n_good ? c.level : 0; }

const StarCover& chain_step(const StarCover& n_good, int k) {
    if (k < 0 || k >= good_level(n_good))
        throw InvalidInput("cover is " + std::to_string(good_level(n_good)) + "-good; step " +
                           std::to_string(k) + " unavailable");
    const StarCover* cur = &n_good;
    for (int i = 0; i < k; ++i) cur = cur->witness->witness.get();
    return *cur;
}

namespace {

struct PointLess {
    bool operator()(const Point<Rational>& a, const Point<Rational>& b) const { return lex_less(a, b); }
};

}  // namespace

GoodCover good_cover(const OpenRegion& region, const StarCover* target, int stage, int cap) {
    if (stage < 1) throw InvalidInput("stage must be >= 1");
    std::optional<StarCover> w;
    if (target) w = star_refinement(*target, region, cap);

    const auto cells = region.excluded_cells();
    std::map<Point<Rational>, std::vector<Rational>, PointLess> dist_cache;
    auto dists = [&](const Point<Rational>& p) -> const std::vector<Rational>& {
        auto it = dist_cache.find(p);
        if (it != dist_cache.end()) return it->second;
        std::vector<Rational> d;
        for (const auto& q : cells) d.push_back(q.size() == 1 ? linf(p, q[0]) : simplex_distance({p}, q));
        return dist_cache.emplace(p, std::move(d)).first->second;
    };
    auto far = [&](const Point<Rational>& p, const Rational& thr) {
        for (const auto& d : dists(p))
            if (d < thr) return false;
        return true;
    };
    // All vertices within thr of one closed excluded cell: the hull is too.
    auto away = [&](const std::vector<Point<Rational>>& pts, const Rational& thr) {
        for (size_t q = 0; q < cells.size(); ++q) {
            bool all = true;
            for (const auto& p : pts)
                if (!(dists(p)[q] < thr)) { all = false; break; }
            if (all) return true;
        }
        return false;
    };

    DownComplex k = *region.base;
    std::vector<char> in_q(k.size(), 0);
    for (auto i : region.excluded.members) in_q[i] = 1;

    GoodCover out;
    auto subdivide = [&](const Subcomplex& hold) {
        auto sd = barycentric_subdivision(k, hold);
        std::vector<char> q2(sd.complex.size());
        for (size_t s = 0; s < q2.size(); ++s) q2[s] = in_q[sd.parent[s]];
        k = std::move(sd.complex);
        in_q = std::move(q2);
    };
    subdivide({});
    out.rounds = 1;
    std::vector<std::vector<Point<Rational>>> held;
    for (int i = 1; i <= stage; ++i) {
        Rational thr(1, i);
        for (;;) {
            std::set<std::vector<Point<Rational>>> held_set(held.begin(), held.end());
            bool ok = true;
            for (size_t s = 0; s < k.size() && ok; ++s) {
                if (in_q[s]) continue;
                auto pts = simplex_points(k, k.simplex(s));
                if (away(pts, thr)) continue;
                bool has_far = false;
                for (const auto& p : pts) has_far = has_far || far(p, thr);
                if (!has_far) ok = false;
                else if (w && k.is_maximal(s) && !held_set.count(pts) && !w->find_hull(pts)) ok = false;
            }
            if (ok) break;
            if (++out.rounds > cap)
                throw SubdivisionCapExceeded("good cover stage " + std::to_string(i) + " exceeded " +
                                             std::to_string(cap) + " subdivision rounds");
            Subcomplex hold;
            for (const auto& h : held) {
                Simplex s;
                for (const auto& p : h) s.push_back(*k.find_vertex(p));
                std::sort(s.begin(), s.end());
                hold.members.push_back(*k.find(s));
            }
            std::sort(hold.members.begin(), hold.members.end());
            subdivide(hold);
        }
        std::vector<std::vector<Point<Rational>>> li;
        for (size_t s = 0; s < k.size(); ++s) {
            if (in_q[s]) continue;
            auto pts = simplex_points(k, k.simplex(s));
            bool ok = true;
            for (const auto& p : pts) ok = ok && far(p, thr);
            if (ok && pts.size() > 1 && !cells.empty()) ok = !(*region.distance_to_frontier(pts) < thr);
            if (ok) li.push_back(std::move(pts));
        }
        std::set<std::vector<Point<Rational>>> li_set(li.begin(), li.end());
        for (const auto& h : held)
            if (!li_set.count(h)) throw std::logic_error("exhaustion is not nested");
        held = li;
        out.chain.push_back(std::move(li));
    }
    std::vector<Point<Rational>> centers;
    for (const auto& s : held)
        if (s.size() == 1) centers.push_back(s[0]);
    if (centers.empty())
        throw InvalidInput("stage " + std::to_string(stage) + " is too coarse: no vertex at distance >= 1/" +
                           std::to_string(stage) + " from the excluded set");
    out.cover = StarCover::make(std::make_shared<DownComplex>(std::move(k)), std::move(centers));
    return out;
}

}  // namespace stpl
