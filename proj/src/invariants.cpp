#include "stpl/invariants.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace stpl {

// ---------------------------------------------------------------- words

Word reduce(const Word& w) {
    Word out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x) out.pop_back();
        else out.push_back(x);
    }
    return out;
}

namespace {

Word cyclic_reduce(const Word& w) {
    Word r = reduce(w);
    size_t a = 0, b = r.size();
    while (b - a >= 2 && r[a] == -r[b - 1]) {
        ++a;
        --b;
    }
    return Word(r.begin() + static_cast<long>(a), r.begin() + static_cast<long>(b));
}

Word inverse(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (auto& x : out) x = -x;
    return out;
}

void tidy(std::vector<Word>& rels) {
    std::vector<Word> out;
    for (const auto& r : rels) {
        auto c = cyclic_reduce(r);
        if (!c.empty()) out.push_back(std::move(c));
    }
    rels = std::move(out);
}

}  // namespace

json GroupPresentation::to_json() const {
    json gens = json::array();
    for (const auto& g : generators) gens.push_back(simplex_to_json(g));
    return json{{"base", base}, {"generators", gens}, {"relations", relations}};
}

GroupPresentation edge_path_pi1(const DownComplex& p, VertexId base) {
    if (!p.is_closed()) throw InvalidInput("edge-path group needs a closed complex");
    if (base >= p.num_vertices()) throw InvalidInput("base vertex out of range");
    const auto n = p.num_vertices();
    std::vector<std::vector<VertexId>> nbr(n);
    std::vector<Simplex> edges;
    for (const auto& s : p.simplexes())
        if (s.size() == 2) {
            edges.push_back(s);
            nbr[s[0]].push_back(s[1]);
            nbr[s[1]].push_back(s[0]);
        }
    for (auto& v : nbr) std::sort(v.begin(), v.end());

    std::set<Simplex> tree;
    std::vector<bool> seen(n, false);
    std::deque<VertexId> queue{base};
    seen[base] = true;
    size_t reached = 1;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto w : nbr[v]) {
            if (seen[w]) continue;
            seen[w] = true;
            ++reached;
            tree.insert(Simplex{std::min(v, w), std::max(v, w)});
            queue.push_back(w);
        }
    }
    if (reached != n) throw InvalidInput("complex is disconnected");

    GroupPresentation g;
    g.base = base;
    std::map<Simplex, int> index;
    for (const auto& e : edges)
        if (!tree.count(e)) {
            g.generators.push_back(e);
            index[e] = static_cast<int>(g.generators.size());
        }
    auto letter = [&](VertexId a, VertexId b, Word& w) {
        auto it = index.find(Simplex{std::min(a, b), std::max(a, b)});
        if (it != index.end()) w.push_back(a < b ? it->second : -it->second);
    };
    for (const auto& s : p.simplexes()) {
        if (s.size() != 3) continue;
        Word w;
        letter(s[0], s[1], w);
        letter(s[1], s[2], w);
        letter(s[2], s[0], w);
        g.relations.push_back(std::move(w));
    }
    tidy(g.relations);
    return g;
}

GroupPresentation simplify(const GroupPresentation& in) {
    auto g = in;
    tidy(g.relations);
    for (;;) {
        // shortest relation in which some generator occurs exactly once
        std::optional<std::pair<size_t, size_t>> pick;
        for (size_t r = 0; r < g.relations.size(); ++r) {
            if (pick && g.relations[r].size() >= g.relations[pick->first].size()) continue;
            const auto& w = g.relations[r];
            for (size_t i = 0; i < w.size(); ++i) {
                int x = std::abs(w[i]);
                if (std::count_if(w.begin(), w.end(), [&](int y) { return std::abs(y) == x; }) == 1) {
                    pick = std::make_pair(r, i);
                    break;
                }
            }
        }
        if (!pick) break;
        auto [r, i] = *pick;
        const auto w = g.relations[r];
        int x = std::abs(w[i]);
        Word rest(w.begin() + static_cast<long>(i) + 1, w.end());
        rest.insert(rest.end(), w.begin(), w.begin() + static_cast<long>(i));
        // x^s rest = 1
        Word value = w[i] > 0 ? inverse(rest) : rest;
        g.relations.erase(g.relations.begin() + static_cast<long>(r));
        for (auto& rel : g.relations) {
            Word out;
            for (int y : rel) {
                if (y == x) out.insert(out.end(), value.begin(), value.end());
                else if (y == -x) {
                    auto inv = inverse(value);
                    out.insert(out.end(), inv.begin(), inv.end());
                } else out.push_back(y);
            }
            rel = std::move(out);
        }
        g.generators.erase(g.generators.begin() + x - 1);
        for (auto& rel : g.relations)
            for (auto& y : rel)
                if (std::abs(y) > x) y += y > 0 ? -1 : 1;
        tidy(g.relations);
    }
    return g;
}

std::vector<long> abelian_invariants(const GroupPresentation& g) {
    const size_t cols = g.generators.size();
    std::vector<std::vector<mpz_class>> a;
    for (const auto& r : g.relations) {
        std::vector<mpz_class> row(cols, 0);
        for (int y : r) row[static_cast<size_t>(std::abs(y)) - 1] += y > 0 ? 1 : -1;
        a.push_back(std::move(row));
    }
    const size_t rows = a.size();
    std::vector<mpz_class> diag;
    for (size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // smallest nonzero entry of the remaining block to (t, t)
            std::optional<std::pair<size_t, size_t>> best;
            for (size_t i = t; i < rows; ++i)
                for (size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (!best || abs(a[i][j]) < abs(a[best->first][best->second]))) best = {i, j};
            if (!best) break;
            std::swap(a[t], a[best->first]);
            for (auto& row : a) std::swap(row[t], row[best->second]);
            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                clean = clean && a[i][t] == 0;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                clean = clean && a[t][j] == 0;
            }
            if (clean) break;
        }
        if (t >= rows || a[t][t] == 0) break;
        diag.push_back(abs(a[t][t]));
    }
    // divisibility chain
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) {
            mpz_class gg = gcd(diag[i], diag[j]);
            mpz_class l = lcm(diag[i], diag[j]);
            diag[i] = gg;
            diag[j] = l;
        }
    std::vector<long> out;
    for (const auto& d : diag)
        if (d != 1) out.push_back(d.get_si());
    for (size_t k = diag.size(); k < cols; ++k) out.push_back(0);
    return out;
}

// ---------------------------------------------------------------- winding

namespace {

template <class F>
void require_circle(const Complex<F>& c) {
    if (!c.is_closed() || c.dim() != 1 || c.num_vertices() < 3)
        throw InvalidInput("not a simplicial circle");
    for (VertexId v = 0; v < c.num_vertices(); ++v) {
        size_t deg = 0;
        for (auto i : c.incident(v)) deg += c.simplex(i).size() == 2;
        if (deg != 2) throw InvalidInput("not a simplicial circle");
    }
}

template <class F>
std::vector<VertexId> walk_from(const Complex<F>& c, VertexId next) {
    std::vector<VertexId> order{0};
    VertexId prev = 0, cur = next;
    while (cur != 0) {
        order.push_back(cur);
        VertexId step = cur;
        for (auto i : c.incident(cur)) {
            const auto& s = c.simplex(i);
            if (s.size() != 2) continue;
            VertexId o = s[0] == cur ? s[1] : s[0];
            if (o != prev) step = o;
        }
        prev = cur;
        cur = step;
        if (order.size() > c.num_vertices()) throw InvalidInput("not a simplicial circle");
    }
    if (order.size() != c.num_vertices()) throw InvalidInput("not a simplicial circle");
    return order;
}

}  // namespace

template <class F>
std::vector<VertexId> circle_order(const Complex<F>& c) {
    require_circle(c);
    std::vector<VertexId> nb;
    for (auto i : c.incident(0))
        if (c.simplex(i).size() == 2) nb.push_back(c.simplex(i)[0] == 0 ? c.simplex(i)[1] : c.simplex(i)[0]);
    std::sort(nb.begin(), nb.end());
    auto order = walk_from(c, nb[0]);
    if (c.ambient_dim() == 2) {
        F area(0);
        for (size_t i = 0; i < order.size(); ++i) {
            const auto& p = c.point(order[i]);
            const auto& q = c.point(order[(i + 1) % order.size()]);
            area += p[0] * q[1] - p[1] * q[0];
        }
        if (area < F(0)) order = walk_from(c, nb[1]);
    }
    return order;
}

template <class F>
long winding_number(const SimplicialMap<F>& f) {
    auto dom = circle_order(*f.domain);
    auto cod = circle_order(*f.codomain);
    const long m = static_cast<long>(cod.size());
    std::vector<long> pos(cod.size());
    for (size_t i = 0; i < cod.size(); ++i) pos[cod[i]] = static_cast<long>(i);
    auto arc = [&](const Point<F>& y) {
        auto c = f.codomain->carrier(y);
        if (c.size() == 1) return F(pos[c[0]]);
        auto lam = *f.codomain->barycentric(c, y);
        long pa = pos[c[0]], pb = pos[c[1]];
        if ((pa + 1) % m == pb) return F(pa) + lam[1];
        return F(pb) + lam[0];
    };
    const F full(m), half = F(m) / F(2);
    F total(0);
    for (size_t i = 0; i < dom.size(); ++i) {
        F d = arc(f.images[dom[(i + 1) % dom.size()]]) - arc(f.images[dom[i]]);
        while (d >= half) d -= full;
        while (d < -half) d += full;
        total += d;
    }
    F k = total / full;
    if constexpr (std::is_same_v<F, InfScalar>) {
        if (!k.is_rational()) throw InvalidInput("winding sum is not an integer");
        auto r = k.standard_part();
        if (r.raw().get_den() != 1) throw InvalidInput("winding sum is not an integer");
        return r.raw().get_num().get_si();
    } else {
        if (k.raw().get_den() != 1) throw InvalidInput("winding sum is not an integer");
        return k.raw().get_num().get_si();
    }
}

// ---------------------------------------------------------------- PL sets

template <class F>
PLSet<F> PLSet<F>::make(std::shared_ptr<const Complex<F>> ambient, std::vector<size_t> members) {
    if (!ambient || !ambient->is_closed()) throw InvalidInput("PL set needs a closed ambient complex");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (!members.empty() && members.back() >= ambient->size()) throw InvalidInput("PL set member out of range");
    return PLSet{std::move(ambient), std::move(members)};
}

template <class F>
bool PLSet<F>::contains(size_t i) const {
    return std::binary_search(members.begin(), members.end(), i);
}

template <class F>
int PLSet<F>::dim() const {
    int d = -1;
    for (auto i : members) d = std::max(d, static_cast<int>(ambient->simplex(i).size()) - 1);
    return d;
}

template <class F>
PLSet<F> PLSet<F>::closure() const {
    return PLSet{ambient, ambient->closure(members).members};
}

template <class F>
PLSet<F> PLSet<F>::interior() const {
    std::vector<size_t> out;
    for (auto i : members) {
        auto co = ambient->cofaces(ambient->simplex(i));
        if (std::all_of(co.begin(), co.end(), [&](size_t j) { return contains(j); })) out.push_back(i);
    }
    return PLSet{ambient, std::move(out)};
}

template <class F>
PLSet<F> PLSet<F>::complement() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < ambient->size(); ++i)
        if (!contains(i)) out.push_back(i);
    return PLSet{ambient, std::move(out)};
}

namespace {

std::vector<size_t> minus(const std::vector<size_t>& a, const std::vector<size_t>& b) {
    std::vector<size_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

template <class F>
PLSet<F> PLSet<F>::frontier() const {
    return PLSet{ambient, minus(closure().members, members)};
}

template <class F>
PLSet<F> PLSet<F>::boundary() const {
    return PLSet{ambient, minus(closure().members, interior().members)};
}

template <class F>
int dimension(const PLSet<F>& a) {
    return a.dim();
}

template <class F>
int dimension(const Complex<F>& c) {
    return c.dim();
}

// ---------------------------------------------------------------- dimension

namespace {

std::vector<Point<Rational>> st_points(const UpComplex& c, const Simplex& s) {
    std::vector<Point<Rational>> out;
    for (auto v : s) out.push_back(standard_part(c.point(v)));
    return out;
}

}  // namespace

int st_image_dimension(const PLSet<InfScalar>& a) {
    int d = -1;
    for (auto i : a.members) d = std::max(d, affine_rank(st_points(*a.ambient, a.ambient->simplex(i))));
    return d;
}

DimensionAudit dimension_audit(const UpComplex& c) {
    DimensionAudit r;
    r.dim = c.dim();
    for (auto m : c.maximal()) {
        const auto& s = c.simplex(m);
        int k = affine_rank(st_points(c, s));
        r.st_dim = std::max(r.st_dim, k);
        if (k < static_cast<int>(s.size()) - 1) r.dropped.push_back(m);
    }
    return r;
}

json DimensionAudit::to_json() const {
    json dr = json::array();
    for (auto i : dropped) dr.push_back(i);
    bool equal = dim == st_dim;
    return json{{"kind", "dimension"},
                {"payload", {{"dim", dim}, {"st_dim", st_dim}, {"dropped", dr}}},
                {"assertions",
                 json::array({json{{"type", "st_nondegenerate"}, {"data", json::object()}, {"result", assumption_holds()}},
                              json{{"type", "dimension_equal"}, {"data", json::object()}, {"result", equal}}})}};
}

// ---------------------------------------------------------------- domination

namespace {

bool in_hull(const std::vector<Point<Rational>>& hull, const Point<Rational>& y) {
    for (size_t k = 0; k < y.size(); ++k) {
        bool below = false, above = false;
        for (const auto& p : hull) {
            below = below || p[k] <= y[k];
            above = above || p[k] >= y[k];
        }
        if (!below || !above) return false;
    }
    return closed_simplexes_meet(hull, {y});
}

std::vector<Point<Rational>> dedupe(std::vector<Point<Rational>> pts) {
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return lex_less(a, b); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

json points_json(const std::vector<Point<Rational>>& pts) {
    json a = json::array();
    for (const auto& p : pts) a.push_back(point_to_json(p));
    return a;
}

}  // namespace

DominationReport domination_check(const PLSet<InfScalar>& d, long grid) {
    if (grid < 1) throw InvalidInput("sampling grid must be positive");
    const auto& amb = *d.ambient;
    DominationReport r;
    r.delta = d.boundary().members;
    r.delta_dim = PLSet<InfScalar>{d.ambient, r.delta}.dim();

    std::set<std::vector<Point<Rational>>> seen;
    for (auto i : r.delta) {
        auto h = dedupe(st_points(amb, amb.simplex(i)));
        if (seen.insert(h).second) r.st_delta.push_back(h);
    }
    for (const auto& h : r.st_delta) r.st_delta_dim = std::max(r.st_delta_dim, affine_rank(h));
    for (auto m : amb.maximal()) r.top_dim = std::max(r.top_dim, affine_rank(st_points(amb, amb.simplex(m))));
    r.empty_interior = r.st_delta_dim < r.top_dim;

    // sample lattice over the bounding box, plus st of vertices and barycenters
    std::vector<Point<Rational>> samples;
    std::vector<Point<Rational>> verts;
    for (const auto& p : amb.points()) verts.push_back(standard_part(p));
    const size_t k = amb.ambient_dim();
    Point<Rational> lo = verts.front(), hi = verts.front();
    for (const auto& p : verts)
        for (size_t c = 0; c < k; ++c) {
            lo[c] = std::min(lo[c], p[c]);
            hi[c] = std::max(hi[c], p[c]);
        }
    std::vector<std::vector<Rational>> axis(k);
    for (size_t c = 0; c < k; ++c) {
        Rational step = Rational(1) / Rational(grid);
        for (Rational x = lo[c]; x <= hi[c]; x += step) axis[c].push_back(x);
    }
    std::vector<size_t> idx(k, 0);
    if (k > 0 && std::all_of(axis.begin(), axis.end(), [](const auto& a) { return !a.empty(); })) {
        for (;;) {
            Point<Rational> p;
            for (size_t c = 0; c < k; ++c) p.push_back(axis[c][idx[c]]);
            samples.push_back(std::move(p));
            size_t c = 0;
            while (c < k && ++idx[c] == axis[c].size()) idx[c++] = 0;
            if (c == k) break;
        }
    }
    for (size_t i = 0; i < amb.size(); ++i) {
        auto h = st_points(amb, amb.simplex(i));
        Point<Rational> b(k, Rational(0));
        for (const auto& p : h)
            for (size_t c = 0; c < k; ++c) b[c] += p[c] / Rational(static_cast<long>(h.size()));
        samples.push_back(std::move(b));
    }
    samples.insert(samples.end(), verts.begin(), verts.end());
    samples = dedupe(std::move(samples));
    r.samples = samples.size();

    auto comp = d.complement();
    auto hits = [&](const std::vector<size_t>& set, const Point<Rational>& y) {
        return std::any_of(set.begin(), set.end(), [&](size_t i) { return in_hull(st_points(amb, amb.simplex(i)), y); });
    };
    for (const auto& y : samples) {
        if (!hits(d.members, y) || !hits(comp.members, y)) continue;
        ++r.overlaps;
        bool inside = std::any_of(r.st_delta.begin(), r.st_delta.end(), [&](const auto& h) { return in_hull(h, y); });
        if (!inside) r.outside.push_back(y);
    }
    return r;
}

json DominationReport::to_json() const {
    json sd = json::array();
    for (const auto& h : st_delta) sd.push_back(points_json(h));
    json payload{{"delta", delta},
                 {"delta_dim", delta_dim},
                 {"st_delta", sd},
                 {"st_delta_dim", st_delta_dim},
                 {"top_dim", top_dim},
                 {"samples", samples},
                 {"overlaps", overlaps}};
    json as = json::array();
    as.push_back(json{{"type", "empty_interior"}, {"data", json::object()}, {"result", empty_interior}});
    as.push_back(json{{"type", "overlap_in_boundary"}, {"data", {{"outside", points_json(outside)}}}, {"result", outside.empty()}});
    return json{{"kind", "domination"}, {"payload", payload}, {"assertions", as}};
}

#define STPL_INVARIANTS(F)                                              \
    template std::vector<VertexId> circle_order<F>(const Complex<F>&); \
    template long winding_number<F>(const SimplicialMap<F>&);          \
    template struct PLSet<F>;                                          \
    template int dimension<F>(const PLSet<F>&);                        \
    template int dimension<F>(const Complex<F>&);

STPL_INVARIANTS(Rational)
STPL_INVARIANTS(InfScalar)

}  // namespace stpl
