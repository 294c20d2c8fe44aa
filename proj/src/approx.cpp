#include "stpl/approx.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace stpl {

StandardPartMap StandardPartMap::make(std::shared_ptr<const UpComplex> up) {
    auto down = std::make_shared<DownComplex>(standard_part(*up));
    auto rep = validate_complex(*down);
    if (!rep.dependent.empty() || !rep.bad_pairs.empty())
        throw InvalidInput("standard part of the codomain is not a simplicial complex");
    std::vector<VertexId> to_up(down->num_vertices());
    for (VertexId v = 0; v < up->num_vertices(); ++v) to_up[*down->find_vertex(standard_part(up->point(v)))] = v;
    return StandardPartMap{std::move(up), std::move(down), std::move(to_up)};
}

Point<InfScalar> StandardPartMap::transfer(const Point<Rational>& y) const {
    auto c = down->try_carrier(y);
    if (!c) throw InvalidInput("point outside the standard-part complex");
    auto lam = *down->barycentric(*c, y);
    Point<InfScalar> out(up->ambient_dim(), InfScalar(0));
    for (size_t j = 0; j < c->size(); ++j) {
        InfScalar w(lam[j]);
        const auto& p = up->point(to_up[(*c)[j]]);
        for (size_t k = 0; k < out.size(); ++k) out[k] += w * p[k];
    }
    return out;
}

json standard_part_map_to_json(const StandardPartMap& s) { return complex_to_json(*s.up); }

StandardPartMap standard_part_map_from_json(const json& j) {
    return StandardPartMap::make(std::make_shared<UpComplex>(complex_from_json<InfScalar>(j)));
}

Subcomplex prism_ends(const DownComplex& prism, std::optional<Point<Rational>> base_point) {
    const size_t k = prism.ambient_dim() - 1;
    std::vector<size_t> members;
    for (size_t i = 0; i < prism.size(); ++i) {
        const auto& s = prism.simplex(i);
        auto t = prism.point(s[0])[k];
        bool flat = std::all_of(s.begin(), s.end(), [&](VertexId v) { return prism.point(v)[k] == t; });
        bool fiber = false;
        if (base_point) {
            fiber = std::all_of(s.begin(), s.end(), [&](VertexId v) {
                const auto& p = prism.point(v);
                return std::equal(base_point->begin(), base_point->end(), p.begin());
            });
        }
        if ((flat && (t == Rational(0) || t == Rational(1))) || fiber) members.push_back(i);
    }
    return prism.closure(members);
}

namespace {

Simplex unite(const Simplex& a, const Simplex& b) {
    Simplex out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

template <class F>
Point<F> average(const std::vector<Point<F>>& pts) {
    Point<F> out(pts.front().size(), F(0));
    for (const auto& p : pts)
        for (size_t k = 0; k < out.size(); ++k) out[k] += p[k];
    F n(static_cast<long>(pts.size()));
    for (auto& c : out) c = c / n;
    return out;
}

// Image choice for the barycenter of one simplex of the input domain.
template <class F>
struct Choice {
    Point<F> image;
    Simplex carrier;  // codomain carrier of the image
    size_t element = 0;
    int level = 0;
    bool coned = false;
};

// pieces: vertex-image lists of the closed simplexes covering the boundary.
// verts: the simplex's own vertex images. affine_ok: every proper face went affine
// and the vertex images share a closed codomain simplex.
template <class F>
using Chooser = std::function<Choice<F>(const std::vector<std::vector<Point<F>>>& pieces,
                                        const std::vector<Point<F>>& verts, bool affine_ok, int dim)>;

template <class F>
Extension<F> extend_with(const PartialMap<F>& f, const Chooser<F>& choose) {
    const auto& p = *f.domain;
    if (f.images.size() != p.num_vertices()) throw InvalidInput("one image per domain vertex required");
    for (auto i : f.fixed.members)
        if (i >= p.size()) throw InvalidInput("fixed subcomplex index out of range");
    if (p.closure(f.fixed.members).members != f.fixed.members) throw InvalidInput("fixed subcomplex is not closed");
    std::vector<Simplex> vcar = f.carriers;
    if (vcar.size() != f.images.size()) {
        vcar.clear();
        for (const auto& y : f.images) {
            auto c = f.codomain->try_carrier(y);
            if (!c) throw InvalidInput("vertex image outside the codomain");
            vcar.push_back(std::move(*c));
        }
    }
    auto joint = [&](const Simplex& s) {
        Simplex u;
        for (auto v : s) u = unite(u, vcar[v]);
        return u;
    };
    auto shared = [&](const Simplex& s) { return f.codomain->find(joint(s)).has_value(); };
    for (auto i : f.fixed.members)
        if (!shared(p.simplex(i))) throw InvalidInput("fixed part is not a simplicial map");
    // Vertices of the subdivision by reference: an input vertex id, or
    // nv + i for the barycenter of input simplex i.
    const size_t nv = p.num_vertices();
    std::vector<std::optional<Point<F>>> bary(p.size());
    std::vector<Simplex> bcar(p.size());
    auto point_of = [&](size_t r) -> const Point<F>& { return r < nv ? f.images[r] : *bary[r - nv]; };
    // Closed pieces covering each simplex: itself when held, else cones from its
    // barycenter over the pieces of its facets.
    std::vector<std::vector<std::vector<size_t>>> pieces_of(p.size());
    std::vector<bool> held(p.size(), false);
    Extension<F> ext{SimplicialMap<F>{}, std::vector<std::optional<size_t>>(p.size()), std::vector<int>(p.size(), 0),
                     std::vector<bool>(p.size(), false)};

    for (size_t i = 0; i < p.size(); ++i) {
        const auto& s = p.simplex(i);
        if (s.size() == 1 || f.fixed.contains(i)) {
            held[i] = true;
            pieces_of[i] = {std::vector<size_t>(s.begin(), s.end())};
            continue;
        }
        std::vector<size_t> facets;
        bool affine_faces = true;
        for (size_t drop = 0; drop < s.size(); ++drop) {
            Simplex face;
            for (size_t j = 0; j < s.size(); ++j)
                if (j != drop) face.push_back(s[j]);
            facets.push_back(*p.find(face));
            affine_faces = affine_faces && held[facets.back()];
        }
        std::vector<std::vector<Point<F>>> pieces;
        for (auto fi : facets)
            for (const auto& q : pieces_of[fi]) {
                std::vector<Point<F>> pts;
                for (auto r : q) pts.push_back(point_of(r));
                pieces.push_back(std::move(pts));
            }
        std::vector<Point<F>> verts;
        for (auto v : s) verts.push_back(f.images[v]);
        auto ch = choose(pieces, verts, affine_faces && shared(s), static_cast<int>(s.size()) - 1);
        ext.element[i] = ch.element;
        ext.level[i] = ch.level;
        ext.coned[i] = ch.coned;
        if (affine_faces && !ch.coned) {
            // the affine map on the whole simplex: no barycenter needed
            held[i] = true;
            pieces_of[i] = {std::vector<size_t>(s.begin(), s.end())};
            continue;
        }
        bary[i] = std::move(ch.image);
        bcar[i] = ch.coned ? std::move(ch.carrier) : joint(s);
        for (auto fi : facets)
            for (const auto& q : pieces_of[fi]) {
                auto c = q;
                c.push_back(nv + i);
                pieces_of[i].push_back(std::move(c));
            }
    }

    Subcomplex hold;
    for (size_t i = 0; i < p.size(); ++i)
        if (held[i]) hold.members.push_back(i);
    auto sd = barycentric_subdivision(p, hold);
    auto fine = std::make_shared<DownComplex>(std::move(sd.complex));
    std::vector<std::optional<Point<F>>> img(fine->num_vertices());
    std::vector<Simplex> fcar(fine->num_vertices());
    for (VertexId v = 0; v < nv; ++v) {
        auto w = *fine->find_vertex(p.point(v));
        img[w] = f.images[v];
        fcar[w] = vcar[v];
    }
    for (size_t i = 0; i < p.size(); ++i) {
        if (held[i]) continue;
        auto b = *fine->find_vertex(p.barycenter(p.simplex(i)));
        img[b] = std::move(*bary[i]);
        fcar[b] = std::move(bcar[i]);
    }
    std::vector<Point<F>> images;
    for (auto& y : img) images.push_back(std::move(*y));
    std::optional<VertexId> base;
    if (f.base) base = fine->find_vertex(p.point(*f.base));
    ext.map = SimplicialMap<F>::make_with_carriers(fine, f.codomain, std::move(images), fcar, base);
    return ext;
}

}  // namespace

Extension<Rational> extend_downstairs(const PartialMap<Rational>& f, const StarCover& u) {
    const auto& k = *u.carrier;
    Chooser<Rational> choose = [&](const auto& pieces, const auto& verts, bool affine_ok, int) {
        auto c0 = k.try_carrier(pieces.front().front());
        if (!c0) throw PreconditionFailed("partial map leaves the cover's carrier");
        std::vector<size_t> e_all;
        for (auto e : u.elements_with_core_in(*c0)) {
            bool all = std::all_of(pieces.begin(), pieces.end(), [&](const auto& q) { return u.contains_hull(e, q); });
            if (all) e_all.push_back(e);
        }
        if (e_all.empty()) throw PreconditionFailed("boundary of a simplex lies in no single cover element");
        Simplex s;
        for (auto e : e_all) s = unite(s, u.cores[e]);
        Choice<Rational> ch;
        ch.element = e_all.front();
        auto star = StarCover::make(u.carrier, {k.barycenter(s)});
        if (affine_ok && star.contains_hull(0, verts)) {
            ch.image = average(verts);
        } else {
            ch.image = star.centers[0];
            ch.carrier = f.codomain->carrier(ch.image);
            ch.coned = true;
        }
        return ch;
    };
    return extend_with(f, choose);
}

Extension<InfScalar> extend_upstairs(const PartialMap<InfScalar>& f, const StarCover& w, const StandardPartMap& s) {
    Chooser<InfScalar> choose = [&](const auto& pieces, const auto& verts, bool affine_ok, int dim) {
        const auto& link = chain_step(w, dim - 1);
        std::vector<std::vector<Point<Rational>>> st;
        for (const auto& q : pieces) st.push_back(shadow(q));
        auto c0 = link.carrier->try_carrier(st.front().front());
        if (!c0) throw PreconditionFailed("partial map leaves the cover's carrier");
        Choice<InfScalar> ch;
        ch.level = dim - 1;
        std::optional<size_t> found;
        for (auto e : link.elements_with_core_in(*c0)) {
            if (std::all_of(st.begin(), st.end(), [&](const auto& q) { return link.contains_hull(e, q); })) {
                found = e;
                break;
            }
        }
        if (!found) throw PreconditionFailed("boundary of a simplex lies in no single chain element");
        ch.element = *found;
        if (affine_ok && link.contains_hull(*found, shadow(verts))) {
            ch.image = average(verts);
        } else {
            ch.image = s.transfer(link.centers[*found]);
            for (auto v : s.down->carrier(link.centers[*found])) ch.carrier.push_back(s.to_up[v]);
            std::sort(ch.carrier.begin(), ch.carrier.end());
            ch.coned = true;
        }
        return ch;
    };
    return extend_with(f, choose);
}

// ---------------------------------------------------------------- certificates

bool Certificate::passed() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.result; });
}

json Certificate::to_json() const {
    json as = json::array();
    for (const auto& a : assertions) as.push_back(json{{"type", a.type}, {"data", a.data}, {"result", a.result}});
    return json{{"kind", kind}, {"payload", payload}, {"assertions", as}};
}

Certificate Certificate::from_json(const json& j) {
    Certificate c;
    c.kind = j.at("kind").get<std::string>();
    c.payload = j.at("payload");
    for (const auto& a : j.value("assertions", json::array()))
        c.assertions.push_back(Assertion{a.at("type").get<std::string>(), a.value("data", json(nullptr)),
                                         a.value("result", false)});
    return c;
}

namespace {

using Checks = std::vector<Assertion>;

const StarCover& root_of(const StarCover& c) {
    const StarCover* r = &c;
    while (r->witness) r = r->witness.get();
    return *r;
}

// g equals f read on a subdivision of f's domain.
template <class F>
bool agrees_on_refinement(const SimplicialMap<F>& g, const SimplicialMap<F>& f) {
    if (!is_refinement(*g.domain, *f.domain)) return false;
    for (VertexId v = 0; v < g.domain->num_vertices(); ++v)
        if (g.images[v] != evaluate(f, g.domain->point(v))) return false;
    if (f.base && (!g.base || g.domain->point(*g.base) != f.domain->point(*f.base))) return false;
    return true;
}

json witness_json(const std::vector<std::optional<size_t>>& w) {
    json a = json::array();
    for (const auto& x : w) a.push_back(x ? json(*x) : json(nullptr));
    return a;
}

template <class F>
Assertion small_assertion(const SimplicialMap<F>& f, const StarCover& u) {
    auto st = shadow(f.images);
    std::vector<std::optional<size_t>> wit;
    json fails = json::array();
    for (auto m : f.domain->maximal()) {
        std::vector<Point<Rational>> pts;
        for (auto v : f.domain->simplex(m)) pts.push_back(st[v]);
        wit.push_back(u.find_hull(pts));
        if (!wit.back()) fails.push_back(simplex_to_json(f.domain->simplex(m)));
    }
    return Assertion{"small", json{{"witness", witness_json(wit)}, {"failures", fails}}, fails.empty()};
}

// Per maximal simplex of a.domain (shared with b): one element holding both images.
template <class F, class G>
Assertion shared_element_assertion(const std::string& type, const SimplicialMap<F>& a, const SimplicialMap<G>& b,
                                   const StarCover& u) {
    json w = json::array();
    bool ok = a.domain->same_as(*b.domain);
    auto sa = shadow(a.images);
    auto sb = shadow(b.images);
    for (auto i : ok ? a.domain->maximal() : std::vector<size_t>{}) {
        std::vector<Point<Rational>> pa, pb;
        for (auto v : a.domain->simplex(i)) {
            pa.push_back(sa[v]);
            pb.push_back(sb[v]);
        }
        std::optional<size_t> hit;
        if (auto c0 = u.carrier->try_carrier(pa.front()))
            for (auto e : u.elements_with_core_in(*c0))
                if (u.contains_hull(e, pa) && u.contains_hull(e, pb)) {
                    hit = e;
                    break;
                }
        w.push_back(hit ? json(*hit) : json(nullptr));
        if (!hit) {
            ok = false;
            break;
        }
    }
    return Assertion{type, json{{"witness", w}}, ok};
}

template <class F>
PartialMap<F> prism_partial(const SimplicialMap<F>& end0, const SimplicialMap<F>& end1) {
    if (!end0.domain->same_as(*end1.domain)) throw InvalidInput("homotopy ends need a common domain");
    auto prism = std::make_shared<DownComplex>(prism_triangulation(*end0.domain));
    const size_t k = prism->ambient_dim() - 1;
    std::vector<Point<F>> images;
    std::vector<Simplex> cars;
    const bool known = !end0.carriers.empty() && !end1.carriers.empty();
    for (const auto& p : prism->points()) {
        Point<Rational> x(p.begin(), p.begin() + static_cast<long>(k));
        auto v = *end0.domain->find_vertex(x);
        const auto& e = p[k] == Rational(0) ? end0 : end1;
        images.push_back(e.images[v]);
        if (known) cars.push_back(e.carriers[v]);
    }
    std::optional<Point<Rational>> bp;
    std::optional<VertexId> base;
    if (end0.base) {
        if (end0.base_image() != end1.base_image()) throw PreconditionFailed("homotopy ends differ at the base point");
        bp = end0.domain->point(*end0.base);
        auto x = *bp;
        x.push_back(Rational(0));
        base = prism->find_vertex(x);
    }
    auto fixed = prism_ends(*prism, bp);
    return PartialMap<F>{prism, end0.codomain, std::move(images), std::move(fixed), base, std::move(cars)};
}

template <class F>
Assertion base_fiber_assertion(const Homotopy<F>& h) {
    if (!h.relative_base) return Assertion{"base_fiber", json{{"relative", false}}, true};
    bool ok = h.end0.base.has_value() && h.map.base.has_value();
    if (ok) {
        const auto& d = *h.map.domain;
        const size_t k = d.ambient_dim() - 1;
        auto bp = h.end0.domain->point(*h.end0.base);
        auto want = h.map.images[*h.map.base];
        for (VertexId v = 0; v < d.num_vertices(); ++v)
            if (std::equal(bp.begin(), bp.end(), d.point(v).begin()) && d.point(v).size() == k + 1)
                ok = ok && h.map.images[v] == want;
    }
    return Assertion{"base_fiber", json{{"relative", true}}, ok};
}

// Recomputes the extension when replay is set; producers pass false since
// the recorded map is the extension they just built.
template <class F>
Assertion extension_assertion(bool replay, const std::function<bool()>& same) {
    if (!replay) return {"extension", json::object(), true};
    try {
        return {"extension", json::object(), same()};
    } catch (const std::exception& e) {
        return {"extension", json{{"error", e.what()}}, false};
    }
}

template <class F>
Checks homotopy_checks(const Homotopy<F>& h, const SimplicialMap<F>& s0, const SimplicialMap<F>& s1,
                       const std::function<SimplicialMap<F>(const PartialMap<F>&)>& extend, const StarCover& small_u,
                       bool replay) {
    Checks out;
    bool ends = h.end0.domain->same_as(*h.end1.domain) && same_map(restrict_end(h.map, 0), h.end0) &&
                same_map(restrict_end(h.map, 1), h.end1);
    out.push_back({"ends", json::object(), ends});
    out.push_back({"source0", json::object(), agrees_on_refinement(h.end0, s0)});
    out.push_back({"source1", json::object(), agrees_on_refinement(h.end1, s1)});
    out.push_back(small_assertion(h.map, small_u));
    out.push_back(extension_assertion<F>(replay, [&] { return same_map(extend(prism_partial(h.end0, h.end1)), h.map); }));
    out.push_back(base_fiber_assertion(h));
    return out;
}

Checks down_homotopy_checks(const json& pl) {
    auto h = homotopy_from_json<Rational>(pl.at("homotopy"));
    auto s0 = map_from_json<Rational>(pl.at("source0"));
    auto s1 = map_from_json<Rational>(pl.at("source1"));
    auto u = cover_from_json(pl.at("cover"));
    std::function<DownMap(const PartialMap<Rational>&)> ext = [&](const PartialMap<Rational>& p) {
        return extend_downstairs(p, u).map;
    };
    return homotopy_checks(h, s0, s1, ext, u, true);
}

Checks up_homotopy_checks(const json& pl, const Homotopy<InfScalar>* parsed = nullptr) {
    auto h = parsed ? *parsed : homotopy_from_json<InfScalar>(pl.at("homotopy"));
    auto s0 = map_from_json<InfScalar>(pl.at("source0"));
    auto s1 = map_from_json<InfScalar>(pl.at("source1"));
    auto w = cover_from_json(pl.at("cover"));
    auto s = standard_part_map_from_json(pl.at("standard_part"));
    std::function<UpMap(const PartialMap<InfScalar>&)> ext = [&](const PartialMap<InfScalar>& p) {
        return extend_upstairs(p, w, s).map;
    };
    return homotopy_checks(h, s0, s1, ext, root_of(w), true);
}

PartialMap<Rational> vertex_partial(const UpMap& f, const StandardPartMap& s) {
    std::vector<Point<Rational>> imgs;
    for (const auto& y : f.images) imgs.push_back(standard_part(y));
    return PartialMap<Rational>{f.domain, s.down, std::move(imgs), f.domain->skeleton(0), f.base, {}};
}

PartialMap<InfScalar> transfer_partial(const DownMap& g, const StandardPartMap& s) {
    std::vector<Point<InfScalar>> imgs;
    std::vector<Simplex> cars;
    for (VertexId v = 0; v < g.images.size(); ++v) {
        imgs.push_back(s.transfer(g.images[v]));
        Simplex c;
        for (auto x : g.carriers.empty() ? s.down->carrier(g.images[v]) : g.carriers[v]) c.push_back(s.to_up[x]);
        std::sort(c.begin(), c.end());
        cars.push_back(std::move(c));
    }
    return PartialMap<InfScalar>{g.domain, s.up, std::move(imgs), g.domain->skeleton(0), g.base, std::move(cars)};
}

Checks approximation_checks(const UpMap& f, const DownMap& fs, const StarCover& v, const StandardPartMap& s,
                            const UpMap* orig, bool replay) {
    Checks out;
    out.push_back(small_assertion(f, v));
    bool verts = is_refinement(*fs.domain, *f.domain);
    for (VertexId x = 0; verts && x < f.domain->num_vertices(); ++x) {
        auto y = fs.domain->find_vertex(f.domain->point(x));
        verts = y && fs.images[*y] == standard_part(f.images[x]);
    }
    out.push_back({"vertices", json::object(), verts});
    out.push_back(extension_assertion<Rational>(
        replay, [&] { return same_map(extend_downstairs(vertex_partial(f, s), v).map, fs); }));
    out.push_back(shared_element_assertion("approximation", fs, reindex(f, fs.domain), v));
    if (orig) {
        out.push_back({"reindex", json::object(), agrees_on_refinement(f, *orig)});
        out.push_back({"star_refines", json::object(), v.witness && refine_check(v, *v.witness).star_refines});
    }
    return out;
}

Checks approximation_checks(const json& pl) {
    auto f = map_from_json<InfScalar>(pl.at("source"));
    auto fs = map_from_json<Rational>(pl.at("map"));
    auto v = cover_from_json(pl.at("cover"));
    auto s = standard_part_map_from_json(pl.at("standard_part"));
    std::optional<UpMap> orig;
    if (pl.contains("original")) orig = map_from_json<InfScalar>(pl.at("original"));
    return approximation_checks(f, fs, v, s, orig ? &*orig : nullptr, true);
}

Checks lift_map_checks(const DownMap& fstar, const DownMap& mid, const UpMap& f, const StarCover& w,
                       const StandardPartMap& s, bool replay) {
    Checks out;
    out.push_back({"chain", json{{"level", w.level}},
                   w.kind == CoverKind::n_good && w.level >= mid.domain->dim()});
    out.push_back({"reindex", json::object(), agrees_on_refinement(mid, fstar)});
    out.push_back(small_assertion(mid, w));
    out.push_back(extension_assertion<InfScalar>(
        replay, [&] { return same_map(extend_upstairs(transfer_partial(mid, s), w, s).map, f); }));
    out.push_back(shared_element_assertion("approximation", reindex(fstar, f.domain), f, root_of(w)));
    return out;
}

Checks lift_map_checks(const json& pl) {
    return lift_map_checks(map_from_json<Rational>(pl.at("source")), map_from_json<Rational>(pl.at("small_source")),
                           map_from_json<InfScalar>(pl.at("map")), cover_from_json(pl.at("cover")),
                           standard_part_map_from_json(pl.at("standard_part")), true);
}

Checks lifted_homotopy_checks(const DownMap& g, const UpMap& h, const StarCover& w, const StandardPartMap& s,
                              bool replay) {
    Checks out;
    out.push_back(extension_assertion<InfScalar>(replay, [&] {
        auto mid = make_small(g, w).map;
        return same_map(extend_upstairs(transfer_partial(mid, s), w, s).map, h);
    }));
    out.push_back(small_assertion(h, root_of(w)));
    return out;
}

Checks lifted_homotopy_checks(const json& pl, const UpMap* parsed = nullptr) {
    return lifted_homotopy_checks(map_from_json<Rational>(pl.at("source")),
                                  parsed ? *parsed : map_from_json<InfScalar>(pl.at("map")),
                                  cover_from_json(pl.at("cover")), standard_part_map_from_json(pl.at("standard_part")),
                                  true);
}

Checks lift_homotopy_checks(const Homotopy<InfScalar>& a, const UpMap& h, const Homotopy<InfScalar>& b,
                            const UpMap& f, const UpMap& g, bool pieces_ok) {
    Checks out;
    out.push_back({"pieces", json::object(), pieces_ok});
    bool chain = same_map(a.end1, restrict_end(h, 0)) && same_map(restrict_end(h, 1), b.end0);
    out.push_back({"junctions", json::object(), chain});
    out.push_back({"source0", json::object(), agrees_on_refinement(a.end0, f)});
    out.push_back({"source1", json::object(), agrees_on_refinement(b.end1, g)});
    return out;
}

VerifyReport compare(const Checks& got, const std::vector<Assertion>& recorded);

Checks lift_homotopy_checks(const json& pl) {
    const auto& pieces = pl.at("pieces");
    if (!pieces.is_array() || pieces.size() != 3) return {{"pieces", json::object(), false}};
    auto c0 = Certificate::from_json(pieces[0]);
    auto c1 = Certificate::from_json(pieces[1]);
    auto c2 = Certificate::from_json(pieces[2]);
    auto a = homotopy_from_json<InfScalar>(c0.payload.at("homotopy"));
    auto h = map_from_json<InfScalar>(c1.payload.at("map"));
    auto b = homotopy_from_json<InfScalar>(c2.payload.at("homotopy"));
    auto close_piece = [](const Certificate& c) {
        return c.kind == "homotopy" && c.payload.value("mode", std::string("close")) == "close" &&
               c.payload.at("realization") == "upstairs";
    };
    bool each = close_piece(c0) && close_piece(c2) && c1.kind == "homotopy" &&
                c1.payload.value("mode", std::string()) == "lifted";
    each = each && compare(up_homotopy_checks(c0.payload, &a), c0.assertions).ok;
    each = each && compare(lifted_homotopy_checks(c1.payload, &h), c1.assertions).ok;
    each = each && compare(up_homotopy_checks(c2.payload, &b), c2.assertions).ok;
    return lift_homotopy_checks(a, h, b, map_from_json<InfScalar>(pl.at("source0")),
                                map_from_json<InfScalar>(pl.at("source1")), each);
}

Checks smallness_checks(const json& pl) {
    auto u = cover_from_json(pl.at("cover"));
    if (pl.at("realization") == "upstairs") return {small_assertion(map_from_json<InfScalar>(pl.at("map")), u)};
    return {small_assertion(map_from_json<Rational>(pl.at("map")), u)};
}

Checks certificate_checks(const std::string& kind, const json& pl) {
    if (kind == "smallness") return smallness_checks(pl);
    if (kind == "approximation") return approximation_checks(pl);
    if (kind == "homotopy") {
        auto mode = pl.value("mode", std::string("close"));
        if (mode == "lifted") return lifted_homotopy_checks(pl);
        return pl.at("realization") == "upstairs" ? up_homotopy_checks(pl) : down_homotopy_checks(pl);
    }
    if (kind == "lift") {
        return pl.value("mode", std::string("map")) == "homotopy" ? lift_homotopy_checks(pl) : lift_map_checks(pl);
    }
    throw InvalidInput("unknown certificate kind '" + kind + "'");
}

Certificate issue(const std::string& kind, json payload, Checks checks) {
    Certificate c;
    c.kind = kind;
    c.payload = std::move(payload);
    c.assertions = std::move(checks);
    return c;
}

void require_passed(const Certificate& c) {
    for (const auto& a : c.assertions)
        if (!a.result) throw PreconditionFailed(c.kind + " certificate assertion '" + a.type + "' does not hold");
}

}  // namespace

namespace {

VerifyReport compare(const Checks& got, const std::vector<Assertion>& recorded) {
    VerifyReport r;
    if (got.size() != recorded.size()) {
        r.ok = false;
        r.failures.push_back("assertion list does not match the payload");
    }
    for (size_t i = 0; i < got.size(); ++i) {
        if (!got[i].result) {
            r.ok = false;
            r.failures.push_back(got[i].type);
        } else if (i < recorded.size() && (recorded[i].type != got[i].type || !recorded[i].result)) {
            r.ok = false;
            r.failures.push_back(got[i].type + " (recorded)");
        }
    }
    return r;
}

}  // namespace

VerifyReport verify_certificate(const Certificate& c) {
    Checks got;
    try {
        got = certificate_checks(c.kind, c.payload);
    } catch (const std::exception& e) {
        return VerifyReport{false, {std::string("payload: ") + e.what()}};
    }
    return compare(got, c.assertions);
}

VerifyReport verify_certificate(const json& j) {
    try {
        return verify_certificate(Certificate::from_json(j));
    } catch (const std::exception& e) {
        return VerifyReport{false, {std::string("malformed certificate: ") + e.what()}};
    }
}

// ---------------------------------------------------------------- pipelines

Certificate smallness_certificate(const DownMap& f, const StarCover& u) {
    return issue("smallness", json{{"realization", "downstairs"}, {"map", map_to_json(f)}, {"cover", cover_to_json(u)}},
                 {small_assertion(f, u)});
}

Certificate smallness_certificate(const UpMap& f, const StarCover& u) {
    return issue("smallness", json{{"realization", "upstairs"}, {"map", map_to_json(f)}, {"cover", cover_to_json(u)}},
                 {small_assertion(f, u)});
}

namespace {

ApproxResult approximate(const UpMap& f, const StandardPartMap& s, const StarCover& v, const UpMap* original) {
    if (!is_small(f, v).small()) throw PreconditionFailed("map is not small for the cover");
    auto ext = extend_downstairs(vertex_partial(f, s), v);
    json pl{{"source", map_to_json(f)},
            {"map", map_to_json(ext.map)},
            {"cover", cover_to_json(v)},
            {"standard_part", standard_part_map_to_json(s)}};
    if (original) pl["original"] = map_to_json(*original);
    auto cert = issue("approximation", std::move(pl), approximation_checks(f, ext.map, v, s, original, false));
    require_passed(cert);
    return ApproxResult{std::move(ext.map), std::move(cert)};
}

}  // namespace

ApproxResult u_approximation(const UpMap& f, const StandardPartMap& s, const StarCover& v) {
    return approximate(f, s, v, nullptr);
}

HomotopyResult<Rational> close_homotopy(const DownMap& f, const DownMap& g, const StarCover& u) {
    auto r = is_close(f, g, u);
    if (!r.close) throw PreconditionFailed("maps are not close for the cover");
    auto f0 = reindex(f, r.domain);
    auto g0 = reindex(g, r.domain);
    auto ext = extend_downstairs(prism_partial(f0, g0), u);
    Homotopy<Rational> h{std::move(ext.map), std::move(f0), std::move(g0), f.base.has_value()};
    json pl{{"realization", "downstairs"},
            {"homotopy", homotopy_to_json(h)},
            {"source0", map_to_json(f)},
            {"source1", map_to_json(g)},
            {"cover", cover_to_json(u)}};
    std::function<DownMap(const PartialMap<Rational>&)> none;
    auto cert = issue("homotopy", std::move(pl), homotopy_checks(h, f, g, none, u, false));
    require_passed(cert);
    return {std::move(h), std::move(cert)};
}

HomotopyResult<InfScalar> close_def_homotopy(const UpMap& f, const UpMap& g, const StarCover& w,
                                             const StandardPartMap& s) {
    auto r = is_close(f, g, w);
    if (!r.close) throw PreconditionFailed("maps share no cover element on some simplex");
    auto f0 = reindex(f, r.domain);
    auto g0 = reindex(g, r.domain);
    auto ext = extend_upstairs(prism_partial(f0, g0), w, s);
    Homotopy<InfScalar> h{std::move(ext.map), std::move(f0), std::move(g0), f.base.has_value()};
    json pl{{"realization", "upstairs"},
            {"homotopy", homotopy_to_json(h)},
            {"source0", map_to_json(f)},
            {"source1", map_to_json(g)},
            {"cover", cover_to_json(w)},
            {"standard_part", standard_part_map_to_json(s)}};
    std::function<UpMap(const PartialMap<InfScalar>&)> none;
    auto cert = issue("homotopy", std::move(pl), homotopy_checks(h, f, g, none, root_of(w), false));
    require_passed(cert);
    return {std::move(h), std::move(cert)};
}

ApproxResult pushforward(const UpMap& f, const OpenRegion& o, const StandardPartMap& s, const PushOptions& opt) {
    if (!o.base->same_as(*s.down)) throw InvalidInput("region must live on the standard-part complex");
    for (const auto& y : f.images)
        if (!o.contains(standard_part(y))) throw PreconditionFailed("image is not inside the open region");
    auto u = good_cover(o, nullptr, opt.stage, opt.cap).cover;
    auto v = star_refinement(u, o, opt.cap);
    auto small = make_small(f, v, opt.cap).map;
    for (int i = 0; i < opt.extra_depth; ++i)
        small = reindex(small, std::make_shared<DownComplex>(barycentric_subdivision(*small.domain).complex));
    return approximate(small, s, v, &f);
}

StarCover lifting_cover(const StarCover& u, const OpenRegion& o, int n, int cap) {
    return n_good_refinement(star_refinement(u, o, cap), o, n, cap);
}

LiftResult lift_map(const DownMap& fstar, const StarCover& u, const OpenRegion& o, const StandardPartMap& s, int cap) {
    if (!fstar.codomain->same_as(*s.down)) throw InvalidInput("map must land in the standard-part complex");
    auto w = lifting_cover(u, o, std::max(1, fstar.domain->dim()), cap);
    auto mid = make_small(fstar, w, cap).map;
    auto ext = extend_upstairs(transfer_partial(mid, s), w, s);
    json pl{{"source", map_to_json(fstar)},
            {"small_source", map_to_json(mid)},
            {"map", map_to_json(ext.map)},
            {"cover", cover_to_json(w)},
            {"standard_part", standard_part_map_to_json(s)}};
    auto cert = issue("lift", std::move(pl), lift_map_checks(fstar, mid, ext.map, w, s, false));
    require_passed(cert);
    return LiftResult{std::move(ext.map), std::move(cert)};
}

LiftHomotopyResult lift_homotopy(const Homotopy<Rational>& g, const UpMap& f, const UpMap& gmap, const StarCover& u,
                                 const OpenRegion& o, const StandardPartMap& s, int cap) {
    if (!g.map.codomain->same_as(*s.down)) throw InvalidInput("homotopy must land in the standard-part complex");
    auto w = lifting_cover(u, o, g.map.domain->dim(), cap);
    auto mid = make_small(g.map, w, cap).map;
    auto ext = extend_upstairs(transfer_partial(mid, s), w, s);
    auto h0 = restrict_end(ext.map, 0);
    auto h1 = restrict_end(ext.map, 1);
    auto a = close_def_homotopy(reindex(f, h0.domain), h0, w, s);
    auto b = close_def_homotopy(h1, reindex(gmap, h1.domain), w, s);
    json hp{{"mode", "lifted"},
            {"source", map_to_json(g.map)},
            {"map", map_to_json(ext.map)},
            {"cover", cover_to_json(w)},
            {"standard_part", standard_part_map_to_json(s)}};
    auto hc = issue("homotopy", std::move(hp), lifted_homotopy_checks(g.map, ext.map, w, s, false));
    require_passed(hc);
    Homotopy<InfScalar> mid_h{ext.map, h0, h1, g.relative_base};
    json pl{{"mode", "homotopy"},
            {"pieces", json::array({a.certificate.to_json(), hc.to_json(), b.certificate.to_json()})},
            {"source0", map_to_json(f)},
            {"source1", map_to_json(gmap)}};
    auto cert = issue("lift", std::move(pl),
                      lift_homotopy_checks(a.homotopy, ext.map, b.homotopy, f, gmap,
                                           a.certificate.passed() && hc.passed() && b.certificate.passed()));
    require_passed(cert);
    return LiftHomotopyResult{{std::move(a.homotopy), std::move(mid_h), std::move(b.homotopy)}, std::move(cert)};
}

}  // namespace stpl
