#include "stpl/plmaps.hpp"

#include <algorithm>

namespace stpl {

namespace {

Simplex unite(const Simplex& a, const Simplex& b) {
    Simplex out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

template <class F>
Point<F> combine(const std::vector<F>& lam, const std::vector<const Point<F>*>& pts) {
    Point<F> out(pts.front()->size(), F(0));
    for (size_t j = 0; j < lam.size(); ++j)
        for (size_t c = 0; c < out.size(); ++c) out[c] += lam[j] * (*pts[j])[c];
    return out;
}

}  // namespace

template <class F>
SimplicialMap<F> SimplicialMap<F>::make(ComplexPtr domain, std::shared_ptr<const Complex<F>> codomain,
                                        std::vector<Point<F>> images, std::optional<VertexId> base) {
    std::vector<Simplex> carriers;
    for (const auto& y : images) {
        if (y.size() != codomain->ambient_dim()) throw InvalidInput("image with wrong ambient dimension");
        auto c = codomain->try_carrier(y);
        if (!c) throw InvalidInput("vertex image outside the codomain");
        carriers.push_back(*c);
    }
    return make_with_carriers(std::move(domain), std::move(codomain), std::move(images), carriers, base);
}

template <class F>
SimplicialMap<F> SimplicialMap<F>::make_with_carriers(ComplexPtr domain, std::shared_ptr<const Complex<F>> codomain,
                                                      std::vector<Point<F>> images, const std::vector<Simplex>& carriers,
                                                      std::optional<VertexId> base) {
    if (!domain->is_closed()) throw InvalidInput("map domain must be a closed complex");
    if (images.size() != domain->num_vertices() || carriers.size() != images.size())
        throw InvalidInput("one image per domain vertex required");
    if (base && *base >= domain->num_vertices()) throw InvalidInput("base vertex out of range");
    for (auto m : domain->maximal()) {
        Simplex u;
        for (auto v : domain->simplex(m)) u = unite(u, carriers[v]);
        if (!codomain->find(u)) throw InvalidInput("images of a domain simplex share no closed codomain simplex");
    }
    SimplicialMap f;
    f.domain = std::move(domain);
    f.codomain = std::move(codomain);
    f.images = std::move(images);
    f.base = base;
    f.carriers = carriers;
    return f;
}

template <class F>
Simplex SimplicialMap<F>::image_carrier(size_t i) const {
    Simplex u;
    for (auto v : domain->simplex(i)) u = unite(u, carriers.empty() ? codomain->carrier(images[v]) : carriers[v]);
    return u;
}

template <class F>
std::vector<Point<F>> SimplicialMap<F>::image_points(size_t i) const {
    std::vector<Point<F>> out;
    for (auto v : domain->simplex(i)) out.push_back(images[v]);
    return out;
}

template <class F>
std::optional<Point<F>> SimplicialMap<F>::base_image() const {
    if (!base) return std::nullopt;
    return images[*base];
}

template <class F>
Point<F> evaluate(const SimplicialMap<F>& f, const Point<Rational>& x) {
    auto c = f.domain->try_carrier(x);
    if (!c) throw InvalidInput("point outside the map domain");
    auto lam = *f.domain->barycentric(*c, x);
    std::vector<F> w;
    std::vector<const Point<F>*> pts;
    for (size_t j = 0; j < c->size(); ++j) {
        w.push_back(FieldTraits<F>::from_rational(lam[j]));
        pts.push_back(&f.images[(*c)[j]]);
    }
    return combine(w, pts);
}

Point<InfScalar> evaluate_up(const UpMap& f, const Point<InfScalar>& x) {
    auto up = lift(*f.domain);
    auto c = up.try_carrier(x);
    if (!c) throw InvalidInput("point outside the map domain");
    auto lam = *up.barycentric(*c, x);
    std::vector<const Point<InfScalar>*> pts;
    for (auto v : *c) pts.push_back(&f.images[v]);
    return combine(lam, pts);
}

template <class F>
SimplicialMap<F> reindex(const SimplicialMap<F>& f, ComplexPtr finer) {
    std::vector<Point<F>> images;
    std::vector<Simplex> carriers;
    images.reserve(finer->num_vertices());
    for (const auto& x : finer->points()) {
        auto c = f.domain->try_carrier(x);
        if (!c) throw InvalidInput("point outside the map domain");
        auto lam = *f.domain->barycentric(*c, x);
        std::vector<F> w;
        std::vector<const Point<F>*> pts;
        Simplex car;
        for (size_t j = 0; j < c->size(); ++j) {
            w.push_back(FieldTraits<F>::from_rational(lam[j]));
            pts.push_back(&f.images[(*c)[j]]);
            car = unite(car, f.carriers.empty() ? f.codomain->carrier(f.images[(*c)[j]]) : f.carriers[(*c)[j]]);
        }
        images.push_back(combine(w, pts));
        carriers.push_back(std::move(car));
    }
    std::optional<VertexId> base;
    if (f.base) {
        base = finer->find_vertex(f.domain->point(*f.base));
        if (!base) throw InvalidInput("subdivision drops the base vertex");
    }
    return SimplicialMap<F>::make_with_carriers(std::move(finer), f.codomain, std::move(images), carriers, base);
}

template <class F>
SimplicialMap<F> constant_map(ComplexPtr domain, std::shared_ptr<const Complex<F>> codomain, const Point<F>& value) {
    std::vector<Point<F>> images(domain->num_vertices(), value);
    return SimplicialMap<F>::make(std::move(domain), std::move(codomain), std::move(images));
}

DownMap standard_part(const UpMap& f, std::shared_ptr<const DownComplex> st_codomain) {
    std::vector<Point<Rational>> images;
    for (const auto& y : f.images) images.push_back(standard_part(y));
    return DownMap::make(f.domain, std::move(st_codomain), std::move(images), f.base);
}

bool SmallReport::small() const {
    return std::all_of(witness.begin(), witness.end(), [](const auto& w) { return w.has_value(); });
}

std::vector<size_t> SmallReport::failures() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < witness.size(); ++i)
        if (!witness[i]) out.push_back(i);
    return out;
}

std::vector<Point<Rational>> shadow(const std::vector<Point<InfScalar>>& pts) {
    std::vector<Point<Rational>> out;
    for (const auto& p : pts) out.push_back(standard_part(p));
    return out;
}

std::vector<Point<Rational>> shadow(const std::vector<Point<Rational>>& pts) { return pts; }

template <class F>
SmallReport is_small(const SimplicialMap<F>& f, const StarCover& u) {
    SmallReport r;
    r.witness.resize(f.domain->size());
    auto st = shadow(f.images);
    std::vector<Point<Rational>> pts;
    for (size_t i = 0; i < f.domain->size(); ++i) {
        pts.clear();
        for (auto v : f.domain->simplex(i)) pts.push_back(st[v]);
        r.witness[i] = u.find_hull(pts);
    }
    return r;
}

template <class F>
SmallResult<F> make_small(const SimplicialMap<F>& f, const StarCover& u, int cap) {
    if (is_small(f, u).small()) return {f, 0};
    ComplexPtr cur = f.domain;
    for (int m = 1; m <= cap; ++m) {
        cur = std::make_shared<DownComplex>(barycentric_subdivision(*cur).complex);
        auto g = reindex(f, cur);
        if (is_small(g, u).small()) return {std::move(g), m};
    }
    throw SubdivisionCapExceeded("map not small after " + std::to_string(cap) + " subdivisions");
}

template <class F>
CloseReport is_close(const SimplicialMap<F>& f, const SimplicialMap<F>& g, const StarCover& u, int extra) {
    if (!f.domain->same_as(*g.domain)) throw InvalidInput("closeness needs a common domain");
    CloseReport r;
    ComplexPtr cur = f.domain;
    int depth = 0, spare = extra;
    for (;;) {
        auto fd = reindex(f, cur);
        auto gd = reindex(g, cur);
        auto fs = shadow(fd.images);
        auto gs = shadow(gd.images);
        r.rounds = depth;
        r.domain = cur;
        r.witness.assign(cur->size(), std::nullopt);
        bool ok = true;
        std::vector<Point<Rational>> fp, gp;
        for (size_t i = 0; ok && i < cur->size(); ++i) {
            fp.clear();
            gp.clear();
            for (auto v : cur->simplex(i)) {
                fp.push_back(fs[v]);
                gp.push_back(gs[v]);
            }
            if (auto c0 = u.carrier->try_carrier(fp.front()))
                for (auto el : u.elements_with_core_in(*c0))
                    if (u.contains_hull(el, fp) && u.contains_hull(el, gp)) {
                        r.witness[i] = el;
                        break;
                    }
            ok = r.witness[i].has_value();
        }
        if (ok) {
            r.close = true;
            return r;
        }
        // subdivision rounds past the point where both maps are small count against `extra`
        if (is_small(fd, u).small() && is_small(gd, u).small() && spare-- <= 0) return r;
        if (++depth > 20 + extra) return r;
        cur = std::make_shared<DownComplex>(barycentric_subdivision(*cur).complex);
    }
}

template <class F>
SimplicialMap<F> restrict_end(const SimplicialMap<F>& h, int t) {
    const auto& d = *h.domain;
    const size_t k = d.ambient_dim() - 1;
    const Rational tt(t);
    std::vector<VertexId> remap(d.num_vertices(), static_cast<VertexId>(-1));
    std::vector<Point<Rational>> pts;
    std::vector<Point<F>> images;
    std::vector<Simplex> cars;
    for (VertexId v = 0; v < d.num_vertices(); ++v) {
        if (d.point(v)[k] != tt) continue;
        remap[v] = static_cast<VertexId>(pts.size());
        pts.emplace_back(d.point(v).begin(), d.point(v).begin() + static_cast<long>(k));
        images.push_back(h.images[v]);
        cars.push_back(h.carriers.empty() ? h.codomain->carrier(h.images[v]) : h.carriers[v]);
    }
    std::vector<std::vector<VertexId>> simps;
    for (const auto& s : d.simplexes()) {
        std::vector<VertexId> q;
        for (auto v : s)
            if (remap[v] != static_cast<VertexId>(-1)) q.push_back(remap[v]);
        if (q.size() == s.size()) simps.push_back(q);
    }
    auto [c, order] = DownComplex::make_mapped(k, pts, simps, true);
    std::vector<Point<F>> sorted(images.size());
    std::vector<Simplex> sorted_cars(images.size());
    for (size_t i = 0; i < images.size(); ++i) {
        sorted[order[i]] = images[i];
        sorted_cars[order[i]] = cars[i];
    }
    std::optional<VertexId> base;
    if (h.base && remap[*h.base] != static_cast<VertexId>(-1)) base = order[remap[*h.base]];
    return SimplicialMap<F>::make_with_carriers(std::make_shared<DownComplex>(std::move(c)), h.codomain,
                                                std::move(sorted), sorted_cars, base);
}

template <class F>
bool same_map(const SimplicialMap<F>& a, const SimplicialMap<F>& b) {
    return a.domain->same_as(*b.domain) && a.images == b.images;
}

template <class F>
Homotopy<F> constant_homotopy(const SimplicialMap<F>& f) {
    auto prism = std::make_shared<DownComplex>(prism_triangulation(*f.domain));
    std::vector<Point<F>> images;
    for (const auto& p : prism->points()) {
        Point<Rational> x(p.begin(), p.end() - 1);
        images.push_back(f.images[*f.domain->find_vertex(x)]);
    }
    std::optional<VertexId> base;
    if (f.base) {
        auto x = f.domain->point(*f.base);
        x.push_back(Rational(0));
        base = prism->find_vertex(x);
    }
    Homotopy<F> h{SimplicialMap<F>::make(prism, f.codomain, std::move(images), base), f, f, f.base.has_value()};
    return h;
}

#define STPL_PLMAPS(F)                                                                                    \
    template struct SimplicialMap<F>;                                                                     \
    template Point<F> evaluate<F>(const SimplicialMap<F>&, const Point<Rational>&);                       \
    template SimplicialMap<F> reindex<F>(const SimplicialMap<F>&, ComplexPtr);                            \
    template SimplicialMap<F> constant_map<F>(ComplexPtr, std::shared_ptr<const Complex<F>>, const Point<F>&); \
    template SmallReport is_small<F>(const SimplicialMap<F>&, const StarCover&);                          \
    template SmallResult<F> make_small<F>(const SimplicialMap<F>&, const StarCover&, int);                \
    template CloseReport is_close<F>(const SimplicialMap<F>&, const SimplicialMap<F>&, const StarCover&, int); \
    template SimplicialMap<F> restrict_end<F>(const SimplicialMap<F>&, int);                              \
    template bool same_map<F>(const SimplicialMap<F>&, const SimplicialMap<F>&);                          \
    template Homotopy<F> constant_homotopy<F>(const SimplicialMap<F>&);

STPL_PLMAPS(Rational)
STPL_PLMAPS(InfScalar)

}  // namespace stpl
