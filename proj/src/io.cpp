#include "stpl/io.hpp"

#include <algorithm>

namespace stpl {

namespace {
Poly poly_from_json(const json& j);
}

template <>
Rational scalar_from_json<Rational>(const json& j) {
    if (!j.is_string()) throw InvalidInput("rational scalar must be a string");
    return Rational::parse(j.get<std::string>());
}

template <>
InfScalar scalar_from_json<InfScalar>(const json& j) {
    if (j.is_string()) return InfScalar(Rational::parse(j.get<std::string>()));
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw InvalidInput("infinitesimal scalar must be an object with num and den");
    return InfScalar(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

namespace {

json poly_to_json(const Poly& p) {
    json a = json::array();
    for (const auto& c : p) a.push_back(c.str());
    return a;
}

Poly poly_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("polynomial must be an array of coefficient strings");
    Poly p;
    for (const auto& c : j) p.push_back(scalar_from_json<Rational>(c));
    return p;
}

VertexId parse_id(const std::string& key) {
    try {
        size_t used = 0;
        long v = std::stol(key, &used);
        if (used != key.size() || v < 0) throw InvalidInput("bad vertex id '" + key + "'");
        return static_cast<VertexId>(v);
    } catch (const std::logic_error&) {
        throw InvalidInput("bad vertex id '" + key + "'");
    }
}

}  // namespace

json to_json(const Rational& x) { return x.str(); }

json to_json(const InfScalar& x) { return json{{"num", poly_to_json(x.num())}, {"den", poly_to_json(x.den())}}; }

template <class F>
json point_to_json(const Point<F>& p) {
    json a = json::array();
    for (const auto& c : p) a.push_back(to_json(c));
    return a;
}

template <class F>
Point<F> point_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("point must be an array");
    Point<F> p;
    for (const auto& c : j) p.push_back(scalar_from_json<F>(c));
    return p;
}

json simplex_to_json(const Simplex& s) {
    json a = json::array();
    for (auto v : s) a.push_back(v);
    return a;
}

template <class F>
json complex_to_json(const Complex<F>& c) {
    json verts = json::object();
    for (VertexId v = 0; v < c.num_vertices(); ++v) verts[std::to_string(v)] = point_to_json(c.point(v));
    json simps = json::array();
    for (auto m : c.maximal()) simps.push_back(simplex_to_json(c.simplex(m)));
    return json{{"ambient_dim", c.ambient_dim()},
                {"realization", FieldTraits<F>::realization},
                {"vertices", verts},
                {"simplexes", simps}};
}

template <class F>
std::pair<Complex<F>, std::vector<VertexId>> complex_from_json_mapped(const json& j) {
    if (!j.is_object()) throw InvalidInput("complex must be an object");
    if (j.value("realization", std::string(FieldTraits<F>::realization)) != FieldTraits<F>::realization)
        throw InvalidInput("complex realization mismatch");
    auto k = j.at("ambient_dim").get<size_t>();
    const auto& verts = j.at("vertices");
    std::vector<std::pair<VertexId, Point<F>>> items;
    for (auto it = verts.begin(); it != verts.end(); ++it) items.emplace_back(parse_id(it.key()), point_from_json<F>(it.value()));
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < items.size(); ++i)
        if (items[i].first != i) throw InvalidInput("vertex ids must be 0..n-1");
    std::vector<Point<F>> pts;
    for (auto& [id, p] : items) pts.push_back(std::move(p));
    std::vector<std::vector<VertexId>> simps;
    for (const auto& s : j.at("simplexes")) simps.push_back(s.get<std::vector<VertexId>>());
    return Complex<F>::make_mapped(k, std::move(pts), std::move(simps), true);
}

template <class F>
Complex<F> complex_from_json(const json& j) {
    return complex_from_json_mapped<F>(j).first;
}

template <class F>
json map_to_json(const SimplicialMap<F>& f) {
    json imgs = json::object();
    for (VertexId v = 0; v < f.images.size(); ++v) imgs[std::to_string(v)] = point_to_json(f.images[v]);
    json out{{"domain", complex_to_json(*f.domain)},
             {"codomain", complex_to_json(*f.codomain)},
             {"realization", FieldTraits<F>::realization},
             {"vertex_images", imgs}};
    out["base_point"] = f.base ? json{{"vertex", *f.base}, {"image", point_to_json(f.images[*f.base])}} : json(nullptr);
    return out;
}

template <class F>
SimplicialMap<F> map_from_json(const json& j) {
    auto [dom, remap] = complex_from_json_mapped<Rational>(j.at("domain"));
    auto cod = complex_from_json<F>(j.at("codomain"));
    std::vector<Point<F>> imgs(dom.num_vertices());
    std::vector<bool> seen(dom.num_vertices(), false);
    const auto& vi = j.at("vertex_images");
    for (auto it = vi.begin(); it != vi.end(); ++it) {
        auto id = parse_id(it.key());
        if (id >= remap.size()) throw InvalidInput("vertex image for unknown vertex");
        imgs[remap[id]] = point_from_json<F>(it.value());
        seen[remap[id]] = true;
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw InvalidInput("every domain vertex needs an image");
    std::optional<VertexId> base;
    if (j.contains("base_point") && !j.at("base_point").is_null()) {
        const auto& b = j.at("base_point");
        auto id = b.at("vertex").get<VertexId>();
        if (id >= remap.size()) throw InvalidInput("base vertex out of range");
        base = remap[id];
        if (b.contains("image") && point_from_json<F>(b.at("image")) != imgs[*base])
            throw InvalidInput("base vertex image differs from the required base image");
    }
    return SimplicialMap<F>::make(std::make_shared<DownComplex>(std::move(dom)),
                                  std::make_shared<Complex<F>>(std::move(cod)), std::move(imgs), base);
}

namespace {

const char* kind_name(CoverKind k) {
    switch (k) {
        case CoverKind::plain: return "plain";
        case CoverKind::star_refining: return "star-refining";
        case CoverKind::semi_good: return "semi-good";
        case CoverKind::n_good: return "n-good";
    }
    return "plain";
}

CoverKind kind_from(const std::string& s) {
    if (s == "plain") return CoverKind::plain;
    if (s == "star-refining") return CoverKind::star_refining;
    if (s == "semi-good") return CoverKind::semi_good;
    if (s == "n-good") return CoverKind::n_good;
    throw InvalidInput("unknown cover tag '" + s + "'");
}

}  // namespace

json cover_to_json(const StarCover& c) {
    json centers = json::array();
    for (const auto& p : c.centers) centers.push_back(point_to_json(p));
    json tag{{"kind", kind_name(c.kind)}, {"level", c.level}};
    json out{{"carrier", complex_to_json(*c.carrier)}, {"centers", centers}, {"tag", tag}};
    out["witness"] = c.witness ? cover_to_json(*c.witness) : json(nullptr);
    out["outer"] = c.outer;
    return out;
}

StarCover cover_from_json(const json& j) {
    auto carrier = std::make_shared<DownComplex>(complex_from_json<Rational>(j.at("carrier")));
    std::vector<Point<Rational>> centers;
    for (const auto& p : j.at("centers")) centers.push_back(point_from_json<Rational>(p));
    auto c = StarCover::make(carrier, std::move(centers));
    if (j.contains("tag")) {
        c.kind = kind_from(j.at("tag").at("kind").get<std::string>());
        c.level = j.at("tag").value("level", 0);
    }
    if (j.contains("witness") && !j.at("witness").is_null())
        c.witness = std::make_shared<StarCover>(cover_from_json(j.at("witness")));
    if (j.contains("outer")) c.outer = j.at("outer").get<std::vector<size_t>>();
    if (!c.outer.empty() && c.outer.size() != c.size()) throw InvalidInput("outer list length mismatch");
    return c;
}

json region_to_json(const OpenRegion& o) {
    json ex = json::array();
    for (auto i : o.excluded.members) ex.push_back(simplex_to_json(o.base->simplex(i)));
    return json{{"base", complex_to_json(*o.base)}, {"excluded", ex}};
}

OpenRegion region_from_json(const json& j) {
    auto [base, remap] = complex_from_json_mapped<Rational>(j.at("base"));
    auto ptr = std::make_shared<DownComplex>(std::move(base));
    std::vector<size_t> members;
    for (const auto& s : j.value("excluded", json::array())) {
        Simplex q;
        for (auto v : s.get<std::vector<VertexId>>()) {
            if (v >= remap.size()) throw InvalidInput("excluded simplex names an unknown vertex");
            q.push_back(remap[v]);
        }
        std::sort(q.begin(), q.end());
        auto idx = ptr->find(q);
        if (!idx) throw InvalidInput("excluded simplex is not in the base complex");
        members.push_back(*idx);
    }
    // closed subcomplex: add all faces
    auto closed = ptr->closure(members);
    return OpenRegion{ptr, closed};
}

template <class F>
json homotopy_to_json(const Homotopy<F>& h) {
    return json{{"map", map_to_json(h.map)},
                {"end0", map_to_json(h.end0)},
                {"end1", map_to_json(h.end1)},
                {"relative_base", h.relative_base}};
}

template <class F>
Homotopy<F> homotopy_from_json(const json& j) {
    return Homotopy<F>{map_from_json<F>(j.at("map")), map_from_json<F>(j.at("end0")), map_from_json<F>(j.at("end1")),
                       j.value("relative_base", false)};
}

std::string canonical(const json& j) { return j.dump() + "\n"; }

bool is_upstairs(const json& j) {
    if (j.contains("realization")) return j.at("realization") == "upstairs";
    if (j.contains("codomain")) return is_upstairs(j.at("codomain"));
    return false;
}

#define STPL_IO(F)                                                                   \
    template json point_to_json<F>(const Point<F>&);                                 \
    template Point<F> point_from_json<F>(const json&);                               \
    template json complex_to_json<F>(const Complex<F>&);                             \
    template std::pair<Complex<F>, std::vector<VertexId>> complex_from_json_mapped<F>(const json&); \
    template Complex<F> complex_from_json<F>(const json&);                           \
    template json map_to_json<F>(const SimplicialMap<F>&);                           \
    template SimplicialMap<F> map_from_json<F>(const json&);                         \
    template json homotopy_to_json<F>(const Homotopy<F>&);                           \
    template Homotopy<F> homotopy_from_json<F>(const json&);

STPL_IO(Rational)
STPL_IO(InfScalar)

}  // namespace stpl
