// Command-line front end: read JSON artifacts, run one operation, write canonical JSON.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "stpl/invariants.hpp"

using namespace stpl;
namespace fs = std::filesystem;

namespace {

enum Exit : int {
    ok = 0,
    failed_assertion = 1,
    usage = 2,  // CLI11 reports usage errors itself
    parse_error = 3,
    unresolved_ref = 4,
    cap_exceeded = 5,
    precondition = 6,
    internal = 7,
};

struct Unresolved : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Objects of the form {"$ref": "path"} are replaced by the referenced document,
// paths taken relative to the referring file.
void resolve(json& j, const fs::path& dir, std::set<fs::path>& stack);

json load(const fs::path& path, std::set<fs::path>& stack) {
    auto canon = fs::weakly_canonical(path);
    if (stack.count(canon)) throw Unresolved("reference cycle through " + path.string());
    std::ifstream in(path);
    if (!in) throw Unresolved("cannot open " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInput(path.string() + ": " + e.what());
    }
    stack.insert(canon);
    resolve(j, path.parent_path(), stack);
    stack.erase(canon);
    return j;
}

void resolve(json& j, const fs::path& dir, std::set<fs::path>& stack) {
    if (j.is_object() && j.size() == 1 && j.contains("$ref")) {
        if (!j.at("$ref").is_string()) throw Unresolved("$ref must be a path string");
        j = load(dir / j.at("$ref").get<std::string>(), stack);
        return;
    }
    if (j.is_structured())
        for (auto& v : j) resolve(v, dir, stack);
}

json load(const std::string& path) {
    std::set<fs::path> stack;
    return load(fs::path(path), stack);
}

void emit(const json& j, const std::string& path) {
    auto text = canonical(j);
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// Result to --out; a certificate to --cert, or alongside the result when --cert is absent.
int emit_with(const json& result, const Certificate& cert, const std::string& out, const std::string& cert_path) {
    if (cert_path.empty()) {
        emit(json{{"result", result}, {"certificate", cert.to_json()}}, out);
    } else {
        emit(result, out);
        emit(cert.to_json(), cert_path);
    }
    return cert.passed() ? ok : failed_assertion;
}

template <class F>
std::vector<size_t> simplex_list(const json& j, const Complex<F>& c, const std::vector<VertexId>& remap) {
    const auto& list = j.is_object() ? j.at("simplexes") : j;
    std::vector<size_t> out;
    for (const auto& s : list) {
        Simplex q;
        for (auto v : s.get<std::vector<VertexId>>()) {
            if (v >= remap.size()) throw InvalidInput("simplex names an unknown vertex");
            q.push_back(remap[v]);
        }
        std::sort(q.begin(), q.end());
        auto i = c.find(q);
        if (!i) throw InvalidInput("simplex is not in the complex");
        out.push_back(*i);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

template <class F>
json validation_json(const Complex<F>& c) {
    auto r = validate_complex(c);
    json pairs = json::array();
    for (auto [a, b] : r.bad_pairs) pairs.push_back(json::array({a, b}));
    json as = json::array();
    as.push_back(json{{"type", "independent"}, {"data", {{"dependent", r.dependent}}}, {"result", r.dependent.empty()}});
    as.push_back(json{{"type", "face_condition"}, {"data", {{"bad_pairs", pairs}}}, {"result", r.bad_pairs.empty()}});
    return json{{"kind", "validation"}, {"payload", {{"complex", complex_to_json(c)}}}, {"assertions", as}};
}

struct Options {
    std::string out;
    std::string cert;
    int cap = 20;
};

// ---------------------------------------------------------------- commands

int cmd_validate(const std::string& path, const Options& o) {
    auto j = load(path);
    json rep;
    if (j.contains("kind") && j.contains("payload")) {
        auto v = verify_certificate(j);
        rep = json{{"kind", "validation"}, {"ok", v.ok}, {"failures", v.failures}};
        emit(rep, o.out);
        return v.ok ? ok : failed_assertion;
    }
    if (j.contains("vertex_images")) {
        json canon = is_upstairs(j) ? map_to_json(map_from_json<InfScalar>(j)) : map_to_json(map_from_json<Rational>(j));
        rep = json{{"kind", "validation"}, {"payload", {{"map", canon}}}, {"assertions", json::array()}};
    } else if (j.contains("centers")) {
        auto c = cover_from_json(j);
        rep = json{{"kind", "validation"}, {"payload", {{"cover", cover_to_json(c)}}}, {"assertions", json::array()}};
    } else if (j.contains("base") && j.contains("excluded")) {
        auto r = region_from_json(j);
        rep = json{{"kind", "validation"}, {"payload", {{"region", region_to_json(r)}}}, {"assertions", json::array()}};
    } else {
        rep = is_upstairs(j) ? validation_json(complex_from_json<InfScalar>(j))
                             : validation_json(complex_from_json<Rational>(j));
        if (is_upstairs(j)) rep["payload"]["dimension"] = dimension_audit(complex_from_json<InfScalar>(j)).to_json();
    }
    emit(rep, o.out);
    bool good = true;
    for (const auto& a : rep.at("assertions")) good = good && a.at("result").get<bool>();
    return good ? ok : failed_assertion;
}

template <class F>
int subdivide_as(const json& j, int rounds, const std::string& hold_path, const Options& o) {
    auto [c, remap] = complex_from_json_mapped<F>(j);
    Subcomplex hold;
    if (!hold_path.empty()) hold = c.closure(simplex_list(load(hold_path), c, remap));
    for (int r = 0; r < rounds; ++r) {
        auto sd = barycentric_subdivision(c, hold);
        Subcomplex next;
        for (size_t i = 0; i < sd.complex.size(); ++i)
            if (hold.contains(sd.parent[i])) next.members.push_back(i);
        c = std::move(sd.complex);
        hold = std::move(next);
    }
    emit(complex_to_json(c), o.out);
    return ok;
}

int cmd_subdivide(const std::string& path, int rounds, const std::string& hold, const Options& o) {
    if (rounds < 0) throw InvalidInput("rounds must be nonnegative");
    auto j = load(path);
    return is_upstairs(j) ? subdivide_as<InfScalar>(j, rounds, hold, o) : subdivide_as<Rational>(j, rounds, hold, o);
}

int cmd_goodcover(const std::string& region, int stage, const Options& o) {
    auto r = region_from_json(load(region));
    auto g = good_cover(r, nullptr, stage, o.cap);
    json chain = json::array();
    for (const auto& level : g.chain) {
        json l = json::array();
        for (const auto& cell : level) {
            json pts = json::array();
            for (const auto& p : cell) pts.push_back(point_to_json(p));
            l.push_back(pts);
        }
        chain.push_back(l);
    }
    emit(json{{"cover", cover_to_json(g.cover)}, {"chain", chain}, {"rounds", g.rounds}}, o.out);
    return ok;
}

int cmd_small(const std::string& map, const std::string& cover, const Options& o) {
    auto j = load(map);
    auto u = cover_from_json(load(cover));
    if (is_upstairs(j)) {
        auto r = make_small(map_from_json<InfScalar>(j), u, o.cap);
        return emit_with(map_to_json(r.map), smallness_certificate(r.map, u), o.out, o.cert);
    }
    auto r = make_small(map_from_json<Rational>(j), u, o.cap);
    return emit_with(map_to_json(r.map), smallness_certificate(r.map, u), o.out, o.cert);
}

int cmd_approx(const std::string& map, const std::string& cover, const Options& o) {
    auto f = map_from_json<InfScalar>(load(map));
    auto v = cover_from_json(load(cover));
    auto s = StandardPartMap::make(f.codomain);
    auto small = make_small(f, v, o.cap).map;
    auto r = u_approximation(small, s, v);
    return emit_with(map_to_json(r.map), r.certificate, o.out, o.cert);
}

int cmd_push(const std::string& map, const std::string& region, int stage, int depth, const Options& o) {
    auto f = map_from_json<InfScalar>(load(map));
    auto s = StandardPartMap::make(f.codomain);
    auto reg = region_from_json(load(region));
    if (!reg.base->same_as(*s.down)) throw InvalidInput("region must live on the standard part of the codomain");
    reg.base = s.down;
    auto r = pushforward(f, reg, s, PushOptions{stage, o.cap, depth});
    return emit_with(map_to_json(r.map), r.certificate, o.out, o.cert);
}

OpenRegion region_on(const std::string& path, const StandardPartMap& s) {
    if (path.empty()) return OpenRegion::whole(s.down);
    auto reg = region_from_json(load(path));
    if (!reg.base->same_as(*s.down)) throw InvalidInput("region must live on the standard part of the target");
    reg.base = s.down;
    return reg;
}

StarCover cover_on(const std::string& path, const StandardPartMap& s) {
    if (path.empty()) return vertex_star_cover(s.down);
    return cover_from_json(load(path));
}

int cmd_lift(const std::string& map, const std::string& target, const std::string& cover, const std::string& region,
             const std::string& homotopy, const std::string& src0, const std::string& src1, const Options& o) {
    auto up = std::make_shared<const UpComplex>(complex_from_json<InfScalar>(load(target)));
    auto s = StandardPartMap::make(up);
    auto u = cover_on(cover, s);
    auto reg = region_on(region, s);
    if (!homotopy.empty()) {
        if (src0.empty() || src1.empty()) throw InvalidInput("lifting a homotopy needs --source0 and --source1");
        auto g = homotopy_from_json<Rational>(load(homotopy));
        auto f0 = map_from_json<InfScalar>(load(src0));
        auto f1 = map_from_json<InfScalar>(load(src1));
        auto r = lift_homotopy(g, f0, f1, u, reg, s, o.cap);
        json pieces = json::array();
        for (const auto& h : r.pieces) pieces.push_back(homotopy_to_json(h));
        return emit_with(json{{"pieces", pieces}}, r.certificate, o.out, o.cert);
    }
    if (map.empty()) throw InvalidInput("lift needs --map or --homotopy");
    auto fstar = map_from_json<Rational>(load(map));
    if (!fstar.codomain->same_as(*s.down)) throw InvalidInput("map must land in the standard part of the target");
    fstar.codomain = s.down;
    auto r = lift_map(fstar, u, reg, s, o.cap);
    return emit_with(map_to_json(r.map), r.certificate, o.out, o.cert);
}

int cmd_homotopy(const std::string& f_path, const std::string& g_path, const std::string& cover, const Options& o) {
    auto jf = load(f_path);
    auto jg = load(g_path);
    auto u = cover_from_json(load(cover));
    if (is_upstairs(jf) != is_upstairs(jg)) throw InvalidInput("both maps must share a realization");
    if (is_upstairs(jf)) {
        auto f = map_from_json<InfScalar>(jf);
        auto g = map_from_json<InfScalar>(jg);
        auto s = StandardPartMap::make(f.codomain);
        auto r = close_def_homotopy(f, g, u, s);
        return emit_with(homotopy_to_json(r.homotopy), r.certificate, o.out, o.cert);
    }
    auto r = close_homotopy(map_from_json<Rational>(jf), map_from_json<Rational>(jg), u);
    return emit_with(homotopy_to_json(r.homotopy), r.certificate, o.out, o.cert);
}

int cmd_pi1(const std::string& path, unsigned base, bool raw, const Options& o) {
    auto c = complex_from_json_mapped<Rational>(load(path));
    if (base >= c.second.size()) throw InvalidInput("base vertex out of range");
    auto g = edge_path_pi1(c.first, c.second[base]);
    if (!raw) g = simplify(g);
    emit(json{{"presentation", g.to_json()}, {"abelian_invariants", abelian_invariants(g)}}, o.out);
    return ok;
}

int cmd_winding(const std::string& path, const Options& o) {
    auto j = load(path);
    long w = is_upstairs(j) ? winding_number(map_from_json<InfScalar>(j)) : winding_number(map_from_json<Rational>(j));
    emit(json{{"winding", w}}, o.out);
    return ok;
}

int cmd_dominate(const std::string& path, const std::string& set, long grid, const Options& o) {
    auto [c, remap] = complex_from_json_mapped<InfScalar>(load(path));
    auto amb = std::make_shared<const UpComplex>(std::move(c));
    auto members = simplex_list(load(set), *amb, remap);
    auto r = domination_check(PLSet<InfScalar>::make(amb, members), grid);
    emit(r.to_json(), o.out);
    return r.passed() ? ok : failed_assertion;
}

int cmd_verify(const std::string& path, const Options& o) {
    auto v = verify_certificate(load(path));
    emit(json{{"ok", v.ok}, {"failures", v.failures}}, o.out);
    return v.ok ? ok : failed_assertion;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact PL homotopy toolkit over Q(eps)"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub, bool cert) {
        sub->add_option("-o,--out", o.out, "Output file (stdout when absent)");
        sub->add_option("--cap", o.cap, "Subdivision round cap")->capture_default_str();
        if (cert) sub->add_option("--cert", o.cert, "Certificate file (embedded in the output when absent)");
    };
    std::string complex, map, cover, region, hold, set, target, homotopy, src0, src1, g_map, cert_in;
    int rounds = 1, stage = 3, depth = 0;
    unsigned base = 0;
    long grid = 8;
    bool raw = false;
    std::function<int()> run;

    auto* validate = app.add_subcommand("validate", "Parse, canonicalize and check a complex, map, cover, region or certificate");
    validate->add_option("input", complex, "Input file")->required();
    common(validate, false);
    validate->callback([&] { run = [&] { return cmd_validate(complex, o); }; });

    auto* subdivide = app.add_subcommand("subdivide", "Iterated barycentric subdivision");
    subdivide->add_option("--complex", complex)->required();
    subdivide->add_option("--rounds", rounds)->capture_default_str();
    subdivide->add_option("--hold", hold, "Simplex list held fixed (file vertex ids)");
    common(subdivide, false);
    subdivide->callback([&] { run = [&] { return cmd_subdivide(complex, rounds, hold, o); }; });

    auto* goodcover = app.add_subcommand("goodcover", "Good cover of an open region");
    goodcover->add_option("--region", region)->required();
    goodcover->add_option("--stage", stage)->capture_default_str();
    common(goodcover, false);
    goodcover->callback([&] { run = [&] { return cmd_goodcover(region, stage, o); }; });

    auto* small = app.add_subcommand("small", "Subdivide a map's domain until it is small for a cover");
    small->add_option("--map", map)->required();
    small->add_option("--cover", cover)->required();
    common(small, true);
    small->callback([&] { run = [&] { return cmd_small(map, cover, o); }; });

    auto* approx = app.add_subcommand("approx", "Downstairs approximation of an upstairs map");
    approx->add_option("--map", map)->required();
    approx->add_option("--cover", cover)->required();
    common(approx, true);
    approx->callback([&] { run = [&] { return cmd_approx(map, cover, o); }; });

    auto* push = app.add_subcommand("push", "Pushforward of an upstairs map into an open region");
    push->add_option("--map", map)->required();
    push->add_option("--region", region)->required();
    push->add_option("--stage", stage)->capture_default_str();
    push->add_option("--depth", depth, "Extra subdivisions before approximating")->capture_default_str();
    common(push, true);
    push->callback([&] { run = [&] { return cmd_push(map, region, stage, depth, o); }; });

    auto* lift = app.add_subcommand("lift", "Lift a downstairs map or homotopy");
    lift->add_option("--target", target, "Upstairs complex")->required();
    lift->add_option("--map", map);
    lift->add_option("--cover", cover, "Cover of the standard part (vertex stars when absent)");
    lift->add_option("--region", region, "Open region (everything when absent)");
    lift->add_option("--homotopy", homotopy);
    lift->add_option("--source0", src0);
    lift->add_option("--source1", src1);
    common(lift, true);
    lift->callback([&] { run = [&] { return cmd_lift(map, target, cover, region, homotopy, src0, src1, o); }; });

    auto* hom = app.add_subcommand("homotopy", "Homotopy between close maps");
    hom->add_option("--f", map)->required();
    hom->add_option("--g", g_map)->required();
    hom->add_option("--cover", cover)->required();
    common(hom, true);
    hom->callback([&] { run = [&] { return cmd_homotopy(map, g_map, cover, o); }; });

    auto* pi1 = app.add_subcommand("pi1", "Edge-path group presentation");
    pi1->add_option("--complex", complex)->required();
    pi1->add_option("--base", base, "Base vertex (file id)")->capture_default_str();
    pi1->add_flag("--raw", raw, "Skip Tietze simplification");
    common(pi1, false);
    pi1->callback([&] { run = [&] { return cmd_pi1(complex, base, raw, o); }; });

    auto* winding = app.add_subcommand("winding", "Winding number of a circle map");
    winding->add_option("--map", map)->required();
    common(winding, false);
    winding->callback([&] { run = [&] { return cmd_winding(map, o); }; });

    auto* dominate = app.add_subcommand("dominate", "Compact domination audit of a simplex set");
    dominate->add_option("--complex", complex)->required();
    dominate->add_option("--set", set, "Simplex list (file vertex ids)")->required();
    dominate->add_option("--grid", grid)->capture_default_str();
    common(dominate, false);
    dominate->callback([&] { run = [&] { return cmd_dominate(complex, set, grid, o); }; });

    auto* verify = app.add_subcommand("verify", "Re-derive every assertion of a certificate");
    verify->add_option("--cert", cert_in)->required();
    common(verify, false);
    verify->callback([&] { run = [&] { return cmd_verify(cert_in, o); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : usage;
    }
    try {
        return run();
    } catch (const Unresolved& e) {
        std::cerr << "unresolved reference: " << e.what() << "\n";
        return unresolved_ref;
    } catch (const SubdivisionCapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return cap_exceeded;
    } catch (const PreconditionFailed& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return precondition;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return parse_error;
    } catch (const json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return parse_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return internal;
    }
}
