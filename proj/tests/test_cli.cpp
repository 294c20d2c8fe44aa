#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "stpl/invariants.hpp"

using namespace stpl;
using fixtures::share;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args) {
    std::string cmd = std::string(STPL_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("stpl_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string put(const std::string& name, const std::string& text) const {
        auto p = dir / name;
        std::ofstream(p, std::ios::binary) << text;
        return p.string();
    }
    std::string put(const std::string& name, const json& j) const { return put(name, canonical(j)); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

UpComplex inflated_hexagon() { return fixtures::inflate(fixtures::hexagon()); }

}  // namespace

TEST_CASE("validate canonicalizes and is idempotent") {
    Scratch s;
    // vertices listed out of lexicographic order, faces omitted
    json raw = json::parse(R"({"ambient_dim":2,"vertices":{"0":["1","0"],"1":["0","0"],"2":["0","1"]},
                              "simplexes":[[0,1,2]]})");
    auto first = cli("validate " + s.put("p.json", raw.dump(2)));
    CHECK(first.code == 0);
    auto canon = json::parse(first.out).at("payload").at("complex");
    auto second = cli("validate " + s.put("q.json", canon));
    CHECK(second.code == 0);
    CHECK(second.out == first.out);
    CHECK(canonical(canon) == canonical(complex_to_json(fixtures::standard_triangle())));

    auto cert_out = cli("validate " + s.put("m.json", map_to_json(DownMap::make(share(fixtures::interval()),
                                                                               share(fixtures::interval()),
                                                                               fixtures::interval().points()))));
    CHECK(cert_out.code == 0);
}

TEST_CASE("subdivide holds the given simplexes") {
    Scratch s;
    auto sq = fixtures::split_square();
    auto p = s.put("sq.json", complex_to_json(sq));
    // hold the triangle on file vertices 0, 1, 2
    auto hold = s.put("hold.json", json::parse("[[0,1,2]]"));
    auto r = cli("subdivide --complex " + p + " --rounds 1 --hold " + hold);
    REQUIRE(r.code == 0);
    auto c = complex_from_json<Rational>(json::parse(r.out));
    Simplex t;
    for (const auto& q : {fixtures::pt(0, 0), fixtures::pt(1, 0), fixtures::pt(0, 1)}) t.push_back(*c.find_vertex(q));
    std::sort(t.begin(), t.end());
    CHECK(c.find(t).has_value());
    // the other triangle cones over the held diagonal and two halved edges
    CHECK(c.maximal().size() == 1 + 5);
    auto twice = cli("subdivide --complex " + p + " --rounds 1 --hold " + hold);
    CHECK(twice.out == r.out);
    auto plain = cli("subdivide --complex " + p + " --rounds 2");
    CHECK(complex_from_json<Rational>(json::parse(plain.out)).maximal().size() == 72);
}

TEST_CASE("push matches the library pushforward and verifies in a fresh process") {
    Scratch s;
    auto up = std::make_shared<const UpComplex>(inflated_hexagon());
    auto hex = share(fixtures::hexagon());
    auto f = UpMap::make(hex, up, up->points());
    auto sp = StandardPartMap::make(up);
    auto region = OpenRegion::whole(sp.down);
    auto fp = s.put("f.json", map_to_json(f));
    auto op = s.put("o.json", region_to_json(region));
    auto out = s.path("fstar.json"), cert = s.path("cert.json");
    auto r = cli("push --map " + fp + " --region " + op + " --stage 2 --out " + out + " --cert " + cert);
    REQUIRE(r.code == 0);
    auto lib = pushforward(f, region, sp, PushOptions{2, 20, 0});
    CHECK(slurp(out) == canonical(map_to_json(lib.map)));
    CHECK(slurp(cert) == canonical(lib.certificate.to_json()));

    auto again = s.path("fstar2.json"), cert2 = s.path("cert2.json");
    CHECK(cli("push --map " + fp + " --region " + op + " --stage 2 --out " + again + " --cert " + cert2).code == 0);
    CHECK(slurp(again) == slurp(out));
    CHECK(slurp(cert2) == slurp(cert));

    auto v = cli("verify --cert " + cert);
    CHECK(v.code == 0);
    CHECK(json::parse(v.out).at("ok") == true);

    auto bad = json::parse(slurp(cert));
    bad["assertions"][0]["result"] = !bad["assertions"][0]["result"].get<bool>();
    CHECK(cli("verify --cert " + s.put("bad.json", bad)).code == 1);

    CHECK(cli("winding --map " + out).out == canonical(json{{"winding", 1}}));
}

TEST_CASE("references resolve relative to the referring file") {
    Scratch s;
    s.put("c.json", complex_to_json(fixtures::torus7()));
    auto r = cli("pi1 --complex " + s.put("ref.json", json{{"$ref", "c.json"}}));
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j.at("abelian_invariants") == json::array({0, 0}));
    CHECK(j.at("presentation").at("generators").size() == 2);
    CHECK(cli("pi1 --raw --complex " + s.path("c.json")).code == 0);
    CHECK(cli("pi1 --complex " + s.put("dangling.json", json{{"$ref", "missing.json"}})).code == 4);
    s.put("loop.json", json{{"$ref", "loop.json"}});
    CHECK(cli("pi1 --complex " + s.path("loop.json")).code == 4);
}

TEST_CASE("distinct exit codes") {
    Scratch s;
    CHECK(cli("").code == 2);
    CHECK(cli("subdivide").code == 2);
    CHECK(cli("validate " + s.put("broken.json", std::string("{\"ambient_dim\": "))).code == 3);
    CHECK(cli("validate " + s.put("empty.json", json::object())).code == 3);

    // a degree-2 circle map is not small for a coarse cover within zero rounds
    auto dom = fixtures::polygon_walk(12);
    auto f = fixtures::circle_map(dom, fixtures::hexagon_walk(), 2);
    auto u = vertex_star_cover(f.codomain);
    auto fp = s.put("f.json", map_to_json(f)), up = s.put("u.json", cover_to_json(u));
    auto fine = vertex_star_cover(share(barycentric_subdivision(*f.codomain, 2).complex));
    auto finep = s.put("fine.json", cover_to_json(fine));
    CHECK(cli("small --map " + fp + " --cover " + finep + " --cap 0").code == 5);
    CHECK(cli("small --map " + fp + " --cover " + finep).code == 0);

    // winding 1 and winding 2 are not close
    auto g = fixtures::circle_map(dom, fixtures::hexagon_walk(), 1);
    CHECK(cli("homotopy --f " + fp + " --g " + s.put("g.json", map_to_json(g)) + " --cover " + finep).code == 6);
    CHECK(cli("homotopy --f " + fp + " --g " + fp + " --cover " + up + " --cert " + s.path("h.json") + " -o " +
              s.path("hom.json"))
              .code == 0);
    CHECK(cli("verify --cert " + s.path("h.json")).code == 0);
}

TEST_CASE("dominate and validate report upstairs audits") {
    Scratch s;
    auto amb = fixtures::inflate(fixtures::grid_square(1));
    auto cp = s.put("x.json", complex_to_json(amb));
    // left column of triangles, by file ids of the emitted complex
    json set = json::array();
    for (auto m : amb.maximal()) {
        const auto& t = amb.simplex(m);
        if (std::all_of(t.begin(), t.end(), [&](VertexId v) { return standard_part(amb.point(v))[0] <= Rational(0); }))
            set.push_back(t);
    }
    auto r = cli("dominate --complex " + cp + " --set " + s.put("d.json", set) + " --grid 4");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out).at("kind") == "domination");
    auto v = cli("validate " + cp);
    CHECK(v.code == 0);
    CHECK(json::parse(v.out).at("payload").at("dimension").at("payload").at("st_dim") == 2);
}
