#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heis/cert_io.hpp"
#include "heis/scalar_parser.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace heis;
namespace fs = std::filesystem;

namespace {

const fs::path kCertsDir = HEIS_CERTS_DIR;

RationalFunction rf(const std::string &s) {
    return parse_scalar(s, {kVarT, kVarLambda, kVarMu, "τ"});
}

std::vector<fs::path> cert_files(const char *sub) {
    std::vector<fs::path> out;
    for (const auto &e : fs::directory_iterator(kCertsDir / sub))
        if (e.path().extension() == ".json") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

struct Corpus {
    std::vector<DegenerationCertificate> degs;
    std::vector<ClosedSetPattern> patterns;
    std::vector<InvariantCertificate> invariants;
};

const Corpus &corpus() {
    static const Corpus c = [] {
        Corpus c;
        for (const auto &f : cert_files("deg"))
            c.degs.push_back(std::get<DegenerationCertificate>(load_certificate(f.string())));
        for (const auto &f : cert_files("nondeg")) {
            auto any = load_certificate(f.string());
            if (auto *p = std::get_if<ClosedSetPattern>(&any))
                c.patterns.push_back(*p);
            else
                c.invariants.push_back(std::get<InvariantCertificate>(any));
        }
        return c;
    }();
    return c;
}

const DegenGraph &grid_graph() {
    static const DegenGraph G = assemble_graph(corpus().degs, grid_values());
    return G;
}

std::vector<std::vector<bool>> reach_of(const DegenGraph &G) {
    size_t n = G.nodes.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (const auto &e : G.edges) r[e.from][e.to] = true;
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            if (r[i][k])
                for (size_t j = 0; j < n; ++j)
                    if (r[k][j]) r[i][j] = true;
    return r;
}

/// tiny hand-built graph over real catalog types
DegenGraph chain_graph() {
    DegenGraph G;
    G.nodes.push_back({CanonicalType("H02"), 14});
    G.nodes.push_back({CanonicalType("H01"), 17});
    G.nodes.push_back({CanonicalType("ZERO"), 25});
    G.edges.push_back({0, 1, "a", "", false});
    G.edges.push_back({1, 2, "b", "", false});
    G.edges.push_back({0, 2, "c", "", true});
    return G;
}

} // namespace

TEST_CASE("assembled grid graph has the expected shape") {
    const DegenGraph &G = grid_graph();
    CHECK(G.nodes.size() == 44);

    size_t h02 = G.index_of(CanonicalType("H02"));
    size_t h01 = G.index_of(CanonicalType("H01"));
    size_t zero = G.index_of(CanonicalType("ZERO"));
    REQUIRE(h02 < G.nodes.size());
    REQUIRE(h01 < G.nodes.size());
    REQUIRE(zero < G.nodes.size());
    CHECK(G.has_edge(h02, h01));
    // the universal bottom has an in-edge from everything else
    for (size_t i = 0; i < G.nodes.size(); ++i)
        if (i != zero) CHECK(G.has_edge(i, zero));

    size_t h09_1 = G.index_of(CanonicalType("H09", rf("1")));
    size_t h07 = G.index_of(CanonicalType("H07"));
    REQUIRE(h09_1 < G.nodes.size());
    CHECK(G.has_edge(h09_1, h07));

    // every primary edge carries a certificate id or "zero"
    for (const auto &e : G.edges)
        if (!e.closure) CHECK((e.provenance == "zero" || !e.provenance.empty()));
}

TEST_CASE("node levels cover the classification's axis") {
    std::set<size_t> levels;
    for (const auto &n : grid_graph().nodes) levels.insert(n.level);
    CHECK(levels == std::set<size_t>{7, 8, 9, 10, 11, 12, 14, 15, 16, 17, 25});
}

TEST_CASE("assembly is fail-fast on an unverifiable certificate") {
    auto degs = corpus().degs;
    degs[0].source = CanonicalType("H01"); // basis no longer matches
    CHECK_THROWS_AS(assemble_graph(degs, grid_values()), MathError);
}

TEST_CASE("transitive reduction drops exactly the implied edges") {
    DegenGraph R = transitive_reduction(chain_graph());
    CHECK(R.edges.size() == 2);
    CHECK(R.has_edge(0, 1));
    CHECK(R.has_edge(1, 2));
    CHECK(!R.has_edge(0, 2));

    DegenGraph empty;
    CHECK(transitive_reduction(empty).edges.empty());
}

TEST_CASE("reduction is idempotent and closure-preserving") {
    DegenGraph R = transitive_reduction(grid_graph());
    DegenGraph RR = transitive_reduction(R);
    CHECK(R.edges.size() == RR.edges.size());
    for (size_t i = 0; i < R.edges.size(); ++i) {
        CHECK(R.edges[i].from == RR.edges[i].from);
        CHECK(R.edges[i].to == RR.edges[i].to);
    }
    CHECK(reach_of(R) == reach_of(grid_graph()));
}

TEST_CASE("a cycle between distinct nodes is an error") {
    DegenGraph G;
    G.nodes.push_back({CanonicalType("H01"), 17});
    G.nodes.push_back({CanonicalType("H02"), 14});
    G.edges.push_back({0, 1, "x", "", false});
    G.edges.push_back({1, 0, "y", "", false});
    CHECK_THROWS_AS(transitive_reduction(G), MathError);
}

TEST_CASE("consistency check is clean on the assembled graph") {
    auto report = consistency_check(grid_graph(), corpus().patterns, corpus().invariants);
    for (const auto &r : report) INFO(r);
    CHECK(report.empty());
}

TEST_CASE("consistency check flags an injected level violation") {
    DegenGraph G = grid_graph();
    size_t h01 = G.index_of(CanonicalType("H01"));
    size_t h02 = G.index_of(CanonicalType("H02"));
    G.edges.push_back({h01, h02, "injected", "", false});
    auto report = consistency_check(G, {}, {});
    REQUIRE(!report.empty());
    CHECK(report.front().find("does not increase") != std::string::npos);
}

TEST_CASE("consistency check flags an edge contradicting a blocking certificate") {
    DegenGraph G = grid_graph();
    size_t h08 = G.index_of(CanonicalType("H08"));
    size_t h13 = G.index_of(CanonicalType("H13", rf("1/2"), rf("-1")));
    REQUIRE(h08 < G.nodes.size());
    REQUIRE(h13 < G.nodes.size());
    G.edges.push_back({h08, h13, "injected", "", false});
    auto report = consistency_check(G, corpus().patterns, {});
    REQUIRE(!report.empty());
    CHECK(std::any_of(report.begin(), report.end(), [](const std::string &r) {
        return r.find("h08_not_h13") != std::string::npos;
    }));
}

TEST_CASE("maximal nodes are reported as candidates") {
    auto maxima = maximal_nodes(grid_graph());
    auto has = [&](const CanonicalType &T) {
        return std::find(maxima.begin(), maxima.end(), T) != maxima.end();
    };
    CHECK(has(CanonicalType("H08")));
    CHECK(has(CanonicalType("H11")));
    CHECK(has(CanonicalType("H15")));
    CHECK(has(CanonicalType("H14", rf("1/2"))));
    CHECK(has(CanonicalType("H09", rf("i"))));
    CHECK(!has(CanonicalType("H10")));
    CHECK(!has(CanonicalType("H14", rf("-1"))));
    CHECK(!has(CanonicalType("ZERO")));
    CHECK(maxima.size() == 15);

    DegenGraph single;
    single.nodes.push_back({CanonicalType("H01"), 17});
    auto m = maximal_nodes(single);
    REQUIRE(m.size() == 1);
    CHECK(m[0] == CanonicalType("H01"));

    auto chain = maximal_nodes(chain_graph());
    REQUIRE(chain.size() == 1);
    CHECK(chain[0] == CanonicalType("H02"));
}

TEST_CASE("DOT output is deterministic and matches the golden file") {
    DegenGraph empty;
    CHECK(emit_dot(empty) == "digraph degenerations {\n}\n");

    DegenGraph R = transitive_reduction(grid_graph());
    std::string dot = emit_dot(R);
    CHECK(dot == emit_dot(transitive_reduction(grid_graph())));

    std::ifstream in(HEIS_GOLDEN_DOT);
    REQUIRE(in.good());
    std::stringstream golden;
    golden << in.rdbuf();
    CHECK(dot == golden.str());
}

TEST_CASE("graph JSON dump carries types, levels and provenance") {
    auto j = graph_to_json(grid_graph());
    CHECK(j["nodes"].size() == grid_graph().nodes.size());
    CHECK(j["edges"].size() == grid_graph().edges.size());
    CHECK(j["nodes"][0].contains("type"));
    CHECK(j["nodes"][0].contains("level"));
    for (const auto &e : j["edges"]) {
        CHECK(e.contains("from"));
        CHECK(e.contains("to"));
        CHECK(e.contains("provenance"));
    }
}
