#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "cyberterrain/dot.hpp"
#include "cyberterrain/graph.hpp"
#include "cyberterrain/graph_io.hpp"
#include "cyberterrain/netgen.hpp"

using namespace cyberterrain;

namespace {

Vertex component(std::string id, CvssAnnotation cvss = {5.0, 5.0, Complexity::Low}) {
    return Vertex{std::move(id), VertexKind::Component, "", cvss, std::nullopt};
}

AttackGraph chain_abc() {
    return AttackGraph({component("A"), component("B"), component("C")}, {{"A", "B"}, {"B", "C"}}, "A", "C");
}

const char* kMinimal = R"({"version":"1","initial":"A","terminal":"B",
  "vertices":[{"id":"A","kind":"component","label":"entry","cvss":{"base":1,"exploitability":2,"complexity":"low"}},
              {"id":"B","kind":"rule","label":"goal","cvss":{"base":9.8,"exploitability":3.9,"complexity":"high"},
               "firewall":{"blocked":["ssh","ftp"]}}],
  "edges":[["A","B"]]})";

// Transitive closure by repeated relaxation over an adjacency matrix.
std::vector<std::vector<bool>> closure(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
    for (auto [a, b] : edges) r[a][b] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (r[i][k] && r[k][j]) r[i][j] = true;
    return r;
}

AttackGraph from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(component("v" + std::to_string(i)));
    std::vector<Edge> es;
    for (auto [a, b] : pairs) es.push_back({"v" + std::to_string(a), "v" + std::to_string(b)});
    return AttackGraph(vs, es, "v0", "v" + std::to_string(n - 1));
}

void expect_closure_agrees(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    auto g = from_pairs(n, pairs);
    auto oracle = closure(n, pairs);
    for (std::size_t from = 0; from < n; ++from) {
        auto got = reachable_set(g, "v" + std::to_string(from));
        std::set<std::string> want;
        for (std::size_t j = 0; j < n; ++j)
            if (oracle[from][j]) want.insert("v" + std::to_string(j));
        ASSERT_EQ(got, want) << "n=" << n << " from=" << from;
    }
}

}  // namespace

TEST(ParseAttackGraph, MinimalDocument) {
    auto g = parse_attack_graph(kMinimal);
    EXPECT_EQ(g.vertices().size(), 2u);
    EXPECT_EQ(g.edges().size(), 1u);
    EXPECT_EQ(g.initial_id(), "A");
    EXPECT_EQ(g.vertex("B").kind, VertexKind::Rule);
    ASSERT_TRUE(g.vertex("B").firewall);
    EXPECT_EQ(g.vertex("B").firewall->blocked, (std::set<Protocol>{Protocol::Ftp, Protocol::Ssh}));
    EXPECT_DOUBLE_EQ(g.vertex("B").cvss->base_score, 9.8);
}

TEST(ParseAttackGraph, DanglingEdgeNamesTheVertex) {
    const char* doc = R"({"version":"1","initial":"A","terminal":"B",
      "vertices":[{"id":"A","kind":"component"},{"id":"B","kind":"component"}],
      "edges":[["A","B"],["A","Z"]]})";
    try {
        parse_attack_graph(doc);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        ASSERT_EQ(e.violations().size(), 1u);
        EXPECT_NE(e.violations()[0].find("'Z'"), std::string::npos);
        EXPECT_NE(e.violations()[0].find("edges[1]"), std::string::npos);
    }
}

TEST(ParseAttackGraph, StructuralErrors) {
    auto violations_of = [](const std::string& doc) {
        try {
            parse_attack_graph(doc);
        } catch (const ValidationError& e) {
            return e.violations();
        }
        return std::vector<std::string>{};
    };
    auto dup = violations_of(R"({"version":"1","initial":"A","terminal":"B",
      "vertices":[{"id":"A","kind":"component"},{"id":"A","kind":"rule"},{"id":"B","kind":"component"}],
      "edges":[["A","B"]]})");
    ASSERT_EQ(dup.size(), 1u);
    EXPECT_NE(dup[0].find("duplicate vertex id 'A'"), std::string::npos);

    auto missing = violations_of(R"({"version":"1","initial":"A","terminal":"Q",
      "vertices":[{"id":"A","kind":"component"}],"edges":[]})");
    ASSERT_EQ(missing.size(), 1u);
    EXPECT_NE(missing[0].find("terminal vertex 'Q'"), std::string::npos);

    auto range = violations_of(R"({"version":"1","initial":"A","terminal":"B",
      "vertices":[{"id":"A","kind":"component","cvss":{"base":11,"exploitability":1,"complexity":"low"}},
                  {"id":"B","kind":"component"}],"edges":[["A","B"]]})");
    ASSERT_EQ(range.size(), 1u);
    EXPECT_NE(range[0].find("base score"), std::string::npos);

    auto unreachable = violations_of(R"({"version":"1","initial":"A","terminal":"B",
      "vertices":[{"id":"A","kind":"component"},{"id":"B","kind":"component"}],"edges":[["B","A"]]})");
    ASSERT_EQ(unreachable.size(), 1u);
    EXPECT_NE(unreachable[0].find("unreachable"), std::string::npos);
}

TEST(ParseAttackGraph, MalformedDocumentsAreParseErrors) {
    EXPECT_THROW(parse_attack_graph("{not json"), ParseError);
    EXPECT_THROW(parse_attack_graph(R"({"version":"1","terminal":"B","vertices":[],"edges":[]})"), ParseError);
    EXPECT_THROW(parse_attack_graph(R"({"version":"1","initial":"A","terminal":"B",
      "vertices":[{"id":"A","kind":"component","firewall":{"blocked":["telnet"]}}],"edges":[]})"),
                 ParseError);
    EXPECT_THROW(parse_attack_graph(R"({"version":"1","initial":"A","terminal":"B",
      "vertices":[{"id":"A","kind":"component","cvss":{"base":1,"exploitability":1,"complexity":"extreme"}}],
      "edges":[]})"),
                 ParseError);
    EXPECT_THROW(parse_attack_graph(R"({"version":"2","initial":"A","terminal":"B","vertices":[],"edges":[]})"),
                 ParseError);
}

TEST(ParseAttackGraph, MissingCvssGetsPessimisticDefaultAndWarning) {
    std::vector<std::string> warnings;
    auto g = parse_attack_graph(R"({"version":"1","initial":"A","terminal":"B",
      "vertices":[{"id":"A","kind":"component"},{"id":"B","kind":"rule"}],"edges":[["A","B"]]})",
                                &warnings);
    EXPECT_EQ(warnings.size(), 2u);
    EXPECT_EQ(*g.vertex("B").cvss, kDefaultCvss);
    EXPECT_EQ(kDefaultCvss.attack_complexity, Complexity::High);
}

TEST(Validate, ListsEveryViolation) {
    EXPECT_TRUE(validate(chain_abc()).empty());

    AttackGraph unreachable({component("A"), component("B"), component("C")}, {{"A", "B"}}, "A", "C");
    auto v = validate(unreachable);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("unreachable"), std::string::npos);

    AttackGraph out_of_range({component("A", {11.0, 0.0, Complexity::Low}), component("B")}, {{"A", "B"}}, "A", "B");
    ASSERT_EQ(validate(out_of_range).size(), 1u);

    Vertex empty_fw = component("B");
    empty_fw.firewall = FirewallAnnotation{};
    AttackGraph bad({component("A"), empty_fw}, {{"A", "B"}, {"A", "A"}, {"A", "B"}}, "A", "A");
    auto all = validate(bad);
    // empty firewall, self-edge, duplicate edge, initial == terminal
    EXPECT_EQ(all.size(), 4u);
}

TEST(ReachableSet, Chain) {
    auto g = chain_abc();
    EXPECT_EQ(reachable_set(g, "A"), (std::set<std::string>{"A", "B", "C"}));
    EXPECT_EQ(reachable_set(g, "C"), (std::set<std::string>{"C"}));
    EXPECT_THROW(reachable_set(g, "Z"), DomainError);
}

TEST(ReachableSet, DisjointComponentsStaySeparate) {
    // 10 vertices: component one is v0..v4, component two v5..v9, random edges within each.
    std::mt19937 gen(11);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t base : {0u, 5u})
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                if (i != j && gen() % 3 == 0) pairs.emplace_back(base + i, base + j);
    auto g = from_pairs(10, pairs);
    auto oracle = closure(10, pairs);
    auto got = reachable_set(g, "v0");
    for (std::size_t j = 5; j < 10; ++j) EXPECT_FALSE(got.contains("v" + std::to_string(j)));
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(got.contains("v" + std::to_string(j)), oracle[0][j]);
}

TEST(ReachableSet, AgreesWithTransitiveClosureOnAllDigraphsUpToFourVertices) {
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) slots.emplace_back(i, j);
        for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (std::size_t k = 0; k < slots.size(); ++k)
                if (mask & (1u << k)) pairs.push_back(slots[k]);
            expect_closure_agrees(n, pairs);
        }
    }
}

TEST(ReachableSet, AgreesWithTransitiveClosureOnRandomGraphsUpToTwelveVertices) {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 400; ++trial) {
        std::size_t n = 5 + gen() % 8;
        double density = (gen() % 100) / 250.0;
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && (gen() % 1000) < density * 1000) pairs.emplace_back(i, j);
        expect_closure_agrees(n, pairs);
    }
}

TEST(ExportDot, MinimalGraph) {
    auto g = parse_attack_graph(kMinimal);
    auto dot = export_dot(g);
    EXPECT_NE(dot.find("\"A\" [shape=box"), std::string::npos);
    EXPECT_NE(dot.find("\"B\" [shape=ellipse"), std::string::npos);
    EXPECT_NE(dot.find("\"A\" -> \"B\";"), std::string::npos);
    EXPECT_EQ(dot.find("color=\"red\""), std::string::npos);
}

TEST(ExportDot, HighlightedPathIsRed) {
    auto dot = export_dot(chain_abc(), {"A", "B", "C"});
    EXPECT_NE(dot.find("\"A\" -> \"B\" [color=\"red\""), std::string::npos);
    EXPECT_NE(dot.find("\"B\" -> \"C\" [color=\"red\""), std::string::npos);
    EXPECT_THROW(export_dot(chain_abc(), {"A", "C"}), DomainError);
    EXPECT_THROW(export_dot(chain_abc(), {"A", "Q"}), DomainError);
}

TEST(ExportDot, Deterministic) {
    auto g = generate(TopologyParams{});
    EXPECT_EQ(export_dot(g, {"h0-0"}), export_dot(g, {"h0-0"}));
}

TEST(Serialize, RoundTripsGeneratedGraphs) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        TopologyParams p;
        p.seed = seed;
        p.num_subnets = 1 + seed % 4;
        p.hosts_per_subnet = 2 + seed % 5;
        auto g = generate(p);
        auto text = serialize_attack_graph(g);
        auto back = parse_attack_graph(text);
        EXPECT_EQ(back, g);
        EXPECT_EQ(serialize_attack_graph(back), text);
    }
}

TEST(Serialize, EnterpriseScaleRoundTrip) {
    auto g = generate(enterprise_scale_params());
    auto back = parse_attack_graph(serialize_attack_graph(g));
    EXPECT_EQ(back, g);
    EXPECT_EQ(back.vertices().size(), g.vertices().size());
}

TEST(Validate, EmptyExactlyWhenParseAcceptsSerializedForm) {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + gen() % 5;
        std::vector<Vertex> vs;
        for (std::size_t i = 0; i < n; ++i) {
            Vertex v = component("v" + std::to_string(gen() % (n + 1)), {double(gen() % 12), 1.0, Complexity::Medium});
            if (gen() % 4 == 0) v.firewall = FirewallAnnotation{};
            if (gen() % 4 == 1) v.firewall = FirewallAnnotation{{Protocol::Http}};
            vs.push_back(v);
        }
        std::vector<Edge> es;
        for (std::size_t k = 0; k < n + 1; ++k)
            es.push_back({"v" + std::to_string(gen() % (n + 1)), "v" + std::to_string(gen() % (n + 1))});
        AttackGraph g(vs, es, "v0", "v1");
        bool accepted = true;
        try {
            parse_attack_graph(serialize_attack_graph(g));
        } catch (const Error&) {
            accepted = false;
        }
        EXPECT_EQ(validate(g).empty(), accepted);
    }
}
