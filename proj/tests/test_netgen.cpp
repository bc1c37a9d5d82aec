#include <gtest/gtest.h>

#include <algorithm>

#include "cyberterrain/graph_io.hpp"
#include "cyberterrain/netgen.hpp"

using namespace cyberterrain;

namespace {

std::size_t subnet_of(const std::string& id) {
    // "h3-17" -> 3, "x2-0" -> 2
    return std::stoul(id.substr(1, id.find('-') - 1));
}

}  // namespace

TEST(Generate, MinimalParameters) {
    TopologyParams p;
    p.num_subnets = 1;
    p.hosts_per_subnet = 2;
    p.seed = 7;
    auto g = generate(p);
    EXPECT_EQ(g.size(), 2u);
    EXPECT_TRUE(validate(g).empty());
    EXPECT_TRUE(reachable_set(g, g.initial_id()).contains(g.terminal_id()));
}

TEST(Generate, SameSeedSameGraph) {
    TopologyParams p;
    p.seed = 99;
    EXPECT_EQ(generate(p), generate(p));
    EXPECT_EQ(serialize_attack_graph(generate(p)), serialize_attack_graph(generate(p)));
    TopologyParams q = p;
    q.seed = 100;
    EXPECT_NE(serialize_attack_graph(generate(p)), serialize_attack_graph(generate(q)));
}

TEST(Generate, EnterpriseScaleWithinTenPercent) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto g = generate(enterprise_scale_params(seed));
        EXPECT_NEAR(static_cast<double>(g.vertices().size()), 955.0, 95.5) << "seed " << seed;
        EXPECT_NEAR(static_cast<double>(g.edges().size()), 2350.0, 235.0) << "seed " << seed;
        EXPECT_TRUE(validate(g).empty());
    }
}

TEST(Generate, RejectsImpossibleParameters) {
    TopologyParams p;
    p.inter_edge_count = 0;
    EXPECT_THROW(generate(p), DomainError);
    p = {};
    p.num_subnets = 1;
    p.hosts_per_subnet = 1;
    EXPECT_THROW(generate(p), DomainError);
    p = {};
    p.intra_edge_prob = 1.5;
    EXPECT_THROW(generate(p), DomainError);
    p = {};
    p.protocol_weights = {0, 0, 0, 0};
    EXPECT_THROW(generate(p), DomainError);
    p = {};
    p.complexity_weights = {-1, 1, 1};
    EXPECT_THROW(generate(p), DomainError);
}

TEST(Generate, StructuralContract) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        TopologyParams p;
        p.seed = seed;
        p.num_subnets = 1 + seed % 5;
        p.hosts_per_subnet = 2 + seed % 7;
        p.intra_edge_prob = (seed % 4) * 0.1;
        p.inter_edge_count = 1 + seed % 3;
        p.firewall_prob = (seed % 3) * 0.5;
        auto g = generate(p);
        ASSERT_TRUE(validate(g).empty()) << "seed " << seed;
        EXPECT_EQ(subnet_of(g.initial_id()), 0u);
        EXPECT_EQ(subnet_of(g.terminal_id()), p.num_subnets - 1);

        std::vector<std::size_t> crossings(p.num_subnets, 0);
        for (const Edge& e : g.edges()) {
            bool a_host = e.from[0] == 'h', b_host = e.to[0] == 'h';
            if (a_host && b_host) EXPECT_EQ(subnet_of(e.from), subnet_of(e.to));
            if (a_host && !b_host) crossings[subnet_of(e.from)]++;
        }
        for (std::size_t k = 0; k + 1 < p.num_subnets; ++k) EXPECT_GE(crossings[k], 1u);
        for (const Vertex& v : g.vertices()) {
            if (v.firewall) {
                EXPECT_EQ(v.kind, VertexKind::Rule) << "firewalls sit on subnet boundaries";
                EXPECT_FALSE(v.firewall->blocked.empty());
            }
            EXPECT_TRUE(v.cvss.has_value());
        }
    }
}

TEST(Generate, FirewallProbabilityExtremes) {
    TopologyParams p;
    p.num_subnets = 6;
    p.inter_edge_count = 4;
    p.firewall_prob = 0.0;
    auto none = generate(p);
    for (const Vertex& v : none.vertices()) EXPECT_FALSE(v.firewall);
    p.firewall_prob = 1.0;
    auto all = generate(p);
    for (const Vertex& v : all.vertices()) EXPECT_EQ(v.firewall.has_value(), v.kind == VertexKind::Rule);
}

TEST(Generate, ZeroWeightProtocolsNeverBlocked) {
    TopologyParams p;
    p.num_subnets = 8;
    p.inter_edge_count = 5;
    p.firewall_prob = 1.0;
    p.protocol_weights = {0.0, 0.0, 1.0, 0.0};
    p.complexity_weights = {0.0, 1.0, 0.0};
    auto g = generate(p);
    for (const Vertex& v : g.vertices()) {
        if (v.firewall) EXPECT_EQ(v.firewall->blocked, std::set<Protocol>{Protocol::Http});
        EXPECT_EQ(v.cvss->attack_complexity, Complexity::Medium);
    }
}

TEST(Generate, MoreHostsNeverFewerVertices) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::size_t previous = 0;
        for (std::size_t hosts = 2; hosts <= 12; ++hosts) {
            TopologyParams p;
            p.seed = seed;
            p.hosts_per_subnet = hosts;
            std::size_t n = generate(p).vertices().size();
            EXPECT_GE(n, previous);
            previous = n;
        }
    }
}

TEST(Generate, HasDeadEnds) {
    // The −1 rule needs genuine dead ends to act on.
    std::size_t graphs_with_dead_ends = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        TopologyParams p;
        p.seed = seed;
        auto g = generate(p);
        auto reaches = reaches_flags(g, g.index_of(g.terminal_id()));
        auto from_init = reachable_flags(g, g.index_of(g.initial_id()));
        for (std::size_t v = 0; v < g.size(); ++v)
            if (from_init[v] && !reaches[v]) {
                ++graphs_with_dead_ends;
                break;
            }
    }
    EXPECT_GE(graphs_with_dead_ends, 15u);
}

TEST(PlantGauntlet, BothPathsPresent) {
    auto g = plant_gauntlet(TopologyParams{}, {Protocol::Ftp});
    ASSERT_TRUE(validate(g).empty());
    const std::vector<std::string> short_path{"init", "s1", "fw", "target"};
    const std::vector<std::string> long_path{"init", "l1", "l2", "l3", "l4", "l5", "target"};
    for (const auto* path : {&short_path, &long_path}) {
        for (std::size_t i = 1; i < path->size(); ++i) {
            const auto& succ = g.successors(g.index_of((*path)[i - 1]));
            EXPECT_NE(std::find(succ.begin(), succ.end(), g.index_of((*path)[i])), succ.end());
        }
    }
    EXPECT_EQ(g.vertex("fw").firewall->blocked, std::set<Protocol>{Protocol::Ftp});
    for (const Vertex& v : g.vertices())
        if (v.id != "fw") EXPECT_FALSE(v.firewall);
    EXPECT_NE(g.vertex("init").label.find("short=3 hops, long=6 hops"), std::string::npos);
}

TEST(PlantGauntlet, ExactlyTwoDisjointPaths) {
    TopologyParams p;
    p.intra_edge_prob = 0.5;  // plenty of dead-end spurs
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        p.seed = seed;
        auto g = plant_gauntlet(p, {Protocol::Http}, GauntletShape{4, 7});
        ASSERT_TRUE(validate(g).empty());
        // Count simple initial->terminal paths by DFS.
        std::size_t paths = 0;
        std::vector<bool> on(g.size(), false);
        auto goal = g.index_of("target");
        auto dfs = [&](auto&& self, std::size_t v) -> void {
            if (v == goal) {
                ++paths;
                return;
            }
            on[v] = true;
            for (std::size_t w : g.successors(v))
                if (!on[w]) self(self, w);
            on[v] = false;
        };
        dfs(dfs, g.index_of("init"));
        EXPECT_EQ(paths, 2u);
    }
}

TEST(PlantGauntlet, MultiProtocolAndEmpty) {
    auto g = plant_gauntlet(TopologyParams{}, {Protocol::Ftp, Protocol::Ssh});
    EXPECT_EQ(g.vertex("fw").firewall->blocked, (std::set<Protocol>{Protocol::Ftp, Protocol::Ssh}));
    EXPECT_THROW(plant_gauntlet(TopologyParams{}, {}), DomainError);
    EXPECT_THROW(plant_gauntlet(TopologyParams{}, {Protocol::Ftp}, GauntletShape{3, 3}), DomainError);
}

TEST(Generate, GraphsAreAcyclic) {
    // Kahn's algorithm consumes every vertex iff there is no cycle.
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        TopologyParams p;
        p.seed = seed;
        p.num_subnets = 1 + seed % 4;
        p.intra_edge_prob = 0.1 * static_cast<double>(seed % 8);
        auto g = generate(p);
        std::vector<std::size_t> indegree(g.size(), 0);
        for (std::size_t v = 0; v < g.size(); ++v)
            for (std::size_t w : g.successors(v)) ++indegree[w];
        std::vector<std::size_t> ready;
        for (std::size_t v = 0; v < g.size(); ++v)
            if (indegree[v] == 0) ready.push_back(v);
        std::size_t consumed = 0;
        while (!ready.empty()) {
            std::size_t v = ready.back();
            ready.pop_back();
            ++consumed;
            for (std::size_t w : g.successors(v))
                if (--indegree[w] == 0) ready.push_back(w);
        }
        EXPECT_EQ(consumed, g.size()) << "seed " << seed;
    }
}
