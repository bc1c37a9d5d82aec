#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cyberterrain/graph.hpp"
#include "cyberterrain/rng.hpp"

namespace cyberterrain {

/// Parameters of the layered synthetic topology: a chain of subnets, each a
/// random directed graph over hosts, joined by exploit-crossing rule vertices.
struct TopologyParams {
    std::size_t num_subnets = 3;
    std::size_t hosts_per_subnet = 6;
    double intra_edge_prob = 0.15;
    std::size_t inter_edge_count = 2;
    double firewall_prob = 0.3;
    std::array<double, 4> protocol_weights{1.0, 1.0, 1.0, 1.0};  // indexed by Protocol
    std::array<double, 3> complexity_weights{1.0, 1.0, 1.0};     // indexed by Complexity
    std::uint64_t seed = 1;

    friend bool operator==(const TopologyParams&, const TopologyParams&) = default;
};

/// Roughly 955 vertices and 2350 edges: 12 subnets of 75 hosts, 5 crossings per cut.
inline TopologyParams enterprise_scale_params(std::uint64_t seed = 1) {
    TopologyParams p;
    p.num_subnets = 12;
    p.hosts_per_subnet = 75;
    p.intra_edge_prob = 0.0406;
    p.inter_edge_count = 5;
    p.firewall_prob = 0.3;
    p.seed = seed;
    return p;
}

/// Throws DomainError naming the first broken parameter invariant.
inline void check_params(const TopologyParams& p) {
    auto fail = [](const std::string& msg) { throw DomainError("topology params: " + msg); };
    if (p.num_subnets == 0) fail("num_subnets must be positive");
    if (p.hosts_per_subnet == 0) fail("hosts_per_subnet must be positive");
    if (p.num_subnets == 1 && p.hosts_per_subnet < 2)
        fail("a single subnet needs at least 2 hosts so initial and terminal differ");
    if (p.inter_edge_count == 0) fail("inter_edge_count must be positive or no path can cross subnets");
    if (!(p.intra_edge_prob >= 0.0 && p.intra_edge_prob <= 1.0)) fail("intra_edge_prob outside [0,1]");
    if (!(p.firewall_prob >= 0.0 && p.firewall_prob <= 1.0)) fail("firewall_prob outside [0,1]");
    double ps = 0.0, cs = 0.0;
    for (double w : p.protocol_weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) fail("protocol weights must be non-negative");
        ps += w;
    }
    for (double w : p.complexity_weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) fail("complexity weights must be non-negative");
        cs += w;
    }
    if (!(ps > 0.0)) fail("protocol weights must sum to a positive value");
    if (!(cs > 0.0)) fail("complexity weights must sum to a positive value");
}

namespace detail {

inline double round_tenth(double x) { return std::round(x * 100.0) / 10.0; }

inline CvssAnnotation draw_cvss(Rng& rng, const TopologyParams& p) {
    CvssAnnotation c;
    c.base_score = round_tenth(rng.uniform());
    c.exploitability_score = round_tenth(rng.uniform());
    c.attack_complexity = kAllComplexities[rng.weighted(p.complexity_weights)];
    return c;
}

/// Non-empty protocol set: a random count, protocols drawn by weight without replacement.
inline FirewallAnnotation draw_firewall(Rng& rng, const TopologyParams& p) {
    std::array<double, 4> weights = p.protocol_weights;
    std::size_t available = 0;
    for (double w : weights) available += w > 0.0 ? 1 : 0;
    std::size_t count = 1 + static_cast<std::size_t>(rng.below(available));
    FirewallAnnotation fw;
    for (std::size_t k = 0; k < count; ++k) {
        std::size_t i = rng.weighted(weights);
        fw.blocked.insert(kAllProtocols[i]);
        weights[i] = 0.0;
    }
    return fw;
}

inline std::string host_id(std::size_t subnet, std::size_t host) {
    return "h" + std::to_string(subnet) + "-" + std::to_string(host);
}

}  // namespace detail

/// Deterministic layered attack graph. Initial is host 0 of the first subnet,
/// terminal the last host of the last subnet. Inside a subnet every host hangs
/// off a random spanning tree rooted at host 0 plus extra random edges from
/// lower to higher host index, so hosts whose subtree holds no exit are
/// genuine dead ends and the whole graph is a DAG. Subnet k and k+1
/// are joined by `inter_edge_count` crossing rule vertices; the first always
/// lands on host 0 of the next subnet. Crossings carry a firewall with
/// probability `firewall_prob`.
inline AttackGraph generate(const TopologyParams& p) {
    check_params(p);
    Rng structure = Rng::stream(p.seed, "netgen.structure");
    Rng annotations = Rng::stream(p.seed, "netgen.annotations");
    Rng firewalls = Rng::stream(p.seed, "netgen.firewalls");

    const std::size_t hosts = p.hosts_per_subnet;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    vertices.reserve(p.num_subnets * hosts + (p.num_subnets - 1) * p.inter_edge_count);

    for (std::size_t k = 0; k < p.num_subnets; ++k) {
        std::set<std::pair<std::size_t, std::size_t>> present;
        for (std::size_t i = 0; i < hosts; ++i) {
            Vertex v;
            v.id = detail::host_id(k, i);
            v.kind = VertexKind::Component;
            v.label = "subnet " + std::to_string(k) + " host " + std::to_string(i);
            v.cvss = detail::draw_cvss(annotations, p);
            vertices.push_back(std::move(v));
        }
        for (std::size_t i = 1; i < hosts; ++i) {
            std::size_t parent = static_cast<std::size_t>(structure.below(i));
            present.emplace(parent, i);
            edges.push_back({detail::host_id(k, parent), detail::host_id(k, i)});
        }
        // forward edges only, so generated graphs stay acyclic
        for (std::size_t i = 0; i < hosts; ++i) {
            for (std::size_t j = i + 1; j < hosts; ++j) {
                bool draw = structure.bernoulli(p.intra_edge_prob);
                if (draw && present.emplace(i, j).second)
                    edges.push_back({detail::host_id(k, i), detail::host_id(k, j)});
            }
        }

        if (k + 1 == p.num_subnets) break;
        for (std::size_t c = 0; c < p.inter_edge_count; ++c) {
            std::size_t src = static_cast<std::size_t>(structure.below(hosts));
            std::size_t dst = c == 0 ? 0 : static_cast<std::size_t>(structure.below(hosts));
            Vertex x;
            x.id = "x" + std::to_string(k) + "-" + std::to_string(c);
            x.kind = VertexKind::Rule;
            x.label = "crossing " + std::to_string(k) + "->" + std::to_string(k + 1) + " #" + std::to_string(c);
            x.cvss = detail::draw_cvss(annotations, p);
            if (firewalls.bernoulli(p.firewall_prob)) x.firewall = detail::draw_firewall(firewalls, p);
            edges.push_back({detail::host_id(k, src), x.id});
            edges.push_back({x.id, detail::host_id(k + 1, dst)});
            vertices.push_back(std::move(x));
        }
    }

    return AttackGraph(std::move(vertices), std::move(edges), detail::host_id(0, 0),
                       detail::host_id(p.num_subnets - 1, hosts - 1));
}

/// Shape of the two-path obstacle fixture.
struct GauntletShape {
    std::size_t short_hops = 3;
    std::size_t long_hops = 6;
    /// Sum of the scaled arrival rewards collected on the short path's intermediate vertices.
    double short_path_reward = 6.0;
    /// How much more intermediate reward the short path collects than the long one.
    double reward_gap = 0.65;

    friend bool operator==(const GauntletShape&, const GauntletShape&) = default;
};

/// Two vertex-disjoint initial->terminal paths. The short one's last vertex
/// before the terminal is a firewall blocking `blocked`; the long one is
/// firewall-free. All path vertices have low attack complexity. Base scores are chosen so that, after
/// depth scaling (the short branch is explored first, so the terminal sits at
/// depth short_hops), the short path collects `short_path_reward` and the long
/// path `short_path_reward - reward_gap`. Path vertices may carry dead-end
/// spurs (probability `intra_edge_prob`) with CVSS drawn from `params`.
inline AttackGraph plant_gauntlet(const TopologyParams& params, const std::set<Protocol>& blocked,
                                  const GauntletShape& shape = {}) {
    check_params(params);
    if (blocked.empty()) throw DomainError("gauntlet: firewall must block at least one protocol");
    if (shape.short_hops < 2) throw DomainError("gauntlet: short path needs at least 2 hops");
    if (shape.long_hops <= shape.short_hops) throw DomainError("gauntlet: long path must be longer than short path");

    const double ls = static_cast<double>(shape.short_hops);
    const double ll = static_cast<double>(shape.long_hops);
    const double short_base = shape.short_path_reward * 2.0 / (ls - 1.0);
    const double long_base = (shape.short_path_reward - shape.reward_gap) * 2.0 * ls / ((ll - 1.0) * ll);
    if (!(short_base >= 0.0 && short_base <= 10.0) || !(long_base >= 0.0 && long_base <= 10.0))
        throw DomainError("gauntlet: rewards not representable with base scores in [0,10]");

    Rng structure = Rng::stream(params.seed, "gauntlet.structure");
    Rng annotations = Rng::stream(params.seed, "gauntlet.annotations");

    const std::string lengths =
        "short=" + std::to_string(shape.short_hops) + " hops, long=" + std::to_string(shape.long_hops) + " hops";
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    auto path_vertex = [&](std::string id, std::string label, double base) {
        Vertex v;
        v.id = std::move(id);
        v.kind = VertexKind::Component;
        v.label = std::move(label);
        v.cvss = CvssAnnotation{base, 0.0, Complexity::Low};
        vertices.push_back(std::move(v));
    };

    path_vertex("init", "initial (" + lengths + ")", 0.0);
    std::vector<std::string> short_path{"init"};
    for (std::size_t i = 1; i < shape.short_hops; ++i) {
        std::string id = i + 1 == shape.short_hops ? "fw" : "s" + std::to_string(i);
        path_vertex(id, "short path hop " + std::to_string(i) + "/" + std::to_string(shape.short_hops), short_base);
        short_path.push_back(id);
    }
    vertices[shape.short_hops - 1].firewall = FirewallAnnotation{blocked};
    std::vector<std::string> long_path{"init"};
    for (std::size_t i = 1; i < shape.long_hops; ++i) {
        std::string id = "l" + std::to_string(i);
        path_vertex(id, "long path hop " + std::to_string(i) + "/" + std::to_string(shape.long_hops), long_base);
        long_path.push_back(id);
    }
    path_vertex("target", "terminal (" + lengths + ")", 0.0);
    short_path.push_back("target");
    long_path.push_back("target");

    for (const auto* path : {&short_path, &long_path})
        for (std::size_t i = 1; i < path->size(); ++i) edges.push_back({(*path)[i - 1], (*path)[i]});

    std::size_t spur = 0;
    for (const auto* path : {&short_path, &long_path}) {
        for (std::size_t i = 1; i + 1 < path->size(); ++i) {
            if (!structure.bernoulli(params.intra_edge_prob)) continue;
            Vertex d;
            d.id = "d" + std::to_string(spur++);
            d.kind = VertexKind::Rule;
            d.label = "dead-end spur off " + (*path)[i];
            d.cvss = detail::draw_cvss(annotations, params);
            edges.push_back({(*path)[i], d.id});
            vertices.push_back(std::move(d));
        }
    }
    return AttackGraph(std::move(vertices), std::move(edges), "init", "target");
}

}  // namespace cyberterrain
