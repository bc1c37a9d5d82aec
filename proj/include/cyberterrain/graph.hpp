#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cyberterrain/error.hpp"
#include "cyberterrain/protocol.hpp"

namespace cyberterrain {

struct CvssAnnotation {
    double base_score = 0.0;
    double exploitability_score = 0.0;
    Complexity attack_complexity = Complexity::High;

    friend bool operator==(const CvssAnnotation&, const CvssAnnotation&) = default;
};

/// Annotation applied to vertices that carry no CVSS data.
inline constexpr CvssAnnotation kDefaultCvss{0.0, 0.0, Complexity::High};

struct FirewallAnnotation {
    std::set<Protocol> blocked;

    bool blocks(Protocol p) const { return blocked.contains(p); }

    friend bool operator==(const FirewallAnnotation&, const FirewallAnnotation&) = default;
};

enum class VertexKind { Component, Rule };

struct Vertex {
    std::string id;
    VertexKind kind = VertexKind::Component;
    std::string label;
    std::optional<CvssAnnotation> cvss;
    std::optional<FirewallAnnotation> firewall;

    const CvssAnnotation& effective_cvss() const { return cvss ? *cvss : kDefaultCvss; }

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
    std::string from;
    std::string to;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed attack graph. Immutable once built; construction never throws on
/// domain problems so that validate() can list them all.
class AttackGraph {
public:
    AttackGraph() = default;

    AttackGraph(std::vector<Vertex> vertices, std::vector<Edge> edges, std::string initial_id,
                std::string terminal_id)
        : vertices_(std::move(vertices)),
          edges_(std::move(edges)),
          initial_id_(std::move(initial_id)),
          terminal_id_(std::move(terminal_id)) {
        index_.reserve(vertices_.size());
        for (std::size_t i = 0; i < vertices_.size(); ++i) index_.try_emplace(vertices_[i].id, i);
        successors_.resize(vertices_.size());
        for (const Edge& e : edges_) {
            auto from = find(e.from);
            auto to = find(e.to);
            if (from && to) successors_[*from].push_back(*to);
        }
    }

    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::string& initial_id() const noexcept { return initial_id_; }
    const std::string& terminal_id() const noexcept { return terminal_id_; }

    std::size_t size() const noexcept { return vertices_.size(); }

    std::optional<std::size_t> find(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t index_of(const std::string& id) const {
        auto idx = find(id);
        if (!idx) throw DomainError("unknown vertex id '" + id + "'");
        return *idx;
    }

    const Vertex& vertex(std::size_t index) const { return vertices_.at(index); }
    const Vertex& vertex(const std::string& id) const { return vertices_[index_of(id)]; }

    /// Successor indices in edge declaration order (edges with unknown endpoints are skipped).
    const std::vector<std::size_t>& successors(std::size_t index) const { return successors_.at(index); }

    friend bool operator==(const AttackGraph& a, const AttackGraph& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.initial_id_ == b.initial_id_ &&
               a.terminal_id_ == b.terminal_id_;
    }

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::string initial_id_;
    std::string terminal_id_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> successors_;
};

/// Forward-reachable flags by vertex index, including `from`.
inline std::vector<bool> reachable_flags(const AttackGraph& graph, std::size_t from) {
    std::vector<bool> seen(graph.size(), false);
    std::vector<std::size_t> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : graph.successors(v)) {
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

/// Flags of vertices from which `target` is reachable (backward search).
inline std::vector<bool> reaches_flags(const AttackGraph& graph, std::size_t target) {
    std::vector<std::vector<std::size_t>> predecessors(graph.size());
    for (std::size_t v = 0; v < graph.size(); ++v)
        for (std::size_t w : graph.successors(v)) predecessors[w].push_back(v);
    std::vector<bool> seen(graph.size(), false);
    std::vector<std::size_t> stack{target};
    seen[target] = true;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t u : predecessors[v]) {
            if (!seen[u]) {
                seen[u] = true;
                stack.push_back(u);
            }
        }
    }
    return seen;
}

/// Exact forward-reachable set of `from_id`, including itself.
inline std::set<std::string> reachable_set(const AttackGraph& graph, const std::string& from_id) {
    auto flags = reachable_flags(graph, graph.index_of(from_id));
    std::set<std::string> out;
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags[i]) out.insert(graph.vertex(i).id);
    return out;
}

/// Lists every broken graph invariant; empty iff the graph is valid.
inline std::vector<std::string> validate(const AttackGraph& graph) {
    std::vector<std::string> out;
    const auto& vertices = graph.vertices();

    {
        std::unordered_map<std::string, std::size_t> first;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            const Vertex& v = vertices[i];
            auto [it, inserted] = first.try_emplace(v.id, i);
            if (!inserted)
                out.push_back("vertices[" + std::to_string(i) + "]: duplicate vertex id '" + v.id +
                              "' (first declared at vertices[" + std::to_string(it->second) + "])");
            if (v.id.empty()) out.push_back("vertices[" + std::to_string(i) + "]: empty vertex id");
        }
    }

    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vertex& v = vertices[i];
        auto where = "vertex '" + v.id + "'";
        if (v.cvss) {
            auto in_range = [](double x) { return x >= 0.0 && x <= 10.0; };
            if (!in_range(v.cvss->base_score))
                out.push_back(where + ": base score " + std::to_string(v.cvss->base_score) +
                              " outside [0,10]");
            if (!in_range(v.cvss->exploitability_score))
                out.push_back(where + ": exploitability score " +
                              std::to_string(v.cvss->exploitability_score) + " outside [0,10]");
        }
        if (v.firewall && v.firewall->blocked.empty())
            out.push_back(where + ": firewall annotation blocks no protocols");
    }

    {
        std::set<std::pair<std::string, std::string>> seen;
        const auto& edges = graph.edges();
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const Edge& e = edges[i];
            auto where = "edges[" + std::to_string(i) + "] (" + e.from + " -> " + e.to + ")";
            if (!graph.find(e.from)) out.push_back(where + ": dangling endpoint '" + e.from + "'");
            if (!graph.find(e.to)) out.push_back(where + ": dangling endpoint '" + e.to + "'");
            if (e.from == e.to) out.push_back(where + ": self-edge");
            if (!seen.emplace(e.from, e.to).second) out.push_back(where + ": duplicate edge");
        }
    }

    auto initial = graph.find(graph.initial_id());
    auto terminal = graph.find(graph.terminal_id());
    if (!initial) out.push_back("initial vertex '" + graph.initial_id() + "' is not declared");
    if (!terminal) out.push_back("terminal vertex '" + graph.terminal_id() + "' is not declared");
    if (initial && terminal) {
        if (*initial == *terminal)
            out.push_back("initial and terminal are the same vertex '" + graph.initial_id() + "'");
        else if (!reachable_flags(graph, *initial)[*terminal])
            out.push_back("terminal '" + graph.terminal_id() + "' is unreachable from initial '" +
                          graph.initial_id() + "'");
    }
    return out;
}

}  // namespace cyberterrain
