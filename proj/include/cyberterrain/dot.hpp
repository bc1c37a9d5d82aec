#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cyberterrain/graph.hpp"

namespace cyberterrain {

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

/// Renders the graph as a DOT digraph. Edges along `highlight` (consecutive
/// vertex pairs) are drawn red. Throws DomainError if `highlight` is not a path.
inline std::string export_dot(const AttackGraph& graph, const std::vector<std::string>& highlight = {}) {
    std::set<std::pair<std::string, std::string>> edge_set;
    for (const Edge& e : graph.edges()) edge_set.emplace(e.from, e.to);

    std::set<std::pair<std::string, std::string>> marked;
    for (std::size_t i = 0; i < highlight.size(); ++i) {
        if (!graph.find(highlight[i]))
            throw DomainError("highlight vertex '" + highlight[i] + "' is not in the graph");
        if (i == 0) continue;
        std::pair<std::string, std::string> step{highlight[i - 1], highlight[i]};
        if (!edge_set.contains(step))
            throw DomainError("highlight is not a path: no edge " + step.first + " -> " + step.second);
        marked.insert(step);
    }

    std::string out = "digraph attack_graph {\n";
    for (const Vertex& v : graph.vertices()) {
        out += "  " + detail::dot_quote(v.id) + " [shape=";
        out += v.kind == VertexKind::Component ? "box" : "ellipse";
        out += ", label=" + detail::dot_quote(v.label.empty() ? v.id : v.label);
        if (v.id == graph.initial_id() || v.id == graph.terminal_id()) out += ", peripheries=2";
        if (v.firewall) out += ", style=filled, fillcolor=\"lightgray\"";
        out += "];\n";
    }
    for (const Edge& e : graph.edges()) {
        out += "  " + detail::dot_quote(e.from) + " -> " + detail::dot_quote(e.to);
        if (marked.contains({e.from, e.to})) out += " [color=\"red\", penwidth=2]";
        out += ";\n";
    }
    out += "}\n";
    return out;
}

}  // namespace cyberterrain
