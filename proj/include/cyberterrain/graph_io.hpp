#pragma once

#include <string>
#include <vector>

#include "cyberterrain/graph.hpp"
#include "cyberterrain/json_util.hpp"

namespace cyberterrain {

inline constexpr const char* kGraphFormatVersion = "1";

namespace detail {

inline Vertex decode_vertex(const Json& node, const std::string& where) {
    Vertex v;
    v.id = as_string(require(node, "id", where), where + ".id");
    auto kind = as_string(require(node, "kind", where), where + ".kind");
    if (kind == "component")
        v.kind = VertexKind::Component;
    else if (kind == "rule")
        v.kind = VertexKind::Rule;
    else
        throw ParseError(where + ".kind: unknown vertex kind '" + kind + "'");
    if (auto it = node.find("label"); it != node.end()) v.label = as_string(*it, where + ".label");

    if (auto it = node.find("cvss"); it != node.end() && !it->is_null()) {
        auto at = where + ".cvss";
        CvssAnnotation c;
        c.base_score = as_number(require(*it, "base", at), at + ".base");
        c.exploitability_score = as_number(require(*it, "exploitability", at), at + ".exploitability");
        auto token = as_string(require(*it, "complexity", at), at + ".complexity");
        auto complexity = complexity_from_token(token);
        if (!complexity) throw ParseError(at + ".complexity: unknown complexity '" + token + "'");
        c.attack_complexity = *complexity;
        v.cvss = c;
    }

    if (auto it = node.find("firewall"); it != node.end() && !it->is_null()) {
        auto at = where + ".firewall.blocked";
        FirewallAnnotation fw;
        const Json& blocked = as_array(require(*it, "blocked", where + ".firewall"), at);
        for (std::size_t i = 0; i < blocked.size(); ++i) {
            auto item_at = at + "[" + std::to_string(i) + "]";
            auto token = as_string(blocked[i], item_at);
            auto protocol = protocol_from_token(token);
            if (!protocol) throw ParseError(item_at + ": unknown protocol '" + token + "'");
            if (!fw.blocked.insert(*protocol).second)
                throw ParseError(item_at + ": duplicate protocol '" + token + "'");
        }
        v.firewall = std::move(fw);
    }
    return v;
}

inline Json encode_vertex(const Vertex& v) {
    Json node;
    node["id"] = v.id;
    node["kind"] = v.kind == VertexKind::Component ? "component" : "rule";
    node["label"] = v.label;
    if (v.cvss) {
        Json c;
        c["base"] = v.cvss->base_score;
        c["exploitability"] = v.cvss->exploitability_score;
        c["complexity"] = std::string(to_token(v.cvss->attack_complexity));
        node["cvss"] = std::move(c);
    }
    if (v.firewall) {
        Json blocked = Json::array();
        for (Protocol p : v.firewall->blocked) blocked.push_back(std::string(to_token(p)));
        node["firewall"]["blocked"] = std::move(blocked);
    }
    return node;
}

}  // namespace detail

/// Decodes the interchange document without checking graph invariants.
/// Vertices without CVSS data receive kDefaultCvss; one warning per such vertex is
/// appended to `warnings` when given.
inline AttackGraph decode_attack_graph(const std::string& text, std::vector<std::string>* warnings = nullptr) {
    using namespace detail;
    Json doc = parse_json(text, "graph document");
    const std::string root = "$";
    auto version = as_string(require(doc, "version", root), "$.version");
    if (version != kGraphFormatVersion) throw ParseError("$.version: unsupported version '" + version + "'");
    auto initial = as_string(require(doc, "initial", root), "$.initial");
    auto terminal = as_string(require(doc, "terminal", root), "$.terminal");

    std::vector<Vertex> vertices;
    const Json& vs = as_array(require(doc, "vertices", root), "$.vertices");
    vertices.reserve(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Vertex v = decode_vertex(vs[i], "$.vertices[" + std::to_string(i) + "]");
        if (!v.cvss) {
            v.cvss = kDefaultCvss;
            if (warnings) warnings->push_back("vertex '" + v.id + "': no CVSS data, using default");
        }
        vertices.push_back(std::move(v));
    }

    std::vector<Edge> edges;
    const Json& es = as_array(require(doc, "edges", root), "$.edges");
    edges.reserve(es.size());
    for (std::size_t i = 0; i < es.size(); ++i) {
        auto where = "$.edges[" + std::to_string(i) + "]";
        const Json& e = as_array(es[i], where);
        if (e.size() != 2) throw ParseError(where + ": expected [from, to]");
        edges.push_back({as_string(e[0], where + "[0]"), as_string(e[1], where + "[1]")});
    }
    return AttackGraph(std::move(vertices), std::move(edges), std::move(initial), std::move(terminal));
}

/// Decodes and validates. Throws ParseError for malformed documents and
/// ValidationError listing every violated invariant.
inline AttackGraph parse_attack_graph(const std::string& text, std::vector<std::string>* warnings = nullptr) {
    AttackGraph graph = decode_attack_graph(text, warnings);
    if (auto violations = validate(graph); !violations.empty()) throw ValidationError(std::move(violations));
    return graph;
}

/// Canonical interchange document: fixed field order, two-space indentation, trailing newline.
inline std::string serialize_attack_graph(const AttackGraph& graph) {
    detail::Json doc;
    doc["version"] = kGraphFormatVersion;
    doc["initial"] = graph.initial_id();
    doc["terminal"] = graph.terminal_id();
    doc["vertices"] = detail::Json::array();
    for (const Vertex& v : graph.vertices()) doc["vertices"].push_back(detail::encode_vertex(v));
    doc["edges"] = detail::Json::array();
    for (const Edge& e : graph.edges()) doc["edges"].push_back(detail::Json::array({e.from, e.to}));
    return doc.dump(2) + "\n";
}

}  // namespace cyberterrain
