#pragma once

#include <optional>
#include <string>

#include "cyberterrain/graph.hpp"
#include "cyberterrain/mdp.hpp"

namespace cyberterrain {

/// Strength of the reward penalty used for all reported comparisons.
inline constexpr double kDefaultPenaltyWeight = -2.0;

/// Firewall presence factor applied to success probabilities.
inline constexpr double kFirewallPresenceFactor = 0.01;

struct TerrainConfig {
    TerrainMode mode = TerrainMode::Vanilla;
    /// Penalty strength, w <= 0. Only used by RewardAdjusted.
    double w = kDefaultPenaltyWeight;
    /// Consider only this protocol when reading firewall annotations.
    std::optional<Protocol> restrict_protocol;

    friend bool operator==(const TerrainConfig&, const TerrainConfig&) = default;
};

inline void check_terrain_config(const TerrainConfig& cfg) {
    if (!(cfg.w <= 0.0)) throw DomainError("terrain weight w must be <= 0");
    if (cfg.mode == TerrainMode::Vanilla && cfg.restrict_protocol)
        throw DomainError("protocol restriction only applies to terrain modes");
}

/// Per-protocol reward coefficient, multiplied by w.
constexpr double penalty_coefficient(Protocol p) noexcept {
    switch (p) {
        case Protocol::Ftp: return 0.8;
        case Protocol::Smtp: return 0.6;
        case Protocol::Http: return 0.4;
        case Protocol::Ssh: return 0.2;
    }
    return 0.0;
}

/// Per-protocol importance factor for transition scaling.
constexpr double importance_coefficient(Protocol p) noexcept {
    switch (p) {
        case Protocol::Ftp: return 0.2;
        case Protocol::Smtp: return 0.4;
        case Protocol::Http: return 0.6;
        case Protocol::Ssh: return 0.8;
    }
    return 0.0;
}

/// The firewall as seen under an optional protocol restriction: only the
/// restricted protocol survives, and a firewall that does not block it
/// disappears.
inline std::optional<FirewallAnnotation> effective_firewall(const std::optional<FirewallAnnotation>& fw,
                                                            std::optional<Protocol> restrict) {
    if (!fw || fw->blocked.empty()) return std::nullopt;
    if (!restrict) return fw;
    if (!fw->blocks(*restrict)) return std::nullopt;
    return FirewallAnnotation{{*restrict}};
}

/// Reward increment k: 0 without a firewall, otherwise the mean of w times the
/// blocked protocols' penalty coefficients.
inline double reward_penalty_k(const std::optional<FirewallAnnotation>& fw, double w,
                               std::optional<Protocol> restrict = std::nullopt) {
    auto eff = effective_firewall(fw, restrict);
    if (!eff) return 0.0;
    double sum = 0.0;
    for (Protocol p : eff->blocked) sum += penalty_coefficient(p) * w;
    return sum / static_cast<double>(eff->blocked.size());
}

/// k1: 0.01 when a firewall is present, 1.0 otherwise.
inline double presence_factor_k1(const std::optional<FirewallAnnotation>& fw) {
    return fw && !fw->blocked.empty() ? kFirewallPresenceFactor : 1.0;
}

/// k2: 1.0 without a firewall, otherwise the mean importance coefficient of the blocked protocols.
inline double importance_factor_k2(const std::optional<FirewallAnnotation>& fw,
                                   std::optional<Protocol> restrict = std::nullopt) {
    auto eff = effective_firewall(fw, restrict);
    if (!eff) return 1.0;
    double sum = 0.0;
    for (Protocol p : eff->blocked) sum += importance_coefficient(p);
    return sum / static_cast<double>(eff->blocked.size());
}

namespace detail {

inline const Vertex& vertex_for_state(const Mdp& mdp, const AttackGraph& graph, std::size_t s) {
    auto idx = graph.find(mdp.state_ids[s]);
    if (!idx) throw DomainError("mdp state '" + mdp.state_ids[s] + "' not found in graph");
    return graph.vertex(*idx);
}

inline void require_untransformed(const Mdp& mdp) {
    if (mdp.provenance.mode != TerrainMode::Vanilla)
        throw DomainError("mdp already carries a '" + std::string(to_token(mdp.provenance.mode)) +
                          "' terrain transform");
}

}  // namespace detail

/// Adds k(s') to the reward of every successful arrival at s'. Transitions are untouched.
inline Mdp apply_reward_terrain(const Mdp& mdp, const AttackGraph& graph, const TerrainConfig& cfg) {
    if (cfg.mode != TerrainMode::RewardAdjusted) throw DomainError("apply_reward_terrain needs mode 'reward'");
    check_terrain_config(cfg);
    detail::require_untransformed(mdp);
    for (std::size_t s = 0; s < mdp.num_states(); ++s) detail::vertex_for_state(mdp, graph, s);

    Mdp out = mdp;
    for (auto& actions : out.actions) {
        for (Action& a : actions) {
            const Vertex& dest = detail::vertex_for_state(mdp, graph, a.target);
            a.outcomes.front().reward += reward_penalty_k(dest.firewall, cfg.w, cfg.restrict_protocol);
        }
    }
    out.provenance = {cfg.mode, cfg.w, cfg.restrict_protocol};
    return out;
}

/// Scales every success probability by k1(s') * k2(s'); the failure self-loop
/// takes the remaining mass. Rewards are untouched.
inline Mdp apply_state_terrain(const Mdp& mdp, const AttackGraph& graph, const TerrainConfig& cfg) {
    if (cfg.mode != TerrainMode::StateAdjusted) throw DomainError("apply_state_terrain needs mode 'state'");
    check_terrain_config(cfg);
    detail::require_untransformed(mdp);
    for (std::size_t s = 0; s < mdp.num_states(); ++s) detail::vertex_for_state(mdp, graph, s);

    Mdp out = mdp;
    for (auto& actions : out.actions) {
        for (Action& a : actions) {
            const Vertex& dest = detail::vertex_for_state(mdp, graph, a.target);
            auto eff = effective_firewall(dest.firewall, cfg.restrict_protocol);
            if (!eff) continue;
            double p = a.outcomes.front().probability * presence_factor_k1(eff) * importance_factor_k2(eff);
            a.outcomes.front().probability = p;
            a.outcomes.back().probability = 1.0 - p;
        }
    }
    out.provenance = {cfg.mode, cfg.w, cfg.restrict_protocol};
    return out;
}

/// Dispatches on cfg.mode; Vanilla returns the input unchanged.
inline Mdp apply_terrain(const Mdp& mdp, const AttackGraph& graph, const TerrainConfig& cfg) {
    switch (cfg.mode) {
        case TerrainMode::Vanilla:
            check_terrain_config(cfg);
            return mdp;
        case TerrainMode::RewardAdjusted: return apply_reward_terrain(mdp, graph, cfg);
        case TerrainMode::StateAdjusted: return apply_state_terrain(mdp, graph, cfg);
    }
    return mdp;
}

/// Short label for reports: "vanilla", "reward", "state-ftp", ...
inline std::string variant_label(const TerrainConfig& cfg) {
    std::string label(to_token(cfg.mode));
    if (cfg.restrict_protocol) label += "-" + std::string(to_token(*cfg.restrict_protocol));
    return label;
}

}  // namespace cyberterrain
