#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cyberterrain/graph.hpp"

namespace cyberterrain {

inline constexpr double kTerminalReward = 100.0;
inline constexpr double kInitialReward = 0.01;
inline constexpr double kDeadEndReward = -1.0;
/// Floor of the depth-scaled arrival reward.
inline constexpr double kMinScaledReward = 0.01;
inline constexpr double kDefaultDiscount = 0.9;

enum class TerrainMode { Vanilla, RewardAdjusted, StateAdjusted };

constexpr std::string_view to_token(TerrainMode m) noexcept {
    switch (m) {
        case TerrainMode::Vanilla: return "vanilla";
        case TerrainMode::RewardAdjusted: return "reward";
        case TerrainMode::StateAdjusted: return "state";
    }
    return "?";
}

constexpr std::optional<TerrainMode> terrain_mode_from_token(std::string_view token) noexcept {
    for (auto m : {TerrainMode::Vanilla, TerrainMode::RewardAdjusted, TerrainMode::StateAdjusted})
        if (to_token(m) == token) return m;
    return std::nullopt;
}

/// Which terrain transform (if any) produced an Mdp.
struct Provenance {
    TerrainMode mode = TerrainMode::Vanilla;
    double w = 0.0;
    std::optional<Protocol> restrict_protocol;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Outcome {
    std::size_t next = 0;
    double probability = 0.0;
    double reward = 0.0;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// One admissible action: traversal of an outbound edge. outcomes[0] is the
/// successful arrival at `target`, outcomes[1] the failure self-loop.
struct Action {
    std::size_t target = 0;
    std::vector<Outcome> outcomes;

    const Outcome& success() const { return outcomes.front(); }
    const Outcome& failure() const { return outcomes.back(); }

    friend bool operator==(const Action&, const Action&) = default;
};

/// Finite MDP over attack-graph vertices. Actions are indexed per state
/// (0..actions[s].size()-1); a state without actions is absorbing.
struct Mdp {
    std::vector<std::string> state_ids;
    std::vector<std::vector<Action>> actions;
    double discount = kDefaultDiscount;
    std::size_t initial = 0;
    std::size_t terminal = 0;
    Provenance provenance;

    std::size_t num_states() const noexcept { return state_ids.size(); }

    std::size_t max_actions() const noexcept {
        std::size_t m = 0;
        for (const auto& a : actions) m = std::max(m, a.size());
        return m;
    }

    std::size_t num_actions(std::size_t s) const { return actions.at(s).size(); }

    std::optional<std::size_t> find_state(const std::string& id) const {
        auto it = std::find(state_ids.begin(), state_ids.end(), id);
        if (it == state_ids.end()) return std::nullopt;
        return static_cast<std::size_t>(it - state_ids.begin());
    }

    friend bool operator==(const Mdp&, const Mdp&) = default;
};

/// Low -> 0.9, Medium -> 0.6, High -> 0.3.
constexpr double complexity_to_probability(Complexity c) noexcept {
    switch (c) {
        case Complexity::Low: return 0.9;
        case Complexity::Medium: return 0.6;
        case Complexity::High: return 0.3;
    }
    return 0.0;
}

/// Base score plus a tenth of the exploitability score.
constexpr double base_reward(const CvssAnnotation& cvss) noexcept {
    return cvss.base_score + cvss.exploitability_score / 10.0;
}

/// Depth of every vertex in the depth-first tree rooted at `root`, exploring
/// successors in edge order. Undiscovered vertices map to nullopt.
inline std::vector<std::optional<std::size_t>> dfs_depths(const AttackGraph& graph, std::size_t root) {
    std::vector<std::optional<std::size_t>> depth(graph.size());
    struct Frame {
        std::size_t vertex;
        std::size_t next_child;
    };
    std::vector<Frame> stack{{root, 0}};
    depth[root] = 0;
    while (!stack.empty()) {
        Frame& top = stack.back();
        const auto& succ = graph.successors(top.vertex);
        if (top.next_child == succ.size()) {
            stack.pop_back();
            continue;
        }
        std::size_t child = succ[top.next_child++];
        if (!depth[child]) {
            depth[child] = *depth[top.vertex] + 1;
            stack.push_back({child, 0});
        }
    }
    return depth;
}

/// Compiles a validated attack graph into the vanilla CVSS MDP.
///
/// States are the vertices reachable from initial, in graph order. Each
/// outbound edge s->t is an action that reaches t with the probability given
/// by t's attack complexity and otherwise leaves the agent in s (reward 0).
/// The arrival reward at t is:
///   -1     if the terminal cannot be reached from t,
///   100    if t is the terminal,
///   0.01   if t is the initial vertex,
///   max(0.01, base_reward(t) * depth(t) / depth(terminal)) otherwise,
/// where depth is the depth-first tree depth from initial.
inline Mdp build_cvss_mdp(const AttackGraph& graph, double discount = kDefaultDiscount) {
    if (auto violations = validate(graph); !violations.empty()) throw ValidationError(std::move(violations));
    if (!(discount > 0.0 && discount <= 1.0)) throw DomainError("discount must lie in (0,1]");

    const std::size_t root = graph.index_of(graph.initial_id());
    const std::size_t goal = graph.index_of(graph.terminal_id());
    const auto depth = dfs_depths(graph, root);
    const auto reaches_goal = reaches_flags(graph, goal);
    const double goal_depth = static_cast<double>(*depth[goal]);

    Mdp mdp;
    mdp.discount = discount;
    std::vector<std::size_t> state_of(graph.size(), SIZE_MAX);
    for (std::size_t v = 0; v < graph.size(); ++v) {
        if (!depth[v]) continue;
        state_of[v] = mdp.state_ids.size();
        mdp.state_ids.push_back(graph.vertex(v).id);
    }
    mdp.initial = state_of[root];
    mdp.terminal = state_of[goal];
    mdp.actions.resize(mdp.state_ids.size());

    auto arrival_reward = [&](std::size_t v) {
        if (!reaches_goal[v]) return kDeadEndReward;
        if (v == goal) return kTerminalReward;
        if (v == root) return kInitialReward;
        double scale = static_cast<double>(*depth[v]) / goal_depth;
        return std::max(kMinScaledReward, base_reward(graph.vertex(v).effective_cvss()) * scale);
    };

    for (std::size_t v = 0; v < graph.size(); ++v) {
        if (!depth[v] || v == goal) continue;
        const std::size_t s = state_of[v];
        for (std::size_t t : graph.successors(v)) {
            double p = complexity_to_probability(graph.vertex(t).effective_cvss().attack_complexity);
            Action a;
            a.target = state_of[t];
            a.outcomes = {{state_of[t], p, arrival_reward(t)}, {s, 1.0 - p, 0.0}};
            mdp.actions[s].push_back(std::move(a));
        }
    }
    return mdp;
}

/// Lists broken Mdp invariants (stochastic rows, terminal without actions, ...).
inline std::vector<std::string> check_mdp(const Mdp& mdp, double tolerance = 1e-12) {
    std::vector<std::string> out;
    const std::size_t n = mdp.num_states();
    if (mdp.actions.size() != n) out.push_back("action table size differs from state count");
    if (mdp.initial >= n) out.push_back("initial state out of range");
    if (mdp.terminal >= n) out.push_back("terminal state out of range");
    if (!(mdp.discount > 0.0 && mdp.discount <= 1.0)) out.push_back("discount outside (0,1]");
    if (mdp.terminal < n && !mdp.actions[mdp.terminal].empty()) out.push_back("terminal has outgoing actions");
    for (std::size_t s = 0; s < std::min(n, mdp.actions.size()); ++s) {
        for (std::size_t a = 0; a < mdp.actions[s].size(); ++a) {
            const Action& act = mdp.actions[s][a];
            auto where = "state '" + mdp.state_ids[s] + "' action " + std::to_string(a);
            if (act.outcomes.empty()) {
                out.push_back(where + ": no outcomes");
                continue;
            }
            double sum = 0.0;
            for (const Outcome& o : act.outcomes) {
                if (o.next >= n) out.push_back(where + ": outcome state out of range");
                if (!(o.probability >= 0.0 && o.probability <= 1.0))
                    out.push_back(where + ": probability outside [0,1]");
                if (!std::isfinite(o.reward)) out.push_back(where + ": non-finite reward");
                sum += o.probability;
            }
            if (std::abs(sum - 1.0) > tolerance) out.push_back(where + ": probabilities sum to " + std::to_string(sum));
        }
    }
    return out;
}

}  // namespace cyberterrain
