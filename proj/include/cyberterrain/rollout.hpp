#pragma once

#include <cstddef>
#include <vector>

#include "cyberterrain/mdp.hpp"
#include "cyberterrain/qfunction.hpp"
#include "cyberterrain/rng.hpp"

namespace cyberterrain {

struct EpisodeTrace {
    std::size_t start = 0;
    std::vector<Transition> transitions;
    double total_reward = 0.0;
    /// Actions taken, failed attempts included.
    std::size_t hops = 0;
    bool reached_terminal = false;

    friend bool operator==(const EpisodeTrace&, const EpisodeTrace&) = default;
};

/// Follows the greedy action (lowest index on ties) from the initial state,
/// sampling transitions, until the terminal, a state without actions, or
/// `max_steps` actions.
template <ActionValueFunction Q>
EpisodeTrace rollout_greedy(const Mdp& mdp, const Q& q, std::size_t max_steps, Rng& rng) {
    EpisodeTrace trace;
    trace.start = mdp.initial;
    std::size_t s = mdp.initial;
    std::vector<double> values;
    while (trace.hops < max_steps && s != mdp.terminal && mdp.num_actions(s) > 0) {
        q.action_values(s, values);
        std::size_t a = argmax_admissible(values, mdp.num_actions(s));
        const Outcome& o = sample_outcome(mdp, s, a, rng);
        trace.transitions.push_back({s, a, o.reward, o.next, o.next == mdp.terminal});
        trace.total_reward += o.reward;
        ++trace.hops;
        s = o.next;
    }
    trace.reached_terminal = s == mdp.terminal;
    return trace;
}

}  // namespace cyberterrain
