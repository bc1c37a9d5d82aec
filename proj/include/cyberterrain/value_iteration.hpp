#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cyberterrain/mdp.hpp"

namespace cyberterrain {

struct ValueResult {
    std::vector<double> values;
    /// Greedy action per state; nullopt for states without actions.
    std::vector<std::optional<std::size_t>> policy;
    std::size_t iterations = 0;
    double residual = 0.0;
};

/// Expected one-step return of action `a` in `s` under state values `v`.
inline double action_value(const Mdp& mdp, std::size_t s, std::size_t a, const std::vector<double>& v) {
    double q = 0.0;
    for (const Outcome& o : mdp.actions[s][a].outcomes)
        q += o.probability * (o.reward + mdp.discount * v[o.next]);
    return q;
}

/// One Bellman optimality backup of every state. Absorbing states keep value 0.
inline std::vector<double> bellman_backup(const Mdp& mdp, const std::vector<double>& v) {
    std::vector<double> next(mdp.num_states(), 0.0);
    for (std::size_t s = 0; s < mdp.num_states(); ++s) {
        if (mdp.actions[s].empty()) continue;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < mdp.actions[s].size(); ++a) best = std::max(best, action_value(mdp, s, a, v));
        next[s] = best;
    }
    return next;
}

inline double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

/// First action (lowest index) attaining the maximum action value.
inline std::optional<std::size_t> greedy_action(const Mdp& mdp, std::size_t s, const std::vector<double>& v) {
    if (mdp.actions[s].empty()) return std::nullopt;
    std::size_t best = 0;
    double best_q = action_value(mdp, s, 0, v);
    for (std::size_t a = 1; a < mdp.actions[s].size(); ++a) {
        double q = action_value(mdp, s, a, v);
        if (q > best_q) {
            best_q = q;
            best = a;
        }
    }
    return best;
}

/// Synchronous value iteration until the sup-norm Bellman residual is at most
/// `tol`. Throws DomainError (with the last residual) after `max_iters` sweeps.
inline ValueResult value_iteration(const Mdp& mdp, double tol = 1e-9, std::size_t max_iters = 1'000'000) {
    if (!(tol > 0.0)) throw DomainError("value iteration tolerance must be positive");
    ValueResult result;
    result.values.assign(mdp.num_states(), 0.0);
    double residual = std::numeric_limits<double>::infinity();
    while (residual > tol) {
        if (result.iterations == max_iters)
            throw DomainError("value iteration did not converge after " + std::to_string(max_iters) +
                              " iterations (residual " + std::to_string(residual) + ")");
        auto next = bellman_backup(mdp, result.values);
        residual = sup_distance(next, result.values);
        result.values = std::move(next);
        ++result.iterations;
        if (!std::isfinite(residual)) throw DomainError("value iteration diverged");
    }
    result.residual = sup_distance(bellman_backup(mdp, result.values), result.values);
    result.policy.resize(mdp.num_states());
    for (std::size_t s = 0; s < mdp.num_states(); ++s) result.policy[s] = greedy_action(mdp, s, result.values);
    return result;
}

}  // namespace cyberterrain
