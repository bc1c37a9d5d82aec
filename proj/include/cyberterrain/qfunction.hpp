#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <vector>

#include "cyberterrain/mdp.hpp"
#include "cyberterrain/rng.hpp"

namespace cyberterrain {

struct Transition {
    std::size_t s = 0;
    std::size_t a = 0;
    double r = 0.0;
    std::size_t s_next = 0;
    bool done = false;

    friend bool operator==(const Transition&, const Transition&) = default;
};

/// Anything that can report per-action values of a state. `out` is resized to
/// at least the number of actions of `s`; entries past that are ignored.
template <class Q>
concept ActionValueFunction = requires(const Q& q, std::size_t s, std::vector<double>& out) {
    q.action_values(s, out);
};

/// Dense state x action table; actions are the per-state indices of the Mdp.
class TabularQ {
public:
    TabularQ() = default;
    TabularQ(std::size_t states, std::size_t width)
        : states_(states), width_(width), values_(states * width, 0.0) {}

    std::size_t num_states() const noexcept { return states_; }
    std::size_t width() const noexcept { return width_; }

    double& at(std::size_t s, std::size_t a) { return values_.at(s * width_ + a); }
    double at(std::size_t s, std::size_t a) const { return values_.at(s * width_ + a); }

    void action_values(std::size_t s, std::vector<double>& out) const {
        out.assign(values_.begin() + static_cast<std::ptrdiff_t>(s * width_),
                   values_.begin() + static_cast<std::ptrdiff_t>((s + 1) * width_));
    }

    /// Largest value over the first `admissible` actions; 0 if there are none.
    double max_value(std::size_t s, std::size_t admissible) const {
        if (admissible == 0) return 0.0;
        double best = at(s, 0);
        for (std::size_t a = 1; a < admissible; ++a) best = std::max(best, at(s, a));
        return best;
    }

    const std::vector<double>& raw() const noexcept { return values_; }

    friend bool operator==(const TabularQ&, const TabularQ&) = default;

private:
    std::size_t states_ = 0;
    std::size_t width_ = 0;
    std::vector<double> values_;
};

/// Index of the largest of the first `admissible` values, lowest index on ties.
inline std::size_t argmax_admissible(const std::vector<double>& values, std::size_t admissible) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < admissible; ++a)
        if (values[a] > values[best]) best = a;
    return best;
}

/// With probability eps a uniformly random admissible action, otherwise the
/// greedy one. Inadmissible actions are never returned.
template <ActionValueFunction Q>
std::size_t epsilon_greedy(const Q& q, const Mdp& mdp, std::size_t s, double eps, Rng& rng) {
    const std::size_t admissible = mdp.num_actions(s);
    if (admissible == 0) throw DomainError("state '" + mdp.state_ids[s] + "' has no admissible actions");
    if (eps > 0.0 && rng.uniform() < eps) return static_cast<std::size_t>(rng.below(admissible));
    thread_local std::vector<double> values;
    q.action_values(s, values);
    return argmax_admissible(values, admissible);
}

/// One-step Q-learning update of the single cell (t.s, t.a).
/// `next_admissible` is the action count of t.s_next (0 means no bootstrap).
inline void q_update(TabularQ& table, const Transition& t, double alpha, double gamma,
                     std::size_t next_admissible) {
    double bootstrap = t.done ? 0.0 : table.max_value(t.s_next, next_admissible);
    double& cell = table.at(t.s, t.a);
    cell += alpha * (t.r + gamma * bootstrap - cell);
}

/// One-hot encoding of state `s` among `n` states.
inline std::vector<double> encode_state(std::size_t s, std::size_t n) {
    if (s >= n) throw DomainError("state index " + std::to_string(s) + " out of range for " + std::to_string(n) + " states");
    std::vector<double> v(n, 0.0);
    v[s] = 1.0;
    return v;
}

/// Draws the outcome of taking action `a` in `s`.
inline const Outcome& sample_outcome(const Mdp& mdp, std::size_t s, std::size_t a, Rng& rng) {
    const auto& outcomes = mdp.actions[s][a].outcomes;
    double u = rng.uniform();
    for (const Outcome& o : outcomes) {
        if (u < o.probability) return o;
        u -= o.probability;
    }
    // Rounding left u just above the summed mass: take the last outcome with mass.
    for (auto it = outcomes.rbegin(); it != outcomes.rend(); ++it)
        if (it->probability > 0.0) return *it;
    return outcomes.back();
}

}  // namespace cyberterrain
