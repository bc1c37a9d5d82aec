#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "cyberterrain/mdp.hpp"
#include "cyberterrain/mlp.hpp"
#include "cyberterrain/qfunction.hpp"
#include "cyberterrain/replay.hpp"
#include "cyberterrain/rng.hpp"
#include "cyberterrain/rollout.hpp"

namespace cyberterrain {

enum class Algorithm { Tabular, Dqn };

constexpr std::string_view to_token(Algorithm a) noexcept { return a == Algorithm::Tabular ? "tabular" : "dqn"; }

constexpr std::optional<Algorithm> algorithm_from_token(std::string_view token) noexcept {
    if (token == "tabular") return Algorithm::Tabular;
    if (token == "dqn") return Algorithm::Dqn;
    return std::nullopt;
}

inline constexpr std::size_t kDefaultMaxSteps = 2500;
inline constexpr std::size_t kDefaultEvalInterval = 4;

struct TrainConfig {
    Algorithm algorithm = Algorithm::Tabular;
    std::size_t episodes = 200;
    std::size_t max_steps_per_episode = kDefaultMaxSteps;
    std::size_t eval_interval = kDefaultEvalInterval;
    double discount = kDefaultDiscount;
    double learning_rate = 0.1;
    /// Tabular step size is learning_rate / (1 + n / learning_rate_horizon)^learning_rate_decay,
    /// n = prior updates of the cell. Decay 1 with horizon 1/(1-discount) is the rescaled linear schedule.
    double learning_rate_decay = 0.0;
    double learning_rate_horizon = 1.0;
    double epsilon_start = 1.0;
    double epsilon_end = 0.05;
    /// Episodes over which epsilon falls linearly; unset means 80% of `episodes`.
    std::optional<std::size_t> epsilon_decay_episodes;
    std::size_t replay_capacity = 10000;
    std::size_t batch_size = 32;
    std::size_t target_sync_interval = 250;
    std::vector<std::size_t> hidden_layers{64, 64};
    std::uint64_t seed = 1;

    std::size_t decay_episodes() const {
        if (epsilon_decay_episodes) return *epsilon_decay_episodes;
        return (episodes * 4 + 4) / 5;
    }

    /// Exploration rate for 0-based episode `e`.
    double epsilon(std::size_t e) const {
        const std::size_t span = decay_episodes();
        if (e >= span) return epsilon_end;
        double frac = static_cast<double>(e) / static_cast<double>(span);
        return epsilon_start + (epsilon_end - epsilon_start) * frac;
    }

    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

inline void check_train_config(const TrainConfig& c) {
    auto fail = [](const char* msg) { throw DomainError(std::string("train config: ") + msg); };
    if (c.max_steps_per_episode < 1) fail("max_steps_per_episode must be at least 1");
    if (c.eval_interval < 1) fail("eval_interval must be at least 1");
    if (!(c.discount > 0.0 && c.discount <= 1.0)) fail("discount must lie in (0,1]");
    if (!(c.learning_rate > 0.0) || !std::isfinite(c.learning_rate)) fail("learning_rate must be positive");
    if (c.algorithm == Algorithm::Tabular && c.learning_rate > 1.0) fail("tabular learning_rate must be at most 1");
    if (!(c.learning_rate_decay >= 0.0)) fail("learning_rate_decay must be non-negative");
    if (!(c.learning_rate_horizon > 0.0) || !std::isfinite(c.learning_rate_horizon))
        fail("learning_rate_horizon must be positive");
    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!unit(c.epsilon_start) || !unit(c.epsilon_end)) fail("epsilon values must lie in [0,1]");
    if (c.epsilon_start < c.epsilon_end) fail("epsilon_start must be >= epsilon_end");
    if (c.replay_capacity == 0) fail("replay_capacity must be positive");
    if (c.batch_size == 0 || c.batch_size > c.replay_capacity) fail("batch_size must lie in [1, replay_capacity]");
    if (c.target_sync_interval == 0) fail("target_sync_interval must be positive");
    for (std::size_t w : c.hidden_layers)
        if (w == 0) fail("hidden layer widths must be positive");
}

struct CurvePoint {
    std::size_t episode = 0;
    double eval_total_reward = 0.0;

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

using LearningCurve = std::vector<CurvePoint>;

using QFunction = std::variant<TabularQ, DqnQ>;

struct TrainResult {
    QFunction q;
    LearningCurve curve;
    std::size_t total_steps = 0;
};

/// Called with (episode, transition) for every training step.
using TransitionObserver = std::function<void(std::size_t, const Transition&)>;

inline EpisodeTrace rollout_greedy(const Mdp& mdp, const QFunction& q, std::size_t max_steps, Rng& rng) {
    return std::visit([&](const auto& f) { return rollout_greedy(mdp, f, max_steps, rng); }, q);
}

/// Trains an action-value function on `mdp`. Each episode starts at the
/// initial state and ends at the terminal, at a state without actions, or
/// after max_steps_per_episode actions. After every eval_interval-th episode a
/// separate greedy rollout is recorded on the learning curve. Everything is
/// determined by (mdp, cfg).
inline TrainResult train(const Mdp& mdp, const TrainConfig& cfg, const TransitionObserver& observer = {}) {
    check_train_config(cfg);
    if (mdp.discount != cfg.discount) throw DomainError("train config discount differs from the mdp's");

    const std::size_t n = mdp.num_states();
    const std::size_t width = std::max<std::size_t>(1, mdp.max_actions());
    std::vector<std::size_t> action_counts(n);
    for (std::size_t s = 0; s < n; ++s) action_counts[s] = mdp.num_actions(s);

    Rng explore = Rng::stream(cfg.seed, "train.explore");
    Rng env = Rng::stream(cfg.seed, "train.env");
    Rng replay_rng = Rng::stream(cfg.seed, "train.replay");
    Rng init = Rng::stream(cfg.seed, "train.init");

    TrainResult result;
    std::vector<std::size_t> visits;
    std::vector<double> step_sizes;  // step size by prior update count, filled on demand
    std::optional<ReplayBuffer> replay;
    if (cfg.algorithm == Algorithm::Tabular) {
        result.q = TabularQ(n, width);
        visits.assign(n * width, 0);
    } else {
        std::vector<std::size_t> widths{n};
        widths.insert(widths.end(), cfg.hidden_layers.begin(), cfg.hidden_layers.end());
        widths.push_back(width);
        DqnQ dqn{Mlp(widths, init), Mlp{}};
        dqn.sync_target();
        result.q = std::move(dqn);
        replay.emplace(cfg.replay_capacity);
    }

    for (std::size_t episode = 0; episode < cfg.episodes; ++episode) {
        const double eps = cfg.epsilon(episode);
        std::size_t s = mdp.initial;
        for (std::size_t step = 0; step < cfg.max_steps_per_episode; ++step) {
            if (s == mdp.terminal || action_counts[s] == 0) break;
            std::size_t a = std::visit([&](const auto& f) { return epsilon_greedy(f, mdp, s, eps, explore); }, result.q);
            const Outcome& o = sample_outcome(mdp, s, a, env);
            Transition t{s, a, o.reward, o.next, o.next == mdp.terminal};
            if (observer) observer(episode, t);
            ++result.total_steps;

            if (auto* table = std::get_if<TabularQ>(&result.q)) {
                std::size_t& count = visits[s * width + a];
                while (step_sizes.size() <= count) {
                    double n = static_cast<double>(step_sizes.size());
                    step_sizes.push_back(cfg.learning_rate_decay > 0.0
                                             ? cfg.learning_rate / std::pow(1.0 + n / cfg.learning_rate_horizon,
                                                                            cfg.learning_rate_decay)
                                             : cfg.learning_rate);
                }
                const double alpha = step_sizes[count++];
                q_update(*table, t, alpha, cfg.discount, action_counts[t.s_next]);
            } else {
                auto& dqn = std::get<DqnQ>(result.q);
                replay->push(t);
                if (replay->size() >= cfg.batch_size) {
                    auto batch = replay->sample(cfg.batch_size, replay_rng);
                    auto lg = dqn_loss_and_gradient(dqn.online, dqn.target, batch, cfg.discount, action_counts);
                    auto& theta = dqn.online.params();
                    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= cfg.learning_rate * lg.gradient[i];
                }
                if (result.total_steps % cfg.target_sync_interval == 0) dqn.sync_target();
            }
            s = o.next;
        }

        if ((episode + 1) % cfg.eval_interval == 0) {
            Rng eval = Rng::stream(cfg.seed, "train.eval", episode + 1);
            auto trace = rollout_greedy(mdp, result.q, cfg.max_steps_per_episode, eval);
            result.curve.push_back({episode + 1, trace.total_reward});
        }
    }
    return result;
}

}  // namespace cyberterrain
