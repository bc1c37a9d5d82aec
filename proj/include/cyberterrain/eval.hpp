#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cyberterrain/graph.hpp"
#include "cyberterrain/mdp.hpp"
#include "cyberterrain/rollout.hpp"
#include "cyberterrain/terrain.hpp"
#include "cyberterrain/train.hpp"

namespace cyberterrain {

struct ExtractedPath {
    /// Distinct visited states in first-visit order.
    std::vector<std::size_t> states;
    /// States entered again after having been left for another state.
    std::vector<std::size_t> revisited;
    /// Loop-erased walk: consecutive entries are joined by a taken action,
    /// so it is always a path of the underlying graph.
    std::vector<std::size_t> simple;
};

/// Collapses failed attempts and revisits of a trace into the visited vertices.
inline ExtractedPath extract_path(const EpisodeTrace& trace) {
    ExtractedPath out;
    out.states.push_back(trace.start);
    out.simple.push_back(trace.start);
    std::size_t current = trace.start;
    for (const Transition& t : trace.transitions) {
        if (t.s_next == current) continue;
        current = t.s_next;
        if (std::find(out.states.begin(), out.states.end(), current) == out.states.end()) {
            out.states.push_back(current);
        } else if (std::find(out.revisited.begin(), out.revisited.end(), current) == out.revisited.end()) {
            out.revisited.push_back(current);
        }
        auto loop = std::find(out.simple.begin(), out.simple.end(), current);
        if (loop != out.simple.end())
            out.simple.erase(loop + 1, out.simple.end());
        else
            out.simple.push_back(current);
    }
    return out;
}

struct VariantResult {
    TerrainConfig terrain;
    std::string label;
    std::size_t hops = 0;
    std::size_t distinct_vertices = 0;
    double total_reward = 0.0;
    /// total_reward / hops, 0 when no hops were taken.
    double reward_per_hop = 0.0;
    bool reached_terminal = false;
    std::vector<std::string> path;
    std::vector<std::string> simple_path;
    EpisodeTrace trace;
    LearningCurve curve;
};

struct MetricsReport {
    std::vector<VariantResult> variants;

    const VariantResult* find(const std::string& label) const {
        for (const auto& v : variants)
            if (v.label == label) return &v;
        return nullptr;
    }
};

/// Runs f(0..count-1) on up to `jobs` threads; results keep index order. The
/// first exception by index is rethrown after all workers finish.
template <class F>
auto parallel_map(std::size_t count, std::size_t jobs, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
    using R = decltype(f(std::size_t{}));
    std::vector<std::optional<R>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min(std::max<std::size_t>(1, jobs), count);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<R> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

/// Builds, transforms, trains and greedily rolls out one variant. The final
/// rollout stream depends only on the training seed, so variants sharing a
/// seed see the same random draws.
/// `trained_out`, when given, receives the learned Q-function.
inline VariantResult run_variant(const AttackGraph& graph, const Mdp& vanilla, const TerrainConfig& terrain,
                                 const TrainConfig& train_cfg, TrainResult* trained_out = nullptr) {
    Mdp mdp = apply_terrain(vanilla, graph, terrain);
    TrainResult trained = train(mdp, train_cfg);
    Rng rollout_rng = Rng::stream(train_cfg.seed, "eval.rollout");
    EpisodeTrace trace = rollout_greedy(mdp, trained.q, train_cfg.max_steps_per_episode, rollout_rng);
    ExtractedPath path = extract_path(trace);

    VariantResult v;
    v.terrain = terrain;
    v.label = variant_label(terrain);
    v.hops = trace.hops;
    v.distinct_vertices = path.states.size();
    v.total_reward = trace.total_reward;
    v.reward_per_hop = trace.hops > 0 ? trace.total_reward / static_cast<double>(trace.hops) : 0.0;
    v.reached_terminal = trace.reached_terminal;
    for (std::size_t s : path.states) v.path.push_back(mdp.state_ids[s]);
    for (std::size_t s : path.simple) v.simple_path.push_back(mdp.state_ids[s]);
    v.trace = std::move(trace);
    v.curve = trained.curve;
    if (trained_out) *trained_out = std::move(trained);
    return v;
}

/// Trains every terrain variant with the same TrainConfig (and so the same seeds).
inline MetricsReport compare_variants(const AttackGraph& graph, const std::vector<TerrainConfig>& cfgs,
                                      const TrainConfig& train_cfg, std::size_t jobs = 1) {
    if (cfgs.empty()) throw DomainError("compare needs at least one terrain variant");
    for (const auto& c : cfgs) check_terrain_config(c);
    check_train_config(train_cfg);
    const Mdp vanilla = build_cvss_mdp(graph, train_cfg.discount);
    MetricsReport report;
    report.variants = parallel_map(cfgs.size(), jobs,
                                   [&](std::size_t i) { return run_variant(graph, vanilla, cfgs[i], train_cfg); });
    return report;
}

/// One variant per protocol, each restricted to that protocol, in FTP, SMTP, HTTP, SSH order.
inline std::vector<VariantResult> protocol_sweep(const AttackGraph& graph, TerrainMode mode, double w,
                                                 const TrainConfig& train_cfg, std::size_t jobs = 1) {
    if (mode == TerrainMode::Vanilla) throw DomainError("protocol sweep needs a terrain mode");
    std::vector<TerrainConfig> cfgs;
    for (Protocol p : kAllProtocols) cfgs.push_back({mode, w, p});
    return compare_variants(graph, cfgs, train_cfg, jobs).variants;
}

}  // namespace cyberterrain
