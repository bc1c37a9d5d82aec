#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cyberterrain/json_util.hpp"
#include "cyberterrain/netgen.hpp"
#include "cyberterrain/terrain.hpp"
#include "cyberterrain/train.hpp"

namespace cyberterrain {

/// Gauntlet fixture as a run input.
struct GauntletInput {
    TopologyParams params;
    std::set<Protocol> blocked{Protocol::Ftp};
    GauntletShape shape;

    friend bool operator==(const GauntletInput&, const GauntletInput&) = default;
};

/// Everything a `compare` run needs; also the manifest written next to its outputs.
struct RunConfig {
    /// Graph file path, generated topology, or gauntlet fixture.
    std::variant<std::string, TopologyParams, GauntletInput> input;
    std::vector<TerrainConfig> terrain{{TerrainMode::Vanilla, kDefaultPenaltyWeight, std::nullopt},
                                       {TerrainMode::RewardAdjusted, kDefaultPenaltyWeight, std::nullopt},
                                       {TerrainMode::StateAdjusted, kDefaultPenaltyWeight, std::nullopt}};
    TrainConfig train;
    /// Also run the per-protocol sweep for every terrain mode present.
    bool protocols = false;
    std::string output_dir;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

namespace detail {

template <std::size_t N, class E>
Json encode_weights(const std::array<double, N>& w, const std::array<E, N>& keys) {
    Json out;
    for (std::size_t i = 0; i < N; ++i) out[std::string(to_token(keys[i]))] = w[i];
    return out;
}

template <std::size_t N, class E>
std::array<double, N> decode_weights(const Json& j, const std::array<E, N>& keys, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    std::array<double, N> w{};
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::size_t i = 0;
        while (i < N && to_token(keys[i]) != it.key()) ++i;
        if (i == N) throw ParseError(where + ": unknown key '" + it.key() + "'");
        w[i] = as_number(it.value(), where + "." + it.key());
    }
    return w;
}

inline void reject_unknown(const Json& obj, std::initializer_list<const char*> known, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ParseError(where + ": unknown key '" + it.key() + "'");
    }
}

inline Protocol decode_protocol(const Json& j, const std::string& where) {
    auto token = as_string(j, where);
    auto p = protocol_from_token(token);
    if (!p) throw ParseError(where + ": unknown protocol '" + token + "'");
    return *p;
}

}  // namespace detail

inline detail::Json to_json(const TopologyParams& p) {
    detail::Json j;
    j["num_subnets"] = p.num_subnets;
    j["hosts_per_subnet"] = p.hosts_per_subnet;
    j["intra_edge_prob"] = p.intra_edge_prob;
    j["inter_edge_count"] = p.inter_edge_count;
    j["firewall_prob"] = p.firewall_prob;
    j["protocol_weights"] = detail::encode_weights(p.protocol_weights, kAllProtocols);
    j["complexity_weights"] = detail::encode_weights(p.complexity_weights, kAllComplexities);
    j["seed"] = p.seed;
    return j;
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline TopologyParams topology_params_from_json(const detail::Json& j, const std::string& where = "$") {
    using namespace detail;
    reject_unknown(j,
                   {"num_subnets", "hosts_per_subnet", "intra_edge_prob", "inter_edge_count", "firewall_prob",
                    "protocol_weights", "complexity_weights", "seed"},
                   where);
    TopologyParams p;
    if (j.contains("num_subnets")) p.num_subnets = as_count(j["num_subnets"], where + ".num_subnets");
    if (j.contains("hosts_per_subnet")) p.hosts_per_subnet = as_count(j["hosts_per_subnet"], where + ".hosts_per_subnet");
    if (j.contains("intra_edge_prob")) p.intra_edge_prob = as_number(j["intra_edge_prob"], where + ".intra_edge_prob");
    if (j.contains("inter_edge_count")) p.inter_edge_count = as_count(j["inter_edge_count"], where + ".inter_edge_count");
    if (j.contains("firewall_prob")) p.firewall_prob = as_number(j["firewall_prob"], where + ".firewall_prob");
    if (j.contains("protocol_weights"))
        p.protocol_weights = decode_weights(j["protocol_weights"], kAllProtocols, where + ".protocol_weights");
    if (j.contains("complexity_weights"))
        p.complexity_weights = decode_weights(j["complexity_weights"], kAllComplexities, where + ".complexity_weights");
    if (j.contains("seed")) p.seed = as_count(j["seed"], where + ".seed");
    return p;
}

inline detail::Json to_json(const TerrainConfig& c) {
    detail::Json j;
    j["mode"] = std::string(to_token(c.mode));
    j["w"] = c.w;
    if (c.restrict_protocol) j["protocol"] = std::string(to_token(*c.restrict_protocol));
    return j;
}

inline TerrainConfig terrain_config_from_json(const detail::Json& j, const std::string& where = "$") {
    using namespace detail;
    reject_unknown(j, {"mode", "w", "protocol"}, where);
    TerrainConfig c;
    auto token = as_string(require(j, "mode", where), where + ".mode");
    auto mode = terrain_mode_from_token(token);
    if (!mode) throw ParseError(where + ".mode: unknown terrain mode '" + token + "'");
    c.mode = *mode;
    if (j.contains("w")) c.w = as_number(j["w"], where + ".w");
    if (j.contains("protocol")) c.restrict_protocol = decode_protocol(j["protocol"], where + ".protocol");
    return c;
}

inline detail::Json to_json(const TrainConfig& c) {
    detail::Json j;
    j["algorithm"] = std::string(to_token(c.algorithm));
    j["episodes"] = c.episodes;
    j["max_steps_per_episode"] = c.max_steps_per_episode;
    j["eval_interval"] = c.eval_interval;
    j["discount"] = c.discount;
    j["learning_rate"] = c.learning_rate;
    j["learning_rate_decay"] = c.learning_rate_decay;
    j["learning_rate_horizon"] = c.learning_rate_horizon;
    j["epsilon_start"] = c.epsilon_start;
    j["epsilon_end"] = c.epsilon_end;
    j["epsilon_decay_episodes"] = c.decay_episodes();
    j["replay_capacity"] = c.replay_capacity;
    j["batch_size"] = c.batch_size;
    j["target_sync_interval"] = c.target_sync_interval;
    j["hidden_layers"] = c.hidden_layers;
    j["seed"] = c.seed;
    return j;
}

inline TrainConfig train_config_from_json(const detail::Json& j, const std::string& where = "$") {
    using namespace detail;
    reject_unknown(j,
                   {"algorithm", "episodes", "max_steps_per_episode", "eval_interval", "discount", "learning_rate",
                    "learning_rate_decay", "learning_rate_horizon", "epsilon_start", "epsilon_end", "epsilon_decay_episodes",
                    "replay_capacity", "batch_size", "target_sync_interval", "hidden_layers", "seed"},
                   where);
    TrainConfig c;
    if (j.contains("algorithm")) {
        auto token = as_string(j["algorithm"], where + ".algorithm");
        auto algo = algorithm_from_token(token);
        if (!algo) throw ParseError(where + ".algorithm: unknown algorithm '" + token + "'");
        c.algorithm = *algo;
    }
    auto count = [&](const char* key, std::size_t& field) {
        if (j.contains(key)) field = as_count(j[key], where + "." + key);
    };
    auto number = [&](const char* key, double& field) {
        if (j.contains(key)) field = as_number(j[key], where + "." + key);
    };
    count("episodes", c.episodes);
    count("max_steps_per_episode", c.max_steps_per_episode);
    count("eval_interval", c.eval_interval);
    number("discount", c.discount);
    number("learning_rate", c.learning_rate);
    number("learning_rate_decay", c.learning_rate_decay);
    number("learning_rate_horizon", c.learning_rate_horizon);
    number("epsilon_start", c.epsilon_start);
    number("epsilon_end", c.epsilon_end);
    if (j.contains("epsilon_decay_episodes"))
        c.epsilon_decay_episodes = as_count(j["epsilon_decay_episodes"], where + ".epsilon_decay_episodes");
    count("replay_capacity", c.replay_capacity);
    count("batch_size", c.batch_size);
    count("target_sync_interval", c.target_sync_interval);
    if (j.contains("hidden_layers")) {
        const auto& arr = as_array(j["hidden_layers"], where + ".hidden_layers");
        c.hidden_layers.clear();
        for (std::size_t i = 0; i < arr.size(); ++i)
            c.hidden_layers.push_back(as_count(arr[i], where + ".hidden_layers[" + std::to_string(i) + "]"));
    }
    if (j.contains("seed")) c.seed = as_count(j["seed"], where + ".seed");
    return c;
}

inline detail::Json to_json(const GauntletInput& g) {
    detail::Json j;
    j["params"] = to_json(g.params);
    j["blocked"] = detail::Json::array();
    for (Protocol p : g.blocked) j["blocked"].push_back(std::string(to_token(p)));
    j["short_hops"] = g.shape.short_hops;
    j["long_hops"] = g.shape.long_hops;
    j["short_path_reward"] = g.shape.short_path_reward;
    j["reward_gap"] = g.shape.reward_gap;
    return j;
}

inline GauntletInput gauntlet_input_from_json(const detail::Json& j, const std::string& where = "$") {
    using namespace detail;
    reject_unknown(j, {"params", "blocked", "short_hops", "long_hops", "short_path_reward", "reward_gap"}, where);
    GauntletInput g;
    if (j.contains("params")) g.params = topology_params_from_json(j["params"], where + ".params");
    if (j.contains("blocked")) {
        g.blocked.clear();
        const auto& arr = as_array(j["blocked"], where + ".blocked");
        for (std::size_t i = 0; i < arr.size(); ++i)
            g.blocked.insert(decode_protocol(arr[i], where + ".blocked[" + std::to_string(i) + "]"));
    }
    if (j.contains("short_hops")) g.shape.short_hops = as_count(j["short_hops"], where + ".short_hops");
    if (j.contains("long_hops")) g.shape.long_hops = as_count(j["long_hops"], where + ".long_hops");
    if (j.contains("short_path_reward"))
        g.shape.short_path_reward = as_number(j["short_path_reward"], where + ".short_path_reward");
    if (j.contains("reward_gap")) g.shape.reward_gap = as_number(j["reward_gap"], where + ".reward_gap");
    return g;
}

inline detail::Json to_json(const RunConfig& c) {
    detail::Json j;
    detail::Json input;
    if (const auto* path = std::get_if<std::string>(&c.input)) input["graph"] = *path;
    if (const auto* params = std::get_if<TopologyParams>(&c.input)) input["params"] = to_json(*params);
    if (const auto* g = std::get_if<GauntletInput>(&c.input)) input["gauntlet"] = to_json(*g);
    j["input"] = std::move(input);
    j["terrain"] = detail::Json::array();
    for (const auto& t : c.terrain) j["terrain"].push_back(to_json(t));
    j["train"] = to_json(c.train);
    j["protocols"] = c.protocols;
    j["output_dir"] = c.output_dir;
    return j;
}

/// Accepts a run config or a manifest (whose extra `rng_version` and `artifacts` keys are ignored).
inline RunConfig run_config_from_json(const detail::Json& j) {
    using namespace detail;
    reject_unknown(j, {"input", "terrain", "train", "protocols", "output_dir", "rng_version", "artifacts"}, "$");
    RunConfig c;
    const Json& input = require(j, "input", "$");
    reject_unknown(input, {"graph", "params", "gauntlet"}, "$.input");
    if (input.size() != 1) throw ParseError("$.input: exactly one of 'graph', 'params', 'gauntlet' is required");
    if (input.contains("graph")) c.input = as_string(input["graph"], "$.input.graph");
    if (input.contains("params")) c.input = topology_params_from_json(input["params"], "$.input.params");
    if (input.contains("gauntlet")) c.input = gauntlet_input_from_json(input["gauntlet"], "$.input.gauntlet");
    if (j.contains("terrain")) {
        c.terrain.clear();
        const auto& arr = as_array(j["terrain"], "$.terrain");
        for (std::size_t i = 0; i < arr.size(); ++i)
            c.terrain.push_back(terrain_config_from_json(arr[i], "$.terrain[" + std::to_string(i) + "]"));
    }
    if (j.contains("train")) c.train = train_config_from_json(j["train"], "$.train");
    if (j.contains("protocols")) c.protocols = as_bool(j["protocols"], "$.protocols");
    if (j.contains("output_dir")) c.output_dir = as_string(j["output_dir"], "$.output_dir");
    return c;
}

inline RunConfig parse_run_config(const std::string& text) {
    return run_config_from_json(detail::parse_json(text, "run config"));
}

}  // namespace cyberterrain
