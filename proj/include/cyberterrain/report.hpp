#pragma once

#include <charconv>
#include <string>
#include <vector>

#include "cyberterrain/eval.hpp"
#include "cyberterrain/mdp.hpp"
#include "cyberterrain/qfunction.hpp"
#include "cyberterrain/train.hpp"

namespace cyberterrain {

/// Shortest decimal text that reads back as the same double.
inline std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of negative zero
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// `episode,eval_total_reward`
inline std::string curve_csv(const LearningCurve& curve) {
    std::string out = "episode,eval_total_reward\n";
    for (const CurvePoint& p : curve) out += std::to_string(p.episode) + "," + format_number(p.eval_total_reward) + "\n";
    return out;
}

/// `variant,hops,total_reward,reward_per_hop`
inline std::string summary_csv(const MetricsReport& report) {
    std::string out = "variant,hops,total_reward,reward_per_hop\n";
    for (const VariantResult& v : report.variants)
        out += v.label + "," + std::to_string(v.hops) + "," + format_number(v.total_reward) + "," +
               format_number(v.reward_per_hop) + "\n";
    return out;
}

/// `variant,distinct_vertices,reached_terminal,path` with the path joined by spaces.
inline std::string paths_csv(const MetricsReport& report) {
    std::string out = "variant,distinct_vertices,reached_terminal,path\n";
    for (const VariantResult& v : report.variants) {
        std::string path;
        for (const auto& id : v.path) path += (path.empty() ? "" : " ") + id;
        out += v.label + "," + std::to_string(v.distinct_vertices) + "," + (v.reached_terminal ? "true" : "false") +
               "," + path + "\n";
    }
    return out;
}

/// `state,action,value` over admissible pairs; the action is named by its target vertex.
inline std::string qtable_csv(const Mdp& mdp, const TabularQ& q) {
    std::string out = "state,action,value\n";
    for (std::size_t s = 0; s < mdp.num_states(); ++s)
        for (std::size_t a = 0; a < mdp.num_actions(s); ++a)
            out += mdp.state_ids[s] + "," + mdp.state_ids[mdp.actions[s][a].target] + "," + format_number(q.at(s, a)) +
                   "\n";
    return out;
}

}  // namespace cyberterrain
