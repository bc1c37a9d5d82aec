#pragma once

#include <string>

#include "cyberterrain/json_util.hpp"
#include "cyberterrain/mdp.hpp"

namespace cyberterrain {

/// Structured-text dump of an Mdp: discount, provenance, and per state its
/// admissible actions with (next, probability, reward) outcomes.
inline std::string dump_mdp(const Mdp& mdp) {
    detail::Json doc;
    doc["version"] = "1";
    doc["discount"] = mdp.discount;
    doc["initial"] = mdp.state_ids[mdp.initial];
    doc["terminal"] = mdp.state_ids[mdp.terminal];
    detail::Json prov;
    prov["mode"] = std::string(to_token(mdp.provenance.mode));
    prov["w"] = mdp.provenance.w;
    if (mdp.provenance.restrict_protocol) prov["protocol"] = std::string(to_token(*mdp.provenance.restrict_protocol));
    doc["provenance"] = std::move(prov);
    doc["states"] = detail::Json::array();
    for (std::size_t s = 0; s < mdp.num_states(); ++s) {
        detail::Json state;
        state["id"] = mdp.state_ids[s];
        state["actions"] = detail::Json::array();
        for (const Action& a : mdp.actions[s]) {
            detail::Json action;
            action["target"] = mdp.state_ids[a.target];
            action["outcomes"] = detail::Json::array();
            for (const Outcome& o : a.outcomes)
                action["outcomes"].push_back(detail::Json::array({mdp.state_ids[o.next], o.probability, o.reward}));
            state["actions"].push_back(std::move(action));
        }
        doc["states"].push_back(std::move(state));
    }
    return doc.dump(2) + "\n";
}

}  // namespace cyberterrain
