// Trains all three terrain variants on the two-path gauntlet and prints the
// path each greedy policy takes. Pass a seed as the only argument.

#include <iostream>
#include <string>

#include "cyberterrain/cyberterrain.hpp"

using namespace cyberterrain;

int main(int argc, char** argv) {
    TopologyParams params;
    params.seed = argc > 1 ? std::stoull(argv[1]) : 1;
    const AttackGraph graph = plant_gauntlet(params, {Protocol::Ftp});

    TrainConfig train;
    train.discount = 0.999;
    train.episodes = 20000;
    train.learning_rate = 1.0;
    train.learning_rate_decay = 0.8;
    train.seed = params.seed;

    const MetricsReport report = compare_variants(graph,
                                                  {TerrainConfig{},
                                                   {TerrainMode::RewardAdjusted, kDefaultPenaltyWeight, std::nullopt},
                                                   {TerrainMode::StateAdjusted, kDefaultPenaltyWeight, std::nullopt}},
                                                  train, 3);
    std::cout << "gauntlet with " << graph.vertices().size() << " vertices, firewall 'fw' blocks ftp\n\n";
    std::cout << summary_csv(report) << "\n";
    for (const auto& v : report.variants) {
        std::cout << v.label << ":";
        for (const auto& id : v.simple_path) std::cout << ' ' << id;
        std::cout << '\n';
    }
    return 0;
}
