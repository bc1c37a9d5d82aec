#pragma once

// Helpers shared by the unit suites and the acceptance binary. Everything here
// is written independently of the library's solvers so it can serve as an oracle.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cyberterrain/graph.hpp"
#include "cyberterrain/mdp.hpp"
#include "cyberterrain/mlp.hpp"
#include "cyberterrain/train.hpp"

namespace testsupport {

using namespace cyberterrain;

/// Random valid attack graph over n >= 2 vertices: a random tree rooted at v0
/// keeps everything reachable, extra edges are added with `density`, and the
/// terminal is v(n-1). Leaves of the tree that are not the terminal are often
/// dead ends.
inline AttackGraph random_graph(std::uint64_t seed, std::size_t n, double density = 0.2,
                                double firewall_prob = 0.3) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v;
        v.id = "v" + std::to_string(i);
        v.kind = gen() % 2 ? VertexKind::Component : VertexKind::Rule;
        v.cvss = CvssAnnotation{std::round(u(gen) * 100.0) / 10.0, std::round(u(gen) * 100.0) / 10.0,
                                kAllComplexities[gen() % 3]};
        if (i > 0 && u(gen) < firewall_prob) {
            FirewallAnnotation fw;
            for (Protocol p : kAllProtocols)
                if (gen() % 2) fw.blocked.insert(p);
            if (fw.blocked.empty()) fw.blocked.insert(kAllProtocols[gen() % 4]);
            v.firewall = fw;
        }
        vs.push_back(std::move(v));
    }
    std::vector<Edge> es;
    std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
    auto add = [&](std::size_t a, std::size_t b) {
        if (a == b || has[a][b]) return;
        has[a][b] = true;
        es.push_back({"v" + std::to_string(a), "v" + std::to_string(b)});
    };
    for (std::size_t i = 1; i < n; ++i) add(gen() % i, i);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (u(gen) < density) add(i, j);
    return AttackGraph(std::move(vs), std::move(es), "v0", "v" + std::to_string(n - 1));
}

/// Solves (I - gamma P_pi) V = R_pi by Gaussian elimination with partial pivoting.
inline std::vector<double> evaluate_policy(const Mdp& mdp, const std::vector<std::size_t>& policy) {
    const std::size_t n = mdp.num_states();
    std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t s = 0; s < n; ++s) {
        m[s][s] = 1.0;
        if (mdp.actions[s].empty()) continue;
        for (const Outcome& o : mdp.actions[s][policy[s]].outcomes) {
            m[s][o.next] -= mdp.discount * o.probability;
            m[s][n] += o.probability * o.reward;
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        std::swap(m[c], m[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    std::vector<double> v(n);
    for (std::size_t s = 0; s < n; ++s) v[s] = m[s][n] / m[s][s];
    return v;
}

struct EnumeratedOptimum {
    std::vector<double> values;
    /// Per state: Q values of every action under the optimal values.
    std::vector<std::vector<double>> q;
};

/// Brute force over all deterministic policies; keeps the one whose value
/// vector is componentwise best (an optimal policy dominates all others).
inline EnumeratedOptimum enumerate_policies(const Mdp& mdp) {
    const std::size_t n = mdp.num_states();
    std::vector<std::size_t> policy(n, 0);
    EnumeratedOptimum best;
    best.values.assign(n, -std::numeric_limits<double>::infinity());
    while (true) {
        auto v = evaluate_policy(mdp, policy);
        double gain = 0.0;
        for (std::size_t s = 0; s < n; ++s) gain += v[s] - best.values[s];
        if (gain > 0.0 || std::isinf(best.values[0])) best.values = v;
        std::size_t s = 0;
        for (; s < n; ++s) {
            if (mdp.actions[s].empty()) continue;
            if (++policy[s] < mdp.actions[s].size()) break;
            policy[s] = 0;
        }
        if (s == n) break;
    }
    best.q.resize(n);
    for (std::size_t s = 0; s < n; ++s)
        for (const Action& a : mdp.actions[s]) {
            double q = 0.0;
            for (const Outcome& o : a.outcomes) q += o.probability * (o.reward + mdp.discount * best.values[o.next]);
            best.q[s].push_back(q);
        }
    return best;
}

/// Actions within `margin` of the best Q value at a state; empty for absorbing states.
inline std::vector<std::size_t> near_optimal(const std::vector<double>& q, double margin) {
    std::vector<std::size_t> out;
    if (q.empty()) return out;
    double best = q[0];
    for (double x : q) best = std::max(best, x);
    for (std::size_t a = 0; a < q.size(); ++a)
        if (q[a] >= best - margin) out.push_back(a);
    return out;
}

/// Finite-difference gradient of the batch loss w.r.t. the online parameters.
inline std::vector<double> numeric_gradient(cyberterrain::Mlp online, const cyberterrain::Mlp& target, const std::vector<cyberterrain::Transition>& batch, double gamma,
                                     const std::vector<std::size_t>& counts, double h) {
    std::vector<double> g(online.params().size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        double keep = online.params()[i];
        online.params()[i] = keep + h;
        double up = cyberterrain::dqn_loss_and_gradient(online, target, batch, gamma, counts).loss;
        online.params()[i] = keep - h;
        double down = cyberterrain::dqn_loss_and_gradient(online, target, batch, gamma, counts).loss;
        online.params()[i] = keep;
        g[i] = (up - down) / (2.0 * h);
    }
    return g;
}

inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
    double diff = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff += (a[i] - b[i]) * (a[i] - b[i]);
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nb), 1e-12});
}

/// Norm-wise relative error between analytic and central-difference DQN
/// gradients for `draws` random networks, batches and action masks.
inline std::vector<double> gradient_check_errors(std::uint64_t seed, int draws) {
    std::mt19937_64 gen(seed);
    std::vector<double> errors;
    for (int draw = 0; draw < draws; ++draw) {
        const std::size_t n = 3 + gen() % 6, width = 2 + gen() % 3;
        cyberterrain::Rng rng(static_cast<std::uint64_t>(draw) + 100);
        std::vector<std::size_t> widths{n, 4 + gen() % 5, 3 + gen() % 4, width};
        cyberterrain::Mlp online(widths, rng), target(widths, rng);
        for (double& p : online.params()) p += 0.1 * rng.normal();  // non-zero biases too
        std::vector<std::size_t> counts(n);
        for (auto& c : counts) c = gen() % (width + 1);
        std::vector<cyberterrain::Transition> batch;
        while (batch.size() < 8) {
            std::size_t s = gen() % n;
            if (counts[s] == 0) continue;
            batch.push_back({s, gen() % counts[s], rng.normal() * 10.0, gen() % n, gen() % 4 == 0});
        }
        auto analytic = cyberterrain::dqn_loss_and_gradient(online, target, batch, 0.9, counts).gradient;
        auto numeric = numeric_gradient(online, target, batch, 0.9, counts, 1e-5);
        errors.push_back(relative_error(analytic, numeric));
    }
    return errors;
}

/// Training setup that converges on the gauntlet fixture. gamma close to 1
/// keeps the long-path penalty visible next to the terminal reward.
inline cyberterrain::TrainConfig gauntlet_train_config(std::uint64_t seed) {
    cyberterrain::TrainConfig c;
    c.discount = 0.999;
    c.episodes = 20000;
    c.learning_rate = 1.0;
    c.learning_rate_decay = 0.8;
    c.seed = seed;
    return c;
}

}  // namespace testsupport
