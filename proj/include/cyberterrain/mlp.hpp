#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "cyberterrain/error.hpp"
#include "cyberterrain/qfunction.hpp"
#include "cyberterrain/rng.hpp"

namespace cyberterrain {

/// Feedforward network: rectified hidden layers, linear output layer.
/// Parameters live in one flat vector, layer by layer, each layer stored as
/// its weight matrix (row-major, out x in) followed by its bias.
class Mlp {
public:
    Mlp() = default;

    /// `widths` = {input, hidden..., output}.
    Mlp(std::vector<std::size_t> widths, Rng& rng) : widths_(std::move(widths)) {
        if (widths_.size() < 2) throw DomainError("network needs an input and an output width");
        for (std::size_t w : widths_)
            if (w == 0) throw DomainError("network layer widths must be positive");
        params_.resize(count_params(widths_));
        std::size_t offset = 0;
        for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
            const std::size_t in = widths_[l], out = widths_[l + 1];
            const double scale = std::sqrt(2.0 / static_cast<double>(in));
            for (std::size_t i = 0; i < in * out; ++i) params_[offset + i] = rng.normal() * scale;
            offset += in * out + out;  // biases start at zero
        }
    }

    static std::size_t count_params(const std::vector<std::size_t>& widths) {
        std::size_t n = 0;
        for (std::size_t l = 0; l + 1 < widths.size(); ++l) n += widths[l] * widths[l + 1] + widths[l + 1];
        return n;
    }

    const std::vector<std::size_t>& widths() const noexcept { return widths_; }
    std::size_t input_width() const noexcept { return widths_.front(); }
    std::size_t output_width() const noexcept { return widths_.back(); }
    std::vector<double>& params() noexcept { return params_; }
    const std::vector<double>& params() const noexcept { return params_; }

    /// Activations of every layer (index 0 is the input). Hidden layers hold post-rectifier values.
    std::vector<std::vector<double>> forward_all(std::span<const double> input) const {
        if (input.size() != input_width()) throw DomainError("network input width mismatch");
        std::vector<std::vector<double>> acts;
        acts.reserve(widths_.size());
        acts.emplace_back(input.begin(), input.end());
        std::size_t offset = 0;
        for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
            const std::size_t in = widths_[l], out = widths_[l + 1];
            const double* w = params_.data() + offset;
            const double* b = w + in * out;
            const auto& x = acts.back();
            std::vector<double> y(b, b + out);
            for (std::size_t j = 0; j < in; ++j) {
                if (x[j] == 0.0) continue;  // one-hot inputs are mostly zero
                for (std::size_t o = 0; o < out; ++o) y[o] += w[o * in + j] * x[j];
            }
            if (l + 2 < widths_.size())
                for (double& v : y) v = v > 0.0 ? v : 0.0;
            acts.push_back(std::move(y));
            offset += in * out + out;
        }
        return acts;
    }

    std::vector<double> forward(std::span<const double> input) const { return forward_all(input).back(); }

    /// Accumulates d(output[unit])/d(params) * scale into `grad`.
    void backward_unit(const std::vector<std::vector<double>>& acts, std::size_t unit, double scale,
                       std::vector<double>& grad) const {
        const std::size_t layers = widths_.size() - 1;
        std::vector<std::size_t> offsets(layers);
        for (std::size_t l = 0, off = 0; l < layers; ++l) {
            offsets[l] = off;
            off += widths_[l] * widths_[l + 1] + widths_[l + 1];
        }
        std::vector<double> delta(widths_.back(), 0.0);
        delta[unit] = scale;
        for (std::size_t l = layers; l-- > 0;) {
            const std::size_t in = widths_[l], out = widths_[l + 1];
            const double* w = params_.data() + offsets[l];
            double* gw = grad.data() + offsets[l];
            double* gb = gw + in * out;
            const auto& x = acts[l];
            for (std::size_t o = 0; o < out; ++o) {
                if (delta[o] == 0.0) continue;
                gb[o] += delta[o];
                for (std::size_t j = 0; j < in; ++j)
                    if (x[j] != 0.0) gw[o * in + j] += delta[o] * x[j];
            }
            if (l == 0) break;
            std::vector<double> prev(in, 0.0);
            for (std::size_t o = 0; o < out; ++o) {
                if (delta[o] == 0.0) continue;
                for (std::size_t j = 0; j < in; ++j) prev[j] += w[o * in + j] * delta[o];
            }
            for (std::size_t j = 0; j < in; ++j)
                if (x[j] <= 0.0) prev[j] = 0.0;  // rectifier derivative
            delta = std::move(prev);
        }
    }

    friend bool operator==(const Mlp&, const Mlp&) = default;

private:
    std::vector<std::size_t> widths_;
    std::vector<double> params_;
};

/// Network-backed action values over one-hot states, with a frozen target copy.
struct DqnQ {
    Mlp online;
    Mlp target;

    void action_values(std::size_t s, std::vector<double>& out) const {
        out = online.forward(encode_state(s, online.input_width()));
    }

    void sync_target() { target = online; }
};

struct LossAndGradient {
    double loss = 0.0;
    std::vector<double> gradient;
};

/// Mean squared one-step TD error over `batch`. Targets r + gamma * max_a' Q(s', a'; target)
/// (max over the admissible actions of s', none when done) are constants: the
/// gradient is taken over the online parameters only.
inline LossAndGradient dqn_loss_and_gradient(const Mlp& online, const Mlp& target, std::span<const Transition> batch,
                                             double gamma, std::span<const std::size_t> action_counts) {
    if (batch.empty()) throw DomainError("dqn loss needs a non-empty batch");
    const std::size_t n = online.input_width();
    LossAndGradient out;
    out.gradient.assign(online.params().size(), 0.0);
    const double inv = 1.0 / static_cast<double>(batch.size());
    for (const Transition& t : batch) {
        double y = t.r;
        if (!t.done && action_counts[t.s_next] > 0) {
            auto next = target.forward(encode_state(t.s_next, n));
            double best = next[0];
            for (std::size_t a = 1; a < action_counts[t.s_next]; ++a) best = std::max(best, next[a]);
            y += gamma * best;
        }
        auto acts = online.forward_all(encode_state(t.s, n));
        double err = acts.back()[t.a] - y;
        if (!std::isfinite(err)) throw DomainError("non-finite value in dqn forward pass");
        out.loss += err * err * inv;
        online.backward_unit(acts, t.a, 2.0 * err * inv, out.gradient);
    }
    return out;
}

}  // namespace cyberterrain
