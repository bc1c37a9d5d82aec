#pragma once

#include <cstddef>
#include <vector>

#include "cyberterrain/error.hpp"
#include "cyberterrain/qfunction.hpp"
#include "cyberterrain/rng.hpp"

namespace cyberterrain {

/// Fixed-capacity ring of transitions; when full the oldest entry is overwritten.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
        if (capacity == 0) throw DomainError("replay capacity must be positive");
        items_.reserve(capacity);
    }

    void push(const Transition& t) {
        if (items_.size() < capacity_) {
            items_.push_back(t);
        } else {
            items_[head_] = t;
            head_ = (head_ + 1) % capacity_;
        }
    }

    std::size_t size() const noexcept { return items_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }

    /// i-th entry counted from the oldest.
    const Transition& from_oldest(std::size_t i) const { return items_.at((head_ + i) % items_.size()); }

    /// Uniform sample with replacement.
    std::vector<Transition> sample(std::size_t count, Rng& rng) const {
        if (items_.empty()) throw DomainError("cannot sample an empty replay buffer");
        std::vector<Transition> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) out.push_back(items_[rng.below(items_.size())]);
        return out;
    }

private:
    std::size_t capacity_;
    std::size_t head_ = 0;
    std::vector<Transition> items_;
};

}  // namespace cyberterrain
