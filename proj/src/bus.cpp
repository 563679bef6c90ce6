#include "recplant/bus/bus.hpp"

#include <algorithm>
#include <stdexcept>

namespace recplant::bus {

const char* loop_name(LoopKind k) {
    switch (k) {
    case LoopKind::Sensory: return "sensory";
    case LoopKind::Orchestrator: return "orchestrator";
    case LoopKind::LtmExchange: return "ltm_exchange";
    case LoopKind::GlobalReflex: return "global_reflex";
    }
    return "?";
}

void Bus::post(Envelope env) {
    if (!registered(env.sender))
        throw std::runtime_error("bus: post from unregistered sender '" + env.sender + "'");
    env.seq = next_seq_[env.sender]++;
    ++posted_;
    if (!cfg_.central_enabled) {
        // agents fully autonomous: every loop kind is discarded
        ++discarded_;
        return;
    }
    pending_[env.posted + cfg_.latency].push_back(std::move(env));
}

std::vector<Envelope> Bus::deliver(Tick tick) {
    if (tick < last_delivery_tick_)
        throw std::runtime_error("bus: deliver ticks must be monotone");
    last_delivery_tick_ = tick;

    std::vector<Envelope> out;
    auto it = pending_.find(tick);
    if (it == pending_.end()) return out;
    std::vector<Envelope> due = std::move(it->second);
    pending_.erase(it);
    std::sort(due.begin(), due.end(), [](const Envelope& a, const Envelope& b) {
        if (a.sender != b.sender) return a.sender < b.sender;
        return a.seq < b.seq;
    });
    for (auto& env : due) {
        if (cfg_.drop_prob > 0.0 && rng_.next_double() < cfg_.drop_prob) {
            ++dropped_;
            continue;
        }
        ++delivered_;
        out.push_back(std::move(env));
    }
    return out;
}

std::uint64_t Bus::pending_count() const {
    std::uint64_t n = 0;
    for (const auto& [t, v] : pending_) n += v.size();
    return n;
}

} // namespace recplant::bus
