#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace recplant::dac {

using Tick = std::int64_t;

struct Modulation {
    double delta = 0.0; // clamped to [-cap, cap] at write
    Tick expires_at = 0;
};

// One homeostatic variable: level, setpoint, gain, plus an allostatic setpoint
// shift installed by the orchestrator loop.
struct Need {
    double level = 1.0;    // in [0,1]
    double setpoint = 1.0; // base, in [0,1]
    double gain = 1.0;     // >= 0
    Modulation mod;        // delta 0 when inactive

    double effective_setpoint() const {
        return std::clamp(setpoint + mod.delta, 0.0, 1.0);
    }
    double drive() const { return gain * (effective_setpoint() - level); }
};

class NeedState {
public:
    explicit NeedState(double modulation_cap = 0.3) : cap_(modulation_cap) {}

    void define(const std::string& id, double level, double setpoint, double gain) {
        Need n;
        n.level = std::clamp(level, 0.0, 1.0);
        n.setpoint = std::clamp(setpoint, 0.0, 1.0);
        n.gain = std::max(gain, 0.0);
        needs_[id] = n;
    }

    bool has(const std::string& id) const { return needs_.count(id) > 0; }

    void set_level(const std::string& id, double level) {
        needs_.at(id).level = std::clamp(level, 0.0, 1.0);
    }
    double level(const std::string& id) const { return needs_.at(id).level; }
    double drive(const std::string& id) const { return needs_.at(id).drive(); }
    double effective_setpoint(const std::string& id) const {
        return needs_.at(id).effective_setpoint();
    }

    // |delta| is capped; TTL counted from `now`.
    void modulate(const std::string& id, double delta, Tick ttl, Tick now) {
        auto it = needs_.find(id);
        if (it == needs_.end()) return; // unknown need: ignored, never a reflex
        it->second.mod.delta = std::clamp(delta, -cap_, cap_);
        it->second.mod.expires_at = now + ttl;
    }

    // Drop expired modulations; clamp everything.
    void expire(Tick now) {
        for (auto& [id, n] : needs_) {
            if (n.mod.delta != 0.0 && now >= n.mod.expires_at) n.mod = Modulation{};
            n.level = std::clamp(n.level, 0.0, 1.0);
        }
    }

    // need id with the largest positive drive, or empty when none is positive
    std::string max_drive_need() const {
        std::string best;
        double best_d = 0.0;
        for (const auto& [id, n] : needs_) {
            double d = n.drive();
            if (d > best_d) {
                best_d = d;
                best = id;
            }
        }
        return best;
    }

    double modulation_cap() const { return cap_; }
    const std::map<std::string, Need>& all() const { return needs_; }
    std::map<std::string, Need>& all() { return needs_; }

private:
    double cap_;
    std::map<std::string, Need> needs_; // ordered for deterministic iteration
};

} // namespace recplant::dac
