#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "recplant/core/events.hpp"
#include "recplant/core/geometry.hpp"
#include "recplant/core/rng.hpp"
#include "recplant/dac/memory.hpp"

namespace recplant::bus {

using Tick = std::int64_t;

enum class LoopKind { Sensory, Orchestrator, LtmExchange, GlobalReflex };
const char* loop_name(LoopKind k);

// agent -> plant exosensing sample (the sensory loop payload)
struct AgentSnapshot {
    std::string id;
    std::string kind; // mobile | gripper | worker
    Pose pose;
    bool loaded = false;
    double battery = 1.0;
    std::string layer; // layer chosen this tick
    std::vector<std::string> hazard_flags;
    std::map<std::string, double> drives;
    // gripper extras (bench occupancy for the plant percept)
    std::string bench;
    bool device_docked = false;
    int full_bins = 0;
    int queue = 0;
    std::string worker_seen;
    int deliveries = 0; // this tick
};

struct NeedModulation {
    std::string agent;
    std::string need;
    double delta = 0.0;
    Tick ttl = 0;
};

struct LtmBatch {
    std::string target; // receiving agent (empty = toward the plant)
    std::string kind;   // embodiment of the sequences: mobile | gripper
    int dim = 0;
    std::vector<dac::Sequence> sequences;
};

struct GlobalCommand {
    std::string command; // estop | release
};

using Payload = std::variant<AgentSnapshot, NeedModulation, LtmBatch, GlobalCommand>;

struct Envelope {
    Tick posted = 0;
    std::string sender;
    std::uint64_t seq = 0; // per-sender, strictly increasing
    LoopKind kind = LoopKind::Sensory;
    Payload payload;
};

struct ChannelConfig {
    bool central_enabled = true;
    Tick latency = 1;      // >= 1, no same-tick delivery
    double drop_prob = 0.0; // < 1
    std::uint64_t drop_seed = 0;
};

// Simulated wireless carrier for the three plant loops (plus the global
// reflex channel). Deterministic delivery order, seeded random drops decided
// at delivery time, and a master switch that realizes the central-control
// ablation by discarding every loop message.
class Bus {
public:
    explicit Bus(ChannelConfig cfg) : cfg_(cfg), rng_(cfg.drop_seed) {}

    void register_sender(const std::string& id) { senders_.insert(id); }
    bool registered(const std::string& id) const { return senders_.count(id) > 0; }

    // enqueue for delivery at posted + latency; discarded (counted) when the
    // central switch is off. Throws on unregistered senders.
    void post(Envelope env);

    // everything due at `tick`, sorted by (sender, seq); drops rolled here
    std::vector<Envelope> deliver(Tick tick);

    const ChannelConfig& config() const { return cfg_; }
    std::uint64_t posted_count() const { return posted_; }
    std::uint64_t delivered_count() const { return delivered_; }
    std::uint64_t dropped_count() const { return dropped_; }
    std::uint64_t discarded_count() const { return discarded_; }
    std::uint64_t pending_count() const;

private:
    ChannelConfig cfg_;
    Rng rng_;
    std::set<std::string> senders_;
    std::map<Tick, std::vector<Envelope>> pending_;
    std::map<std::string, std::uint64_t> next_seq_;
    std::uint64_t posted_ = 0, delivered_ = 0, dropped_ = 0, discarded_ = 0;
    Tick last_delivery_tick_ = -1;
};

} // namespace recplant::bus
