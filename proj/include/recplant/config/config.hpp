#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "recplant/world/arena.hpp"
#include "recplant/world/world.hpp"

namespace recplant::config {

using Tick = std::int64_t;

struct ConfigError : std::runtime_error {
    std::vector<std::string> problems;
    explicit ConfigError(std::vector<std::string> p)
        : std::runtime_error(join(p)), problems(std::move(p)) {}
    static std::string join(const std::vector<std::string>& p) {
        std::string s = "config invalid:";
        for (const auto& e : p) s += "\n  - " + e;
        return s;
    }
};

struct DacParams {
    double eta = 0.05;
    double rho = 0.01;
    double theta_a = 0.5;
    double theta_c = 0.5;
    double gamma = 0.9;
    double beta = 1.5;
    double lambda = 0.95;
    int stm_capacity = 50;
    int ltm_capacity = 200;
    double modulation_cap = 0.3;
};

struct GestureCue {
    Tick tick = 0;
    std::string gesture;
};

struct WorkerProfile {
    std::string id;
    std::string bench;
    int cue = -1;
    double trust = 0.5;
    double skill = 0.5;
    double pace = 0.5;
    std::vector<GestureCue> gestures;
};

struct MobileSpec {
    std::string id;
    double x = 0, y = 0, heading = 0;
    double radius = 0.3;
    double max_speed_mps = 0.5; // converted to m/tick via dt = 0.1 s
};

struct GripperSpec {
    std::string id;
    std::string bench;
    double reach = 0.5;
    double initial_standoff = 1.0;
};

struct PlantBlock {
    bool central = true;
    Tick bus_latency = 1;
    double bus_drop = 0.0;
    Tick exchange_period = 200;
    Tick orchestrate_period = 50;
    Tick modulation_ttl = 200;
    Tick estop_hold = 10; // hazard-free ticks before release
    double d_crit = 0.3;  // surface gap between robots
    double congestion_weight = 1.0;
    double throughput_target = 20.0; // items per 1000 ticks
    double ema_weight = 0.1;
    Tick ema_window = 500;
    double envelope_lookahead = 1.0;
};

// Embodiment constants; only the trust->distance monotonicity is principled,
// the magnitudes are desk-scale choices.
struct AgentTuning {
    double d_min = 0.4;
    double d_max = 1.2;
    double d_stop = 0.5;
    double delta_approach = 0.002;
    double delta_retreat = 0.01;
    double discomfort_unit = 0.04; // meters of intrusion per intensity unit
    double avoid_range = 0.5;
    double battery_low_drive = 0.3;
    double transport_decay = 0.0008;
    Tick explore_hold = 12;
    double worker_speed_mps = 0.3;
    double worker_loop_radius = 0.85;
    double rest_standoff = 1.2;
};

struct SwapEvent {
    Tick tick = 0;
    std::string worker_a;
    std::string worker_b;
};

struct ScenarioConfig {
    world::ArenaMap arena;
    world::WorldConfig world;
    std::vector<MobileSpec> mobiles;
    std::vector<GripperSpec> grippers;
    std::vector<WorkerProfile> workers;
    std::vector<world::DeviceModel> models;
    std::vector<world::DeviceArrival> arrivals;
    DacParams dac;
    PlantBlock plant;
    AgentTuning tuning;
    Tick ticks = 20000;
    std::uint64_t seed = 1;
    std::optional<SwapEvent> swap;

    static constexpr double kDt = 0.1; // seconds per tick

    const WorkerProfile* worker(const std::string& id) const;
    const WorkerProfile* worker_at_bench(const std::string& bench) const;

    nlohmann::json to_json() const; // resolved config, round-trips via parse
    std::uint64_t checksum(bool include_central = true) const;
};

// Strict parse: unknown keys rejected, all violations reported at once.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig parse_config_file(const std::string& path);

} // namespace recplant::config
