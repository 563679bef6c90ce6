#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "recplant/core/action.hpp"
#include "recplant/core/sensor.hpp"
#include "recplant/world/arena.hpp"
#include "recplant/world/types.hpp"

namespace recplant::world {

struct SimError : std::runtime_error {
    Tick tick;
    SimError(Tick t, const std::string& msg)
        : std::runtime_error("tick " + std::to_string(t) + ": " + msg), tick(t) {}
};

struct BodyState {
    std::string id;
    std::string kind; // "mobile" | "worker"
    Pose pose;
    double radius = 0.3;
    double max_speed = 0.05; // m/tick
    double max_turn = 0.3;   // rad/tick
    double battery = 1.0;
    std::string carried_bin; // mobile only
    int cue = -1;            // worker visual cue
    double last_v = 0.0;     // actually moved distance last tick
    double last_dheading = 0.0;
};

struct GripperState {
    std::string id;
    std::string bench;
    double standoff = 1.0; // working distance to the worker, m
    double reach = 0.5;
    double last_velocity = 0.0; // tool params echoed into endosensing
    double last_pressure = 0.0;
};

struct WorldConfig {
    int proximity_rays = 8;
    double proximity_max = 3.0;
    double fov = kPi; // 180 degrees
    double cue_range = 4.0;
    double gesture_range = 3.0;
    double idle_drain = 1e-5;
    double move_drain = 4e-5;
    double charge_rate = 2e-3;
    double lift_reach = 0.5;
    int bin_capacity = 4;
    bool bins_always_full = false; // foraging mode: lifted bins respawn full
    Tick auto_fill_period = 0;     // >0: benches produce a full bin periodically
};

struct DeviceArrival {
    Tick tick = 0;
    std::string model;
    std::string bench;
};

// Deterministic fixed-timestep micro-plant: entity kinematics with
// stop-at-contact collisions, device/bin/conveyor lifecycle and all sensor
// channels. No RNG anywhere in here.
class World {
public:
    World(ArenaMap arena, WorldConfig cfg);

    void add_mobile(const std::string& id, Pose pose, double radius, double max_speed);
    void add_worker(const std::string& id, Pose pose, int cue, double speed);
    void add_gripper(const std::string& id, const std::string& bench, double reach,
                     double standoff);
    void add_model(DeviceModel model);
    void schedule_arrival(DeviceArrival a);

    // one tick; throws SimError for actions referencing unknown agents
    StepOutcome step(const std::map<std::string, ActionPrimitive>& actions);

    SensorFrame sense(const std::string& agent) const;

    // direct ops (also reachable through step actions)
    StepResult apply_disassembly_step(const std::string& bench, int component, double velocity,
                                      double pressure, std::vector<Event>& events);
    bool lift_bin(const std::string& robot, const std::string& bin, std::vector<Event>& events);
    bool place_bin(const std::string& robot, std::vector<Event>& events);

    // views
    Tick tick() const { return tick_; }
    const ArenaMap& arena() const { return arena_; }
    const WorldConfig& config() const { return cfg_; }
    const BodyState* body(const std::string& id) const;
    BodyState* body_mut(const std::string& id);
    const GripperState* gripper(const std::string& id) const;
    GripperState* gripper_mut(const std::string& id);
    const std::vector<BodyState>& bodies() const { return bodies_; }
    const std::vector<GripperState>& grippers() const { return grippers_; }
    const std::vector<Bin>& bins() const { return bins_; }
    const Bin* bin(const std::string& id) const;
    const DeviceInstance* docked_device(const std::string& bench) const;
    const DeviceModel* model(const std::string& id) const;
    const std::map<std::string, DeviceModel>& models() const { return models_; }
    int sorted_count(Material m) const { return sorted_[static_cast<int>(m)]; }
    int spawned_devices() const { return spawned_devices_; }
    // components currently accounted for across devices, staging, bins and
    // the sorting tally; equals 4 * spawned_devices() at all times
    int component_census() const;
    bool agent_exists(const std::string& id) const;
    std::vector<std::string> agent_ids() const; // deterministic roster order
    bool in_sorting_zone(const Vec2& p) const { return arena_.sorting_zone.contains(p); }
    bool in_charge_zone(const Vec2& p) const { return arena_.charge_zone.contains(p); }

private:
    void move_bodies(const std::map<std::string, ActionPrimitive>& actions,
                     std::vector<Event>& events);
    void advance_devices(std::vector<Event>& events);
    void auto_fill(std::vector<Event>& events);
    void spawn_bin_at_bench(const std::string& bench, Material m, std::vector<Event>& events);
    double cast_ray(const Vec2& origin, double angle, const std::string& self) const;
    bool occluded(const Vec2& from, const Vec2& to) const;

    ArenaMap arena_;
    WorldConfig cfg_;
    Tick tick_ = 0;
    std::vector<BodyState> bodies_;
    std::vector<GripperState> grippers_;
    std::vector<Bin> bins_;
    std::map<std::string, DeviceModel> models_;
    std::vector<DeviceArrival> schedule_; // sorted by tick at first step
    std::size_t next_arrival_ = 0;
    bool schedule_sorted_ = false;
    std::vector<DeviceInstance> devices_;
    int next_device_uid_ = 0;
    int sorted_[kMaterialCount] = {0, 0, 0, 0};
    int spawned_devices_ = 0;

    struct GestureEmission {
        GestureEvent event;
        Vec2 pos;
    };
    std::vector<GestureEmission> gesture_pending_; // emitted during this step
    std::vector<GestureEmission> gesture_visible_; // sensed next tick
};

} // namespace recplant::world
