#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "recplant/agents/gripper.hpp"
#include "recplant/agents/mobile.hpp"
#include "recplant/agents/worker.hpp"
#include "recplant/bus/bus.hpp"
#include "recplant/config/config.hpp"
#include "recplant/plant/plant.hpp"
#include "recplant/sim/eventlog.hpp"
#include "recplant/world/world.hpp"

namespace recplant::sim {

// One deterministic run: a fixed tick loop over
//   agents sense/act -> bus delivery -> plant aggregate/decide -> bus post
//   -> world step.
// Single-threaded; distinct (config, seed) runs are fully independent.
class Simulation {
public:
    Simulation(config::ScenarioConfig cfg, std::uint64_t seed);
    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    void step_once();
    void run(); // cfg.ticks steps
    // run until `deliveries` world deliveries or `cap` ticks, whichever first
    void run_until_deliveries(int deliveries, Tick cap);

    Tick tick() const { return world_->tick(); }
    int deliveries() const { return deliveries_; }
    const EventLog& log() const { return log_; }
    const config::ScenarioConfig& cfg() const { return cfg_; }
    world::World& world() { return *world_; }
    bus::Bus& bus() { return *bus_; }
    plant::PlantController& plant() { return *plant_; }
    std::vector<agents::MobileRobot>& robots() { return robots_; }
    std::vector<agents::Gripper>& grippers() { return grippers_; }
    std::vector<agents::WorkerProxy>& workers() { return workers_; }

    // pretraining support
    nlohmann::json save_memory() const;
    void load_memory(const nlohmann::json& snapshot);

    // bench control: wipe gripper memory at the swap tick (naive baseline)
    void set_naive_grippers_after_swap(bool v) { naive_after_swap_ = v; }

private:
    void do_swap();
    agents::GripperView gripper_view(const agents::Gripper& g) const;
    const config::WorkerProfile* worker_by_cue(int cue) const;

    config::ScenarioConfig cfg_;
    std::uint64_t seed_;
    std::unique_ptr<world::World> world_;
    std::unique_ptr<bus::Bus> bus_;
    std::unique_ptr<plant::PlantController> plant_;
    std::vector<agents::MobileRobot> robots_;
    std::vector<agents::Gripper> grippers_;
    std::vector<agents::WorkerProxy> workers_;
    EventLog log_;
    std::map<std::string, std::vector<Event>> inbox_;
    int deliveries_ = 0;
    bool swapped_ = false;
    bool naive_after_swap_ = false;
    bool halted_workers_ = false;
};

} // namespace recplant::sim
