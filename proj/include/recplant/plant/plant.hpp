#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recplant/bus/bus.hpp"
#include "recplant/config/config.hpp"
#include "recplant/dac/memory.hpp"
#include "recplant/dac/needs.hpp"

namespace recplant::plant {

using Tick = std::int64_t;

struct BenchPercept {
    std::string bench;
    bool taken = false; // device docked / gripper working
    std::string worker;
    int full_bins = 0;
    int queue = 0;
};

// Plant-level aggregate built by the sensory loop.
struct PlantPercept {
    Tick tick = 0;
    std::vector<BenchPercept> benches;
    std::vector<int> congestion; // robots per coarse corridor cell
    int congestion_cols = 0;
    int congestion_rows = 0;
    double throughput_ema = 0.0; // items per 1000 ticks
    std::vector<std::string> hazards;
};

double ema_update(double prev, double new_value, double weight);

struct AggregationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PlantDecisions {
    std::vector<bus::NeedModulation> modulations;
    std::vector<bus::GlobalCommand> commands; // broadcast
    std::vector<bus::LtmBatch> ltm_batches;   // per-agent
    std::vector<Event> events;                // estop / release / assign records
};

// The large-scale DAC instance: percept aggregation (sensory loop), global
// reflexes, orchestrator (need modulation via assignment optimization) and
// the plant-wide LTM exchange. Reuses the single-agent need algebra.
class PlantController {
public:
    PlantController(const config::ScenarioConfig& cfg);

    // snapshots delivered this tick -> percept (duplicate ids rejected)
    PlantPercept aggregate(const std::vector<bus::AgentSnapshot>& snapshots, Tick tick);

    // hazard latch: estop while dangerous, release after estop_hold clean ticks
    std::vector<bus::GlobalCommand> global_reflex(const PlantPercept& percept, Tick tick);

    // full plant step over this tick's inbox
    PlantDecisions step(Tick tick, const std::vector<bus::Envelope>& inbox);

    std::vector<bus::NeedModulation>
    orchestrate(const PlantPercept& percept,
                const std::vector<bus::AgentSnapshot>& free_robots, Tick tick) const;

    // merge incoming digests; route relevant subsets per agent kind
    std::vector<bus::LtmBatch> ltm_exchange(const std::vector<bus::LtmBatch>& digests, Tick tick);

    const dac::NeedState& needs() const { return needs_; }
    const PlantPercept& last_percept() const { return percept_; }
    bool estop_active() const { return latched_; }
    std::uint64_t rejected_batches() const { return rejected_batches_; }

private:
    double corridor_congestion(const PlantPercept& percept, const Vec2& from,
                               const Vec2& to) const;

    const config::ScenarioConfig& cfg_;
    dac::NeedState needs_; // throughput / congestion / fairness
    PlantPercept percept_;
    std::map<std::string, Pose> prev_pose_;
    std::map<std::string, double> speed_;
    std::map<std::string, bus::AgentSnapshot> latest_;
    bool latched_ = false;
    Tick hazard_free_ = 0;
    double ema_ = 0.0;
    Tick ema_window_start_ = 0;
    int window_deliveries_ = 0;
    std::map<std::string, int> bench_service_; // deliveries per bench (fairness)
    dac::SequenceMemory pool_mobile_;
    dac::SequenceMemory pool_gripper_;
    int pool_mobile_dim_ = -1;
    int pool_gripper_dim_ = -1;
    std::uint64_t rejected_batches_ = 0;
    double cell_ = 1.0; // congestion grid cell size
};

} // namespace recplant::plant
