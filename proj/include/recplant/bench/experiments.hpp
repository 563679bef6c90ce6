#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recplant/bench/metrics.hpp"
#include "recplant/bench/stats.hpp"
#include "recplant/config/config.hpp"

namespace recplant::bench {

// canonical benchmark scenarios (also expressible as config documents)
config::ScenarioConfig foraging_config();
config::ScenarioConfig navigation_config();
config::ScenarioConfig generalization_config();
config::ScenarioConfig disassembly_config();

struct ConditionComparison {
    std::string metric;
    std::vector<std::pair<double, double>> pairs; // (central on, central off) per seed
    SignTest test;
};

struct ForagingRun {
    std::uint64_t seed = 0;
    RunMetrics metrics; // with early/middle/late phases
};

struct ForagingResult {
    std::vector<ForagingRun> runs;
    // per-seed (early, late) sign tests on the three phase metrics
    SignTest occupancy_drop;  // early > late
    SignTest traj_len_drop;   // early > late
    SignTest rate_gain;       // late > early
};

ForagingResult run_foraging_phases(const config::ScenarioConfig& cfg,
                                   const std::vector<std::uint64_t>& seeds, int episodes = 60,
                                   int threads = 0);

struct NavigationResult {
    std::vector<std::uint64_t> seeds;
    std::vector<RunMetrics> central_on;
    std::vector<RunMetrics> central_off;
    std::vector<ConditionComparison> comparisons; // service_entropy, near_miss, collection_rate
};

// paired runs per seed; throws std::invalid_argument for < 2 robots/benches
NavigationResult run_navigation_experiment(const config::ScenarioConfig& cfg,
                                           const std::vector<std::uint64_t>& seeds,
                                           int threads = 0);

struct GeneralizationResult {
    std::vector<std::uint64_t> seeds;
    std::vector<double> recovery_on;    // ticks to re-adapt after the swap
    std::vector<double> recovery_off;
    std::vector<double> recovery_naive; // fresh grippers at the swap tick
    ConditionComparison recovery;       // (on, off)
    SignTest off_vs_naive;              // expect indistinguishable
};

GeneralizationResult run_generalization_experiment(const config::ScenarioConfig& cfg,
                                                   const std::vector<std::uint64_t>& seeds,
                                                   int threads = 0);

struct DisassemblyResult {
    std::vector<std::uint64_t> seeds;
    std::vector<int> first_episode_attempts;
    std::vector<int> trained_episode_attempts; // after 5 successful episodes
};

DisassemblyResult run_disassembly_benchmark(const config::ScenarioConfig& cfg,
                                            const std::vector<std::uint64_t>& seeds,
                                            int threads = 0);

// post-swap ticks until the summed gripper standoff error stays under
// epsilon for a full window
double recovery_time_from_log(const sim::EventLog& log, const config::ScenarioConfig& cfg,
                              Tick swap_tick, double epsilon = 0.1, Tick window = 50);

// first tick at which the filtered world-event streams of two logs differ;
// -1 when identical
Tick first_divergence_tick(const sim::EventLog& a, const sim::EventLog& b);
// first tick at which a plant-originated envelope was delivered; -1 if none
Tick first_plant_delivery_tick(const sim::EventLog& log);

std::vector<std::uint64_t> seed_range(std::uint64_t base, int n);

} // namespace recplant::bench
