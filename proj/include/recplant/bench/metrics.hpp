#pragma once

#include <string>
#include <vector>

#include "recplant/config/config.hpp"
#include "recplant/sim/eventlog.hpp"

namespace recplant::bench {

using Tick = std::int64_t;

struct PhaseMetrics {
    std::string name; // early | middle | late
    double occupancy = 0;
    double mean_traj_len = 0; // m per delivery
    double collection_rate = 0;
    int deliveries = 0;
    Tick ticks = 0;
};

struct RunMetrics {
    Tick ticks = 0;
    int deliveries = 0;
    double occupancy = 0;         // visited free cells / total free cells
    double mean_traj_len = 0;     // m per delivery (robot path length)
    double collection_rate = 0;   // deliveries per 1000 ticks
    int near_miss = 0;            // robot pair-ticks with center distance < d_near
    int collisions = 0;
    double service_entropy = 0;   // normalized, 0 when undefined
    bool entropy_defined = false;
    double adaptation_error = 0;  // sum over ticks of |standoff - D(trust)| (m*ticks)
    bool degenerate = false;      // no completed episodes
    std::vector<PhaseMetrics> phases;
};

struct MetricsOptions {
    double d_near = 0.8;
    bool phase_slices = false; // split episodes into early/middle/late thirds
};

// Pure function of the log (plus the static scenario in its header):
// recomputable by replay at any time.
RunMetrics compute_metrics(const sim::EventLog& log, const config::ScenarioConfig& cfg,
                           const MetricsOptions& opts = {});

// parse the config embedded in the log header, then compute
RunMetrics replay_metrics(const sim::EventLog& log, const MetricsOptions& opts = {});

std::string metrics_csv_header();
std::string metrics_csv_row(const std::string& label, std::uint64_t seed, const RunMetrics& m);

} // namespace recplant::bench
