#pragma once

#include <string>
#include <vector>

#include "recplant/core/action.hpp"
#include "recplant/core/events.hpp"
#include "recplant/core/geometry.hpp"
#include "recplant/core/rng.hpp"
#include "recplant/config/config.hpp"

namespace recplant::agents {

using Tick = std::int64_t;

struct WorkerStep {
    ActionPrimitive action;
    std::vector<Event> emitted; // discomfort / scripted gesture records
};

// Balancing-robot stand-in for a human worker: waypoint loop around its bench,
// scripted gestures, and discomfort emission when the gripper tool-point
// crosses the trust-derived preferred distance.
class WorkerProxy {
public:
    WorkerProxy(const config::WorkerProfile& profile, const config::AgentTuning& tuning,
                Rng rng);

    // preferred standoff D(trust) = d_min + (1-trust)(d_max-d_min)
    double preferred_distance() const;

    void bind_bench(const std::string& bench, const Pose& bench_pose);
    const std::string& bench() const { return bench_; }
    const config::WorkerProfile& profile() const { return profile_; }

    // gripper_standoff < 0 means no gripper at this bench
    WorkerStep step(const Pose& own_pose, double gripper_standoff,
                    const std::string& gripper_id, Tick now);

private:
    config::WorkerProfile profile_;
    const config::AgentTuning& tuning_;
    Rng rng_;
    std::string bench_;
    std::vector<Vec2> waypoints_;
    std::size_t waypoint_ = 0;
    std::size_t next_gesture_ = 0;
};

} // namespace recplant::agents
