#include "recplant/agents/worker.hpp"

#include <algorithm>
#include <cmath>

namespace recplant::agents {

WorkerProxy::WorkerProxy(const config::WorkerProfile& profile, const config::AgentTuning& tuning,
                         Rng rng)
    : profile_(profile), tuning_(tuning), rng_(rng) {
    std::sort(profile_.gestures.begin(), profile_.gestures.end(),
              [](const config::GestureCue& a, const config::GestureCue& b) {
                  return a.tick < b.tick;
              });
}

double WorkerProxy::preferred_distance() const {
    return tuning_.d_min + (1.0 - profile_.trust) * (tuning_.d_max - tuning_.d_min);
}

void WorkerProxy::bind_bench(const std::string& bench, const Pose& bench_pose) {
    bench_ = bench;
    waypoints_.clear();
    const int n = 6;
    double phase = rng_.uniform(0, 2 * kPi);
    for (int i = 0; i < n; ++i) {
        double a = phase + 2 * kPi * i / n;
        waypoints_.push_back(Vec2{bench_pose.x + tuning_.worker_loop_radius * std::cos(a),
                                  bench_pose.y + tuning_.worker_loop_radius * std::sin(a)});
    }
    waypoint_ = 0;
}

WorkerStep WorkerProxy::step(const Pose& own_pose, double gripper_standoff,
                             const std::string& gripper_id, Tick now) {
    WorkerStep out;
    out.action = Idle{};

    if (gripper_standoff >= 0) {
        double d_pref = preferred_distance();
        if (gripper_standoff < d_pref) {
            Event e;
            e.tick = now;
            e.kind = event_kind::kDiscomfort;
            e.worker = profile_.id;
            e.bench = bench_;
            e.agent = gripper_id;
            e.value = (d_pref - gripper_standoff) / tuning_.discomfort_unit;
            out.emitted.push_back(e);
        }
    }

    if (next_gesture_ < profile_.gestures.size() &&
        profile_.gestures[next_gesture_].tick <= now) {
        EmitGesture g;
        g.gesture = profile_.gestures[next_gesture_].gesture;
        ++next_gesture_;
        out.action = g;
        return out;
    }

    if (waypoints_.empty()) return out;
    Vec2 target = waypoints_[waypoint_];
    Vec2 d = target - own_pose.position();
    double dist = d.norm();
    double speed = profile_.pace * tuning_.worker_speed_mps * config::ScenarioConfig::kDt;
    if (dist < std::max(0.05, speed)) {
        waypoint_ = (waypoint_ + 1) % waypoints_.size();
        target = waypoints_[waypoint_];
        d = target - own_pose.position();
        dist = d.norm();
    }
    if (speed <= 0 || dist <= 1e-9) return out;
    double desired = std::atan2(d.y, d.x);
    double turn = wrap_angle(desired - own_pose.heading);
    Move mv;
    mv.omega = std::clamp(turn, -0.3, 0.3);
    mv.v = std::abs(turn) < 0.8 ? std::min(speed, dist) : 0.0;
    out.action = mv;
    return out;
}

} // namespace recplant::agents
