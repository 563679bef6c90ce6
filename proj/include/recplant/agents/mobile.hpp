#pragma once

#include <deque>
#include <string>
#include <vector>

#include "recplant/config/config.hpp"
#include "recplant/core/action.hpp"
#include "recplant/core/rng.hpp"
#include "recplant/core/sensor.hpp"
#include "recplant/dac/adaptive.hpp"
#include "recplant/dac/arbiter.hpp"
#include "recplant/dac/memory.hpp"
#include "recplant/dac/needs.hpp"
#include "recplant/dac/prototype.hpp"
#include "recplant/dac/reflex.hpp"

namespace recplant::agents {

using Tick = std::int64_t;

// Transport robot: full DAC stack over beacon/cue sensing, with a coarse
// metric map (visited cells + cue->heading associations) standing in for a
// learned spatial representation. Navigation knowledge is acquired, never
// given: the only prewired geometry is the painted floor zones.
class MobileRobot {
public:
    MobileRobot(const config::ScenarioConfig& cfg, const config::MobileSpec& spec, Rng rng);

    ActionPrimitive act(const SensorFrame& frame, const std::vector<Event>& events, Tick now);

    const std::string& id() const { return spec_.id; }
    dac::Layer last_layer() const { return last_layer_; }
    bool halted() const { return halted_; }
    void set_halted(bool h) { halted_ = h; }
    const Pose& odom() const { return odom_; }
    const std::string& active_goal() const { return active_goal_; }

    dac::NeedState& needs() { return needs_; }
    const dac::NeedState& needs() const { return needs_; }
    dac::SequenceMemory& ltm() { return ltm_; }
    const dac::SequenceMemory& ltm() const { return ltm_; }
    dac::AssociationMatrix& assoc() { return assoc_; }
    const dac::AssociationMatrix& assoc() const { return assoc_; }
    const dac::PrototypeLayout& layout() const { return layout_; }

    int deliveries_this_tick() const { return deliveries_tick_; }
    const std::string& last_delivery_bench() const { return last_delivery_bench_; }
    std::vector<std::string> hazard_flags() const;

    static constexpr int kHeadingBins = 16;

private:
    void integrate_odometry(const SensorFrame& frame);
    void update_needs(const SensorFrame& frame, Tick now);
    void handle_events(const std::vector<Event>& events, const SensorFrame& frame, Tick now);
    void train_heading_associations(const Vec2& goal_pos);
    ActionPrimitive resolve(const ActionPrimitive& macro, const SensorFrame& frame, Tick now);
    Move steer_towards(double desired_heading, double speed_frac) const;
    const CueHit* find_cue(const SensorFrame& frame, int id) const;
    double explore_score(double heading) const;
    void redraw_explore(Tick now);
    int cell_index(const Vec2& p) const;

    const config::ScenarioConfig& cfg_;
    config::MobileSpec spec_;
    Rng rng_;
    double max_speed_ = 0.05; // m/tick

    Pose odom_;
    dac::NeedState needs_;
    std::vector<dac::Reflex> reflexes_;
    dac::ChannelContext ctx_;
    dac::PrototypeLayout layout_;
    dac::AssociationMatrix assoc_;
    dac::ShortTermMemory stm_;
    dac::SequenceMemory ltm_;
    std::vector<int> full_bin_cue_to_bench_; // cue id -> bench index mapping helpers
    std::vector<char> visited_;
    int visited_count_ = 0;

    dac::Layer last_layer_ = dac::Layer::Explore;
    bool halted_ = false;
    std::string active_goal_;
    std::string carried_origin_;
    int last_cell_ = -1;
    bool cell_changed_ = false;
    double explore_heading_ = 0;
    Tick explore_until_ = 0;
    bool explore_redraw_ = false;
    std::optional<dac::ContextualChoice> cached_contextual_;
    int deliveries_tick_ = 0;
    std::string last_delivery_bench_;
    bool collided_recently_ = false;
    double commanded_v_ = 0;
    int stuck_count_ = 0;
    Tick force_explore_until_ = 0;
    int avoid_dir_ = 0; // latched turn direction while the avoid reflex holds
    Tick avoid_last_ = -10;
    Tick last_progress_ = 0; // last pickup/delivery/goal-cue sighting

    struct Waypoint {
        dac::SensoryPrototype proto;
        Vec2 pos;
    };
    std::deque<Waypoint> window_; // recent cell-transition samples for training
};

} // namespace recplant::agents
