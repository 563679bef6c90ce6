#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "recplant/config/config.hpp"
#include "recplant/core/action.hpp"
#include "recplant/core/rng.hpp"
#include "recplant/core/sensor.hpp"
#include "recplant/dac/adaptive.hpp"
#include "recplant/dac/affordance.hpp"
#include "recplant/dac/arbiter.hpp"
#include "recplant/dac/memory.hpp"
#include "recplant/dac/needs.hpp"
#include "recplant/dac/prototype.hpp"
#include "recplant/dac/reflex.hpp"
#include "recplant/world/types.hpp"

namespace recplant::agents {

using Tick = std::int64_t;

// what the gripper can observe about its own bench
struct GripperView {
    bool docked = false;
    std::string model_id;
    const world::DeviceModel* model = nullptr;
    std::array<bool, 4> removed{false, false, false, false};
    int staged = -1;
    int placed = 0;
    double standoff = 1.0;
    std::array<bool, 4> bin_space{true, true, true, true};
    int queue = 0;
    int full_bins = 0;
};

// Disassembly arm: operant learning of the hidden component order, standoff
// regulation between task pressure and worker discomfort, and gesture-latched
// command handling.
class Gripper {
public:
    Gripper(const config::ScenarioConfig& cfg, const config::GripperSpec& spec, Rng rng);

    ActionPrimitive act(const SensorFrame& frame, const GripperView& view,
                        const std::vector<Event>& events, Tick now);

    const std::string& id() const { return spec_.id; }
    const std::string& bench() const { return spec_.bench; }
    dac::Layer last_layer() const { return last_layer_; }
    bool halted() const { return halted_; }
    void set_halted(bool h) { halted_ = h; }
    bool command_stopped() const { return stopped_; }

    dac::NeedState& needs() { return needs_; }
    const dac::NeedState& needs() const { return needs_; }
    dac::SequenceMemory& ltm() { return ltm_; }
    const dac::SequenceMemory& ltm() const { return ltm_; }
    dac::AssociationMatrix& assoc() { return assoc_; }
    const dac::AssociationMatrix& assoc() const { return assoc_; }
    dac::AffordanceField& affordance() { return affordance_; }
    const dac::PrototypeLayout& layout() const { return layout_; }
    std::optional<int> current_worker() const { return current_worker_; }

    // wipe all learned state (naive baseline for the generalization bench)
    void reset_memory();

    static constexpr int kHoldOffRow = 0;

private:
    std::vector<double> extras(const GripperView& view) const;
    void update_needs(const SensorFrame& frame, const GripperView& view, Tick now);
    void handle_events(const std::vector<Event>& events, const GripperView& view,
                       const SensorFrame& frame, Tick now);
    int next_candidate(const GripperView& view) const;

    const config::ScenarioConfig& cfg_;
    config::GripperSpec spec_;
    Rng rng_;

    dac::NeedState needs_;
    std::vector<dac::Reflex> reflexes_;
    dac::ChannelContext ctx_;
    dac::PrototypeLayout layout_;
    dac::AssociationMatrix assoc_;
    dac::ShortTermMemory stm_;
    dac::SequenceMemory ltm_;
    dac::AffordanceField affordance_;

    dac::Layer last_layer_ = dac::Layer::Explore;
    bool halted_ = false;
    bool stopped_ = false; // gesture latch
    bool resting_ = false;
    double work_rate_ = 1.0;
    Tick work_until_ = 0;
    std::set<int> tried_;
    struct PendingAttempt {
        int component = -1;
        dac::SensoryPrototype proto;
        double velocity = 0;
    };
    std::optional<PendingAttempt> pending_;
    std::optional<int> current_worker_;
    std::optional<int> adapted_worker_;
    double discomfort_ema_ = 0.0;
    double retreat_accum_ = 0.0;
    dac::SensoryPrototype last_proto_;
};

} // namespace recplant::agents
