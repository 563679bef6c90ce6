#pragma once

#include <string>
#include <vector>

#include "recplant/core/action.hpp"
#include "recplant/core/sensor.hpp"
#include "recplant/dac/needs.hpp"

namespace recplant::dac {

enum class PriorityClass : int { Safety = 0, Appetitive = 1, Default = 2 };

// Channels a reflex trigger can read. Cue/worker ranges are infinity when
// nothing of that kind is visible.
enum class Channel {
    MinRay,          // smallest proximity ray
    FrontRay,        // the 0-bearing ray
    NearestWorker,   // range to the nearest worker cue
    NearestFullBin,  // range to the nearest full-bin cue
    Battery,
    Loaded,          // 0/1
    HoldingComponent,// 0/1 (mirrors endo.loaded for grippers)
    Pressure,
    NeedDrive,       // drive of the need named in `need`
    MaxTransportDrive,
};

enum class Cmp { Lt, Le, Gt, Ge };

struct Trigger {
    Channel channel = Channel::MinRay;
    Cmp cmp = Cmp::Lt;
    double threshold = 0.0;
    std::string need; // for Channel::NeedDrive
};

struct Reflex {
    std::string name;
    Trigger trigger;
    ActionPrimitive response;
    PriorityClass priority = PriorityClass::Default;
    std::string need; // drive used to rank appetitive firings (optional)
};

struct ReflexFiring {
    const Reflex* reflex = nullptr;
    int order = 0;       // declaration order
    double drive = 0.0;  // drive of the associated need at firing time
};

// Evaluation context supplied by the embodiment: which cue ids count as
// workers / full-bin markers.
struct ChannelContext {
    std::vector<int> worker_cues;
    std::vector<int> full_bin_cues;
};

double channel_value(Channel ch, const Trigger& t, const SensorFrame& frame,
                     const NeedState& needs, const ChannelContext& ctx);

// All reflexes whose predicate holds, sorted by (priority class, declaration
// order). Safety firings outrank every other layer downstream.
std::vector<ReflexFiring> reactive_evaluate(const std::vector<Reflex>& reflexes,
                                            const SensorFrame& frame, const NeedState& needs,
                                            const ChannelContext& ctx);

} // namespace recplant::dac
