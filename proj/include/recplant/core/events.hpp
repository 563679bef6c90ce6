#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace recplant {

using Tick = std::int64_t;

// Flat event record: one line in the log. Only the fields relevant to `kind`
// are populated; empty strings / -1 / 0 mean "not set".
struct Event {
    Tick tick = 0;
    std::string kind;
    std::string agent;
    std::string bench;
    std::string bin;
    std::string material;
    std::string model;
    std::string worker;
    std::string gesture;
    std::string outcome;
    std::string extra;
    int component = -1;
    double value = 0.0;
    double dx = 0.0, dy = 0.0, dphi = 0.0; // observed pose change (step results)
};

namespace event_kind {
inline constexpr const char* kCollision = "collision";
inline constexpr const char* kDelivery = "delivery";
inline constexpr const char* kStepResult = "step_result";
inline constexpr const char* kDiscomfort = "discomfort";
inline constexpr const char* kLift = "lift";
inline constexpr const char* kPlace = "place";
inline constexpr const char* kFault = "fault";
inline constexpr const char* kDock = "dock";
inline constexpr const char* kDeviceComplete = "device_complete";
inline constexpr const char* kBinSpawn = "bin_spawn";
inline constexpr const char* kBinFill = "bin_fill";
inline constexpr const char* kGesture = "gesture";
inline constexpr const char* kChargeFull = "charge_full";
inline constexpr const char* kSwap = "swap";
inline constexpr const char* kEStop = "estop";
inline constexpr const char* kRelease = "release";
inline constexpr const char* kAssign = "assign";
} // namespace event_kind

} // namespace recplant
