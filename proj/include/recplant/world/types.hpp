#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "recplant/core/events.hpp"
#include "recplant/core/geometry.hpp"

namespace recplant::world {

enum class Material : int { Plastic = 0, Metal = 1, Paper = 2, Hazardous = 3 };
constexpr int kMaterialCount = 4;

const char* material_name(Material m);
std::optional<Material> material_from(const std::string& s);

struct ComponentSpec {
    Material material = Material::Plastic;
    std::string tool;
    int duration = 20;           // nominal ticks of work per attempt
    double velocity_lo = 0.2, velocity_hi = 0.6;
    double pressure_lo = 0.3, pressure_hi = 0.7;

    bool params_ok(double v, double p) const {
        return v >= velocity_lo && v <= velocity_hi && p >= pressure_lo && p <= pressure_hi;
    }
    double velocity_mid() const { return 0.5 * (velocity_lo + velocity_hi); }
    double pressure_mid() const { return 0.5 * (pressure_lo + pressure_hi); }
};

// One WEEE model: four components, one per material, plus the hidden
// disassembly order.
struct DeviceModel {
    std::string id;
    std::array<ComponentSpec, 4> components;
    std::array<int, 4> valid_order{0, 1, 2, 3}; // hidden from agents
};

struct DeviceInstance {
    int uid = -1;
    std::string model;
    std::string bench;          // destination / docked bench
    bool docked = false;
    double conveyor_s = 0.0;    // arc length along the belt
    std::array<bool, 4> removed{false, false, false, false};
    int staged = -1;            // removed but not yet binned component index
    int placed = 0;             // components already binned

    int removed_count() const {
        int n = 0;
        for (bool r : removed) n += r ? 1 : 0;
        return n;
    }
};

struct Bin {
    std::string id;
    Material material = Material::Plastic;
    int capacity = 4;
    int fill = 0;
    int cue = -1; // color cue, visible while the bin is full and grounded
    Vec2 pos;
    std::string home_bench;
    std::string carried_by; // robot id, empty when grounded

    bool full() const { return fill >= capacity; }
};

struct BenchSpec {
    std::string id;
    Pose pose;
    int cue = -1; // marker cue id (assigned at load)
    std::array<int, 4> bin_cues{-1, -1, -1, -1};
    Rect body;    // collision footprint
    std::array<Vec2, 4> bin_slots{};
    double conveyor_station = 0.0; // arc length of the docking point
};

struct Landmark {
    int cue = -1;
    Vec2 pos;
};

struct Conveyor {
    std::vector<Vec2> points; // polyline
    double speed = 0.05;      // m/tick
    double length = 0.0;

    Vec2 at(double s) const;
};

struct StepOutcome {
    std::vector<Event> events;
};

enum class StepResult { Success, WrongOrder, BadParams, NoDevice, Busy };
const char* step_result_name(StepResult r);

} // namespace recplant::world
