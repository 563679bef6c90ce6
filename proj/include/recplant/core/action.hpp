#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace recplant {

// ── Actuator-level primitives (accepted by world::step) ──

struct Idle {};
// forward speed in m/tick, turn rate in rad/tick
struct Move {
    double v = 0.0;
    double omega = 0.0;
};
struct Lift {};          // lift the nearest full bin within reach
struct Place {};         // put the carried bin down at the current position
struct DisassembleStep { // attempt to remove one component at the bound bench
    int component = 0;
    double velocity = 0.0;
    double pressure = 0.0;
};
struct PlaceComponent {}; // drop the held component into its material bin
struct Standoff {         // gripper working-distance actuation
    double delta = 0.0;   // relative change in m (ignored when absolute)
    bool absolute = false;
    double target = 0.0;
};
struct EmitGesture {
    int worker = -1; // worker index filled by the runner
    std::string gesture;
};

// ── Macro responses (resolved by the embodiment before reaching the world) ──

struct Stop {};
struct AvoidObstacle {
    int dir = 1; // +1 turn left, -1 turn right
};
struct SeekCharge {};
struct ServiceBench {
    std::string bench;
};
struct DeliverBin {};
struct OrientCue {
    int cue = -1;
};
struct SetHeading {
    double theta = 0.0; // allocentric
};
struct Explore {};
struct AttemptNext {};  // gripper: try the next untried component index
struct RetreatStandoff {};

using ActionPrimitive =
    std::variant<Idle, Move, Lift, Place, DisassembleStep, PlaceComponent, Standoff, EmitGesture,
                 Stop, AvoidObstacle, SeekCharge, ServiceBench, DeliverBin, OrientCue, SetHeading,
                 Explore, AttemptNext, RetreatStandoff>;

const char* action_name(const ActionPrimitive& a);

// true if the world can execute it directly (no macro resolution needed)
bool is_actuator_level(const ActionPrimitive& a);

} // namespace recplant
