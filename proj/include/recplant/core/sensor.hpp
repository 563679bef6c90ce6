#pragma once

#include <string>
#include <vector>

namespace recplant {

struct CueHit {
    int cue = -1;       // registry id
    double bearing = 0; // rad, egocentric, within the FOV half-angle
    double range = 0;   // m
};

struct GestureEvent {
    std::string worker;
    std::string gesture;
};

struct Endosensing {
    double battery = 1.0; // in [0,1]
    bool loaded = false;  // carrying a bin / holding a component
    double pressure = 0.0;
    double torque = 0.0;
};

// Everything an agent can sense in one tick.
struct SensorFrame {
    std::vector<double> proximity;   // K ray ranges, clamped to max range
    double max_range = 3.0;
    std::vector<CueHit> cues;
    double encoder_dforward = 0.0;   // m since last tick
    double encoder_dheading = 0.0;   // rad since last tick
    Endosensing endo;
    std::vector<GestureEvent> gestures;
    double heading = 0.0;            // odometric heading (for allocentric features)
};

} // namespace recplant
