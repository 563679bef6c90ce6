#pragma once

#include <string>
#include <vector>

#include "recplant/core/geometry.hpp"
#include "recplant/world/types.hpp"

namespace recplant::world {

// Static plant floor: bounds, obstacles, benches, zones, conveyor, landmarks.
// Validated at load (geometry sanity + bench reachability by flood fill).
struct ArenaMap {
    double width = 10.0;
    double height = 8.0;
    double cell_size = 0.5;

    std::vector<Rect> obstacles;
    std::vector<BenchSpec> benches;
    Rect sorting_zone;
    Rect home_zone;
    Rect charge_zone;
    Conveyor conveyor;
    std::vector<Landmark> landmarks;

    int home_beacon_cue = 0;   // omnidirectional, never occluded
    int charge_beacon_cue = 1;

    int cols() const { return static_cast<int>(width / cell_size + 0.5); }
    int rows() const { return static_cast<int>(height / cell_size + 0.5); }
    int cell_of(const Vec2& p) const;
    bool cell_free(int cx, int cy) const; // not inside any obstacle/bench
    int free_cell_count() const;

    const BenchSpec* bench(const std::string& id) const;

    // walls + obstacle edges + bench edges, for ray casting and collision
    const std::vector<Segment>& collision_segments() const { return segments_; }

    // Derives bench footprints/slots/cues and collision segments; returns all
    // validation problems (empty = ok).
    std::vector<std::string> finalize();

private:
    std::vector<std::string> validate_reachability() const;
    std::vector<Segment> segments_;
};

} // namespace recplant::world
