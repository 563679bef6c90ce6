#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "recplant/core/sensor.hpp"

namespace recplant::dac {

struct ConfigurationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unit-norm feature vector (zero allowed for "no input").
struct SensoryPrototype {
    std::vector<double> v;

    std::size_t dim() const { return v.size(); }
    double norm() const;
    bool is_zero() const;
};

double cosine(const SensoryPrototype& a, const SensoryPrototype& b);

// Deterministic featurization: per-ray normalized range, one value per
// (cue id x allocentric bearing bin) weighted by 1/(1+range), worker-cue
// one-hot, endosensing scalars, then any embodiment extras. L2-normalized.
struct PrototypeLayout {
    int n_rays = 8;
    std::vector<int> cue_ids;     // sorted registry ids featurized per bearing bin
    int bearing_bins = 8;
    std::vector<int> worker_cues; // sorted worker cue ids (one-hot block)
    int n_extras = 0;
    // cue identities discriminate places; raw ranges and body scalars mostly
    // do not, so they enter with reduced weight
    double ray_weight = 0.25;
    double scalar_weight = 0.25;

    static constexpr int kScalars = 4; // battery, loaded, pressure, torque

    int dim() const {
        return n_rays + static_cast<int>(cue_ids.size()) * bearing_bins +
               static_cast<int>(worker_cues.size()) + kScalars + n_extras;
    }
};

SensoryPrototype prototype_encode(const SensorFrame& frame, const PrototypeLayout& layout,
                                  std::span<const double> extras = {});

} // namespace recplant::dac
