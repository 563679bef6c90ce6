#pragma once

#include <string>
#include <vector>

#include "recplant/core/sensor.hpp"
#include "recplant/dac/memory.hpp"

namespace recplant::agents {

// Fill the six slots from the tick context. Who = nearest visible worker cue
// (ties broken toward the lower cue id), or none.
dac::H5WTuple h5w_annotate(const SensorFrame& frame, const std::vector<int>& worker_cues,
                           const std::string& what, const std::string& where, dac::Tick when,
                           const std::string& why, const std::string& how);

} // namespace recplant::agents
