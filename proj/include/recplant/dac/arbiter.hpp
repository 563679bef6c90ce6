#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recplant/core/action.hpp"
#include "recplant/dac/adaptive.hpp"
#include "recplant/dac/memory.hpp"
#include "recplant/dac/reflex.hpp"

namespace recplant::dac {

enum class Layer { Safety, Contextual, Adaptive, Appetitive, Explore };

const char* layer_name(Layer l);

struct Arbitration {
    ActionPrimitive action;
    Layer layer = Layer::Explore;
};

// Strict layer precedence: safety reflex > contextual proposal (already
// thresholded) > adaptive proposal (already thresholded) > appetitive reflex
// of max drive > the caller-supplied explore action.
Arbitration arbitrate(const std::vector<ReflexFiring>& firings,
                      const std::optional<ContextualChoice>& contextual,
                      const std::optional<std::pair<ActionPrimitive, double>>& adaptive,
                      const ActionPrimitive& explore);

} // namespace recplant::dac
