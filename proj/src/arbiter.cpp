#include "recplant/dac/arbiter.hpp"

namespace recplant::dac {

const char* layer_name(Layer l) {
    switch (l) {
    case Layer::Safety: return "safety";
    case Layer::Contextual: return "contextual";
    case Layer::Adaptive: return "adaptive";
    case Layer::Appetitive: return "appetitive";
    case Layer::Explore: return "explore";
    }
    return "?";
}

Arbitration arbitrate(const std::vector<ReflexFiring>& firings,
                      const std::optional<ContextualChoice>& contextual,
                      const std::optional<std::pair<ActionPrimitive, double>>& adaptive,
                      const ActionPrimitive& explore) {
    for (const auto& f : firings)
        if (f.reflex->priority == PriorityClass::Safety)
            return {f.reflex->response, Layer::Safety};

    if (contextual) return {contextual->action, Layer::Contextual};
    if (adaptive) return {adaptive->first, Layer::Adaptive};

    const ReflexFiring* best = nullptr;
    for (const auto& f : firings) {
        if (f.reflex->priority != PriorityClass::Appetitive) continue;
        if (!best || f.drive > best->drive) best = &f; // ties keep declaration order
    }
    if (best) return {best->reflex->response, Layer::Appetitive};

    return {explore, Layer::Explore};
}

} // namespace recplant::dac
