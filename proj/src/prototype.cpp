#include "recplant/dac/prototype.hpp"

#include <algorithm>
#include <cmath>

#include "recplant/core/geometry.hpp"

namespace recplant::dac {

double SensoryPrototype::norm() const {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

bool SensoryPrototype::is_zero() const {
    for (double x : v)
        if (x != 0.0) return false;
    return true;
}

double cosine(const SensoryPrototype& a, const SensoryPrototype& b) {
    if (a.v.size() != b.v.size()) return 0.0;
    double na = a.norm(), nb = b.norm();
    if (na <= 0 || nb <= 0) return 0.0; // zero prototypes match nothing
    double d = 0;
    for (std::size_t i = 0; i < a.v.size(); ++i) d += a.v[i] * b.v[i];
    return d / (na * nb);
}

SensoryPrototype prototype_encode(const SensorFrame& frame, const PrototypeLayout& layout,
                                  std::span<const double> extras) {
    if (static_cast<int>(frame.proximity.size()) != layout.n_rays)
        throw ConfigurationError("prototype layout expects " + std::to_string(layout.n_rays) +
                                 " rays, frame has " + std::to_string(frame.proximity.size()));
    if (static_cast<int>(extras.size()) != layout.n_extras)
        throw ConfigurationError("prototype layout expects " + std::to_string(layout.n_extras) +
                                 " extra features, got " + std::to_string(extras.size()));

    SensoryPrototype p;
    p.v.assign(layout.dim(), 0.0);
    int off = 0;

    double max_range = frame.max_range > 0 ? frame.max_range : 1.0;
    for (int i = 0; i < layout.n_rays; ++i)
        p.v[off + i] = layout.ray_weight * frame.proximity[i] / max_range;
    off += layout.n_rays;

    const int bins = layout.bearing_bins;
    for (const auto& cue : frame.cues) {
        auto it = std::lower_bound(layout.cue_ids.begin(), layout.cue_ids.end(), cue.cue);
        if (it != layout.cue_ids.end() && *it == cue.cue) {
            int idx = static_cast<int>(it - layout.cue_ids.begin());
            double allo = wrap_angle(frame.heading + cue.bearing);
            int bin = static_cast<int>((allo + kPi) / (2.0 * kPi) * bins);
            bin = std::clamp(bin, 0, bins - 1);
            double w = 0.5 + 0.5 / (1.0 + cue.range);
            double& slot = p.v[off + idx * bins + bin];
            slot = std::max(slot, w);
        }
        auto wit = std::lower_bound(layout.worker_cues.begin(), layout.worker_cues.end(), cue.cue);
        if (wit != layout.worker_cues.end() && *wit == cue.cue) {
            int widx = static_cast<int>(wit - layout.worker_cues.begin());
            p.v[off + static_cast<int>(layout.cue_ids.size()) * bins + widx] = 1.0;
        }
    }
    off += static_cast<int>(layout.cue_ids.size()) * bins +
           static_cast<int>(layout.worker_cues.size());

    p.v[off + 0] = layout.scalar_weight * frame.endo.battery;
    p.v[off + 1] = layout.scalar_weight * (frame.endo.loaded ? 1.0 : 0.0);
    p.v[off + 2] = layout.scalar_weight * frame.endo.pressure;
    p.v[off + 3] = layout.scalar_weight * frame.endo.torque;
    off += PrototypeLayout::kScalars;

    for (int i = 0; i < layout.n_extras; ++i) p.v[off + i] = extras[i];

    double n = p.norm();
    if (n > 0)
        for (double& x : p.v) x /= n;
    return p;
}

} // namespace recplant::dac
