#include "recplant/dac/reflex.hpp"

#include <algorithm>
#include <limits>

namespace recplant::dac {

static double nearest_cue_range(const SensorFrame& frame, const std::vector<int>& ids) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : frame.cues) {
        for (int id : ids)
            if (c.cue == id) best = std::min(best, c.range);
    }
    return best;
}

double channel_value(Channel ch, const Trigger& t, const SensorFrame& frame,
                     const NeedState& needs, const ChannelContext& ctx) {
    switch (ch) {
    case Channel::MinRay: {
        double m = frame.max_range;
        for (double r : frame.proximity) m = std::min(m, r);
        return m;
    }
    case Channel::FrontRay: {
        // the forward fan: bearing 0 sits at index K/2; take the quarter-FOV
        // neighborhood so contacts off the center line are still seen
        const std::size_t k = frame.proximity.size();
        if (k == 0) return frame.max_range;
        double m = frame.proximity[k / 2];
        std::size_t span = std::max<std::size_t>(1, k / 4);
        for (std::size_t i = k / 2 >= span ? k / 2 - span : 0;
             i <= std::min(k - 1, k / 2 + span); ++i)
            m = std::min(m, frame.proximity[i]);
        return m;
    }
    case Channel::NearestWorker:
        return nearest_cue_range(frame, ctx.worker_cues);
    case Channel::NearestFullBin:
        return nearest_cue_range(frame, ctx.full_bin_cues);
    case Channel::Battery:
        return frame.endo.battery;
    case Channel::Loaded:
    case Channel::HoldingComponent:
        return frame.endo.loaded ? 1.0 : 0.0;
    case Channel::Pressure:
        return frame.endo.pressure;
    case Channel::NeedDrive:
        return needs.has(t.need) ? needs.drive(t.need) : 0.0;
    case Channel::MaxTransportDrive: {
        double best = 0.0;
        for (const auto& [id, n] : needs.all())
            if (id.rfind("transport:", 0) == 0) best = std::max(best, n.drive());
        return best;
    }
    }
    return 0.0;
}

static bool holds(Cmp cmp, double v, double thr) {
    switch (cmp) {
    case Cmp::Lt: return v < thr;
    case Cmp::Le: return v <= thr;
    case Cmp::Gt: return v > thr;
    case Cmp::Ge: return v >= thr;
    }
    return false;
}

std::vector<ReflexFiring> reactive_evaluate(const std::vector<Reflex>& reflexes,
                                            const SensorFrame& frame, const NeedState& needs,
                                            const ChannelContext& ctx) {
    std::vector<ReflexFiring> out;
    for (int i = 0; i < static_cast<int>(reflexes.size()); ++i) {
        const Reflex& r = reflexes[i];
        double v = channel_value(r.trigger.channel, r.trigger, frame, needs, ctx);
        if (!holds(r.trigger.cmp, v, r.trigger.threshold)) continue;
        ReflexFiring f;
        f.reflex = &r;
        f.order = i;
        f.drive = (!r.need.empty() && needs.has(r.need)) ? needs.drive(r.need) : 0.0;
        out.push_back(f);
    }
    std::stable_sort(out.begin(), out.end(), [](const ReflexFiring& a, const ReflexFiring& b) {
        if (a.reflex->priority != b.reflex->priority)
            return static_cast<int>(a.reflex->priority) < static_cast<int>(b.reflex->priority);
        return a.order < b.order;
    });
    return out;
}

} // namespace recplant::dac
