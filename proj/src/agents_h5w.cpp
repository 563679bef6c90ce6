#include "recplant/agents/h5w.hpp"

#include <algorithm>

namespace recplant::agents {

dac::H5WTuple h5w_annotate(const SensorFrame& frame, const std::vector<int>& worker_cues,
                           const std::string& what, const std::string& where, dac::Tick when,
                           const std::string& why, const std::string& how) {
    dac::H5WTuple t;
    t.what = what;
    t.where = where;
    t.when = when;
    t.why = why;
    t.how = how;
    double best_range = 0;
    for (const auto& cue : frame.cues) {
        bool is_worker = std::find(worker_cues.begin(), worker_cues.end(), cue.cue) !=
                         worker_cues.end();
        if (!is_worker) continue;
        if (!t.who || cue.range < best_range ||
            (cue.range == best_range && cue.cue < *t.who)) {
            t.who = cue.cue;
            best_range = cue.range;
        }
    }
    return t;
}

} // namespace recplant::agents
