#include "recplant/agents/gripper.hpp"

#include <algorithm>
#include <cmath>

#include "recplant/agents/gesture.hpp"
#include "recplant/agents/h5w.hpp"

namespace recplant::agents {

Gripper::Gripper(const config::ScenarioConfig& cfg, const config::GripperSpec& spec, Rng rng)
    : cfg_(cfg), spec_(spec), rng_(rng), needs_(cfg.dac.modulation_cap),
      stm_(static_cast<std::size_t>(cfg.dac.stm_capacity)), affordance_(0.05) {
    needs_.define("progress", 1.0, 1.0, 1.0);
    needs_.define("comfort", 1.0, 0.9, 1.0);
    needs_.define("safety", 1.0, 1.0, 0.5);

    layout_.n_rays = cfg.world.proximity_rays;
    layout_.bearing_bins = 8;
    layout_.cue_ids = {}; // static arm: spatial cues carry no information
    for (const auto& w : cfg.workers) layout_.worker_cues.push_back(w.cue);
    std::sort(layout_.worker_cues.begin(), layout_.worker_cues.end());
    ctx_.worker_cues = layout_.worker_cues;
    layout_.n_extras = static_cast<int>(cfg.models.size()) + 5 + 6;

    assoc_ = dac::AssociationMatrix(1, layout_.dim(), cfg.dac.eta, cfg.dac.rho, cfg.dac.theta_a);
    dac::MemoryParams mp;
    mp.theta_c = cfg.dac.theta_c;
    mp.gamma = cfg.dac.gamma;
    mp.beta = cfg.dac.beta;
    mp.lambda = cfg.dac.lambda;
    mp.stm_capacity = static_cast<std::size_t>(cfg.dac.stm_capacity);
    mp.ltm_capacity = static_cast<std::size_t>(cfg.dac.ltm_capacity);
    ltm_ = dac::SequenceMemory(mp);

    dac::Reflex guard;
    guard.name = "tool_guard";
    guard.trigger = {dac::Channel::NearestWorker, dac::Cmp::Lt, 0.15, ""};
    guard.response = Stop{};
    guard.priority = dac::PriorityClass::Safety;
    reflexes_.push_back(guard);

    dac::Reflex work;
    work.name = "work_on_device";
    work.trigger = {dac::Channel::NeedDrive, dac::Cmp::Gt, 0.05, "progress"};
    work.response = AttemptNext{};
    work.priority = dac::PriorityClass::Appetitive;
    work.need = "progress";
    reflexes_.push_back(work);
}

void Gripper::reset_memory() {
    ltm_ = dac::SequenceMemory(ltm_.params());
    stm_.clear();
    assoc_ = dac::AssociationMatrix(1, layout_.dim(), cfg_.dac.eta, cfg_.dac.rho,
                                    cfg_.dac.theta_a);
    affordance_ = dac::AffordanceField(affordance_.eta());
    adapted_worker_.reset();
    tried_.clear();
    pending_.reset();
    discomfort_ema_ = 0.0;
}

std::vector<double> Gripper::extras(const GripperView& view) const {
    std::vector<double> x(layout_.n_extras, 0.0);
    int off = 0;
    for (std::size_t m = 0; m < cfg_.models.size(); ++m)
        if (view.docked && cfg_.models[m].id == view.model_id) x[off + static_cast<int>(m)] = 1.0;
    off += static_cast<int>(cfg_.models.size());
    int progress = 0;
    for (bool r : view.removed) progress += r ? 1 : 0;
    x[off + std::clamp(progress, 0, 4)] = 1.0;
    off += 5;
    int bucket = std::clamp(static_cast<int>(view.standoff / 1.6 * 6), 0, 5);
    x[off + bucket] = 1.0;
    return x;
}

void Gripper::update_needs(const SensorFrame& frame, const GripperView& view, Tick now) {
    needs_.set_level("progress", view.docked ? static_cast<double>(view.placed) / 4.0 : 1.0);
    needs_.set_level("comfort", 1.0 - std::min(1.0, discomfort_ema_));
    double worker_range = 2.0;
    for (const auto& cue : frame.cues)
        if (std::binary_search(layout_.worker_cues.begin(), layout_.worker_cues.end(), cue.cue))
            worker_range = std::min(worker_range, cue.range);
    needs_.set_level("safety", std::min(1.0, worker_range / (2.0 * cfg_.tuning.d_stop)));
    needs_.expire(now);
}

void Gripper::handle_events(const std::vector<Event>& events, const GripperView& view,
                            const SensorFrame& frame, Tick now) {
    for (const auto& e : events) {
        if (e.kind == event_kind::kStepResult && e.bench == spec_.bench) {
            if (e.outcome == "success" && pending_ && pending_->component == e.component) {
                dac::MemorySegment seg;
                seg.prototype = pending_->proto;
                const auto& comp = view.model ? view.model->components[e.component]
                                              : world::ComponentSpec{};
                seg.action = DisassembleStep{e.component, comp.velocity_mid(),
                                             comp.pressure_mid()};
                seg.h5w = h5w_annotate(frame, ctx_.worker_cues, e.model, spec_.bench, now,
                                       "disassemble:" + e.model,
                                       "c" + std::to_string(e.component));
                seg.origin = dac::Origin{spec_.id, now};
                stm_.push(seg);
                tried_.clear();
                dac::Contact contact{e.component * kPi / 2.0, pending_->velocity};
                affordance_.update(contact, dac::PoseDelta{e.dx, e.dy, e.dphi});
            } else if (e.outcome == "wrong_order" || e.outcome == "bad_params") {
                tried_.insert(e.component); // punishing outcome, r contribution 0
            }
            pending_.reset();
        } else if (e.kind == event_kind::kDeviceComplete && e.bench == spec_.bench) {
            dac::Origin origin{spec_.id, now};
            ltm_.consolidate(stm_, "disassemble:" + e.model, 1.0, origin, now);
            tried_.clear();
            if (current_worker_) {
                // remember the working distance this worker accepted
                dac::MemorySegment seg;
                seg.prototype = last_proto_;
                Standoff so;
                so.absolute = true;
                so.target = view.standoff;
                seg.action = so;
                seg.h5w = h5w_annotate(frame, ctx_.worker_cues, e.model, spec_.bench, now,
                                       "comfort", "standoff");
                seg.origin = dac::Origin{spec_.id, now};
                stm_.push(seg);
                double score = std::clamp(1.0 - 0.5 * discomfort_ema_, 0.0, 1.0);
                ltm_.consolidate(stm_, "comfort", score, origin, now);
                adapted_worker_ = current_worker_;
            }
        } else if (e.kind == event_kind::kDiscomfort && e.agent == spec_.id) {
            retreat_accum_ += cfg_.tuning.delta_retreat * e.value;
            discomfort_ema_ += 0.02 * (std::min(e.value / 5.0, 1.0) - discomfort_ema_);
            if (!last_proto_.is_zero())
                assoc_.update(last_proto_, kHoldOffRow, std::min(1.0, e.value / 5.0));
        }
    }
    discomfort_ema_ *= 0.999;
}

int Gripper::next_candidate(const GripperView& view) const {
    for (int i = 0; i < 4; ++i)
        if (!view.removed[i] && !tried_.count(i)) return i;
    return -1;
}

ActionPrimitive Gripper::act(const SensorFrame& frame, const GripperView& view,
                             const std::vector<Event>& events, Tick now) {
    // command latch from gestures
    for (const auto& g : frame.gestures) {
        auto cmd = gesture_to_command(g.gesture);
        if (!cmd) continue;
        switch (*cmd) {
        case Command::Stop: stopped_ = true; break;
        case Command::Start:
            stopped_ = false;
            resting_ = false;
            break;
        case Command::RestPosition: resting_ = true; break;
        case Command::SpeedUp: work_rate_ = std::max(0.5, work_rate_ * 0.8); break;
        case Command::SlowDown: work_rate_ = std::min(2.0, work_rate_ * 1.25); break;
        }
    }

    current_worker_.reset();
    double best_range = 0;
    for (const auto& cue : frame.cues) {
        if (!std::binary_search(layout_.worker_cues.begin(), layout_.worker_cues.end(), cue.cue))
            continue;
        if (!current_worker_ || cue.range < best_range ||
            (cue.range == best_range && cue.cue < *current_worker_)) {
            current_worker_ = cue.cue;
            best_range = cue.range;
        }
    }

    update_needs(frame, view, now);
    handle_events(events, view, frame, now);

    auto ex = extras(view);
    dac::SensoryPrototype proto = dac::prototype_encode(frame, layout_, ex);
    last_proto_ = proto;

    if (stopped_) {
        last_layer_ = dac::Layer::Safety;
        ltm_.decay_primes();
        return Idle{};
    }

    auto firings = dac::reactive_evaluate(reflexes_, frame, needs_, ctx_);

    // the standoff servo: task pressure pulls in, discomfort pushes out
    double servo = 0.0;
    bool ready = now >= work_until_;
    if (resting_) {
        servo = std::clamp(cfg_.tuning.rest_standoff - view.standoff, -0.02, 0.02);
    } else {
        if (view.docked && view.standoff > 0.1) servo -= cfg_.tuning.delta_approach;
        servo += retreat_accum_;
    }
    retreat_accum_ = 0.0;

    // contextual goal: a new worker first, then the running disassembly
    std::string goal;
    if (current_worker_ && (!adapted_worker_ || *adapted_worker_ != *current_worker_))
        goal = "comfort";
    else if (view.docked && ready && !resting_)
        goal = "disassemble:" + view.model_id;

    std::optional<dac::ContextualChoice> contextual;
    if (!goal.empty() && !proto.is_zero()) contextual = ltm_.select(proto, goal, now);

    // anticipatory hold-off is only consulted while approaching between steps
    std::optional<std::pair<ActionPrimitive, double>> adaptive;
    if (!ready && !resting_ && view.docked && !proto.is_zero()) {
        if (auto resp = assoc_.respond(proto))
            adaptive = std::make_pair(ActionPrimitive{RetreatStandoff{}}, resp->confidence);
    }

    auto chosen = dac::arbitrate(firings, contextual, adaptive, Standoff{servo, false, 0});
    last_layer_ = chosen.layer;
    ltm_.decay_primes();

    // resolve to an actuator op
    ActionPrimitive action = chosen.action;
    if (std::holds_alternative<Stop>(action)) return Idle{};
    if (std::holds_alternative<RetreatStandoff>(action))
        return Standoff{std::max(servo, 0.0), false, 0}; // pause the approach
    if (const auto* so = std::get_if<Standoff>(&action)) {
        if (so->absolute && current_worker_) adapted_worker_ = current_worker_;
        return action;
    }
    if (const auto* step = std::get_if<DisassembleStep>(&action)) {
        // recalled step: honor pacing and staging
        if (view.staged >= 0) return PlaceComponent{};
        if (!ready || !view.docked) return Standoff{servo, false, 0};
        int comp = step->component;
        if (comp < 0 || comp > 3 || view.removed[comp]) comp = next_candidate(view);
        if (comp < 0) return Standoff{servo, false, 0};
        const auto& spec = view.model->components[comp];
        DisassembleStep out{comp, spec.velocity_mid(), spec.pressure_mid()};
        pending_ = PendingAttempt{comp, proto, out.velocity};
        work_until_ = now + static_cast<Tick>(spec.duration * work_rate_);
        return out;
    }
    if (std::holds_alternative<AttemptNext>(action)) {
        if (view.staged >= 0) return PlaceComponent{};
        if (!ready || !view.docked || resting_) return Standoff{servo, false, 0};
        int comp = next_candidate(view);
        if (comp < 0) {
            tried_.clear(); // every remaining index failed once: search again
            comp = next_candidate(view);
        }
        if (comp < 0) return Standoff{servo, false, 0};
        const auto& spec = view.model->components[comp];
        DisassembleStep out{comp, spec.velocity_mid(), spec.pressure_mid()};
        pending_ = PendingAttempt{comp, proto, out.velocity};
        work_until_ = now + static_cast<Tick>(spec.duration * work_rate_);
        return out;
    }
    if (std::holds_alternative<Explore>(action) || std::holds_alternative<Idle>(action))
        return Standoff{servo, false, 0};
    return action;
}

} // namespace recplant::agents
