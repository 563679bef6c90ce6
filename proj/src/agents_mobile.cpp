#include "recplant/agents/mobile.hpp"

#include <algorithm>
#include <cmath>

#include "recplant/agents/h5w.hpp"

namespace recplant::agents {

namespace {
double heading_of_bin(int bin) { return -kPi + (bin + 0.5) * (2 * kPi / MobileRobot::kHeadingBins); }
int bin_of_heading(double h) {
    int b = static_cast<int>((wrap_angle(h) + kPi) / (2 * kPi) * MobileRobot::kHeadingBins);
    return std::clamp(b, 0, MobileRobot::kHeadingBins - 1);
}
} // namespace

MobileRobot::MobileRobot(const config::ScenarioConfig& cfg, const config::MobileSpec& spec,
                         Rng rng)
    : cfg_(cfg), spec_(spec), rng_(rng), needs_(cfg.dac.modulation_cap),
      stm_(static_cast<std::size_t>(cfg.dac.stm_capacity)) {
    max_speed_ = spec.max_speed_mps * config::ScenarioConfig::kDt;
    odom_ = Pose{spec.x, spec.y, wrap_angle(spec.heading)};

    // somatic layer: needs and their baseline dynamics
    needs_.define("battery", 1.0, 0.75, 1.0);
    needs_.define("clearance", 1.0, 0.6, 0.5);
    needs_.define("deliver", 1.0, 1.0, 2.0);
    for (const auto& b : cfg.arena.benches) needs_.define("transport:" + b.id, 0.2, 0.5, 1.0);

    // prototype layout: rays + allocentric cue features + worker one-hot
    layout_.n_rays = cfg.world.proximity_rays;
    layout_.bearing_bins = 8;
    layout_.cue_ids = {cfg.arena.home_beacon_cue, cfg.arena.charge_beacon_cue};
    for (const auto& b : cfg.arena.benches) {
        layout_.cue_ids.push_back(b.cue);
        for (int m = 0; m < 4; ++m) layout_.cue_ids.push_back(b.bin_cues[m]);
    }
    for (const auto& lm : cfg.arena.landmarks) layout_.cue_ids.push_back(lm.cue);
    std::sort(layout_.cue_ids.begin(), layout_.cue_ids.end());
    for (const auto& w : cfg.workers) layout_.worker_cues.push_back(w.cue);
    std::sort(layout_.worker_cues.begin(), layout_.worker_cues.end());
    ctx_.worker_cues = layout_.worker_cues;
    for (const auto& b : cfg.arena.benches)
        for (int m = 0; m < 4; ++m) ctx_.full_bin_cues.push_back(b.bin_cues[m]);

    assoc_ = dac::AssociationMatrix(kHeadingBins, layout_.dim(), cfg.dac.eta, cfg.dac.rho,
                                    cfg.dac.theta_a);
    dac::MemoryParams mp;
    mp.theta_c = cfg.dac.theta_c;
    mp.gamma = cfg.dac.gamma;
    mp.beta = cfg.dac.beta;
    mp.lambda = cfg.dac.lambda;
    mp.stm_capacity = static_cast<std::size_t>(cfg.dac.stm_capacity);
    mp.ltm_capacity = static_cast<std::size_t>(cfg.dac.ltm_capacity);
    ltm_ = dac::SequenceMemory(mp);

    // reactive layer
    dac::Reflex stop;
    stop.name = "human_stop";
    stop.trigger = {dac::Channel::NearestWorker, dac::Cmp::Lt, cfg.tuning.d_stop, ""};
    stop.response = Stop{};
    stop.priority = dac::PriorityClass::Safety;
    reflexes_.push_back(stop);

    dac::Reflex avoid;
    avoid.name = "obstacle_avoid";
    avoid.trigger = {dac::Channel::FrontRay, dac::Cmp::Lt, cfg.tuning.avoid_range, ""};
    avoid.response = AvoidObstacle{};
    avoid.priority = dac::PriorityClass::Safety;
    reflexes_.push_back(avoid);

    dac::Reflex charge;
    charge.name = "seek_charge";
    charge.trigger = {dac::Channel::NeedDrive, dac::Cmp::Gt, cfg.tuning.battery_low_drive,
                      "battery"};
    charge.response = SeekCharge{};
    charge.priority = dac::PriorityClass::Appetitive;
    charge.need = "battery";
    reflexes_.push_back(charge);

    dac::Reflex deliver;
    deliver.name = "deliver_bin";
    deliver.trigger = {dac::Channel::NeedDrive, dac::Cmp::Gt, 0.5, "deliver"};
    deliver.response = DeliverBin{};
    deliver.priority = dac::PriorityClass::Appetitive;
    deliver.need = "deliver";
    reflexes_.push_back(deliver);

    for (const auto& b : cfg.arena.benches) {
        dac::Reflex service;
        service.name = "service_" + b.id;
        service.trigger = {dac::Channel::NeedDrive, dac::Cmp::Gt, 0.05, "transport:" + b.id};
        service.response = ServiceBench{b.id};
        service.priority = dac::PriorityClass::Appetitive;
        service.need = "transport:" + b.id;
        reflexes_.push_back(service);
    }

    visited_.assign(static_cast<std::size_t>(cfg.arena.cols()) * cfg.arena.rows(), 0);
    explore_heading_ = rng_.uniform(-kPi, kPi);
}

int MobileRobot::cell_index(const Vec2& p) const { return cfg_.arena.cell_of(p); }

void MobileRobot::integrate_odometry(const SensorFrame& frame) {
    odom_.heading = wrap_angle(odom_.heading + frame.encoder_dheading);
    odom_.x += frame.encoder_dforward * std::cos(odom_.heading);
    odom_.y += frame.encoder_dforward * std::sin(odom_.heading);
    // wedged against something the rays missed: commanded motion, none happened
    if (commanded_v_ > 1e-9 && frame.encoder_dforward < 1e-9) ++stuck_count_;
    else if (frame.encoder_dforward > 1e-9) stuck_count_ = 0;
}

void MobileRobot::update_needs(const SensorFrame& frame, Tick now) {
    needs_.set_level("battery", frame.endo.battery);
    double min_ray = frame.max_range;
    for (double r : frame.proximity) min_ray = std::min(min_ray, r);
    needs_.set_level("clearance", frame.max_range > 0 ? min_ray / frame.max_range : 1.0);
    needs_.set_level("deliver", frame.endo.loaded ? 0.0 : 1.0);

    // a bench's transport need relaxes toward zero while unserved and snaps
    // down when a full bin is actually seen
    for (const auto& b : cfg_.arena.benches) {
        std::string need = "transport:" + b.id;
        double level = needs_.level(need) * (1.0 - cfg_.tuning.transport_decay);
        for (const auto& cue : frame.cues)
            for (int m = 0; m < 4; ++m)
                if (cue.cue == b.bin_cues[m]) level = std::min(level, 0.2);
        needs_.set_level(need, level);
    }
    needs_.expire(now);
}

void MobileRobot::handle_events(const std::vector<Event>& events, const SensorFrame& frame,
                                Tick now) {
    deliveries_tick_ = 0;
    for (const auto& e : events) {
        if (e.kind == event_kind::kLift && e.agent == spec_.id) {
            carried_origin_ = e.bench;
            last_progress_ = now;
            // reaching the pickup is the first half of the episode: teach the
            // cue->heading map where collection happened
            train_heading_associations(odom_.position());
        } else if (e.kind == event_kind::kDelivery && e.agent == spec_.id) {
            ++deliveries_tick_;
            last_progress_ = now;
            last_delivery_bench_ = e.bench;
            needs_.set_level("transport:" + e.bench, 1.0);
            dac::Origin origin{spec_.id, now};
            ltm_.consolidate(stm_, "deliver:" + e.bench, 1.0, origin, now);
            window_.clear();
            carried_origin_.clear();
            cached_contextual_.reset();
        } else if (e.kind == event_kind::kChargeFull && e.agent == spec_.id) {
            dac::Origin origin{spec_.id, now};
            ltm_.consolidate(stm_, "charge", 1.0, origin, now);
            window_.clear();
        } else if (e.kind == event_kind::kCollision &&
                   (e.agent == spec_.id || e.extra == spec_.id)) {
            collided_recently_ = true;
        }
    }
    (void)frame;
}

void MobileRobot::train_heading_associations(const Vec2& goal_pos) {
    for (const auto& wp : window_) {
        Vec2 d = goal_pos - wp.pos;
        if (d.norm() < 0.5) continue; // too close to carry directional meaning
        int bin = bin_of_heading(std::atan2(d.y, d.x));
        assoc_.update(wp.proto, bin, 1.0);
    }
}

const CueHit* MobileRobot::find_cue(const SensorFrame& frame, int id) const {
    const CueHit* best = nullptr;
    for (const auto& c : frame.cues)
        if (c.cue == id && (!best || c.range < best->range)) best = &c;
    return best;
}

Move MobileRobot::steer_towards(double desired_heading, double speed_frac) const {
    double err = wrap_angle(desired_heading - odom_.heading);
    Move mv;
    mv.omega = std::clamp(err, -0.3, 0.3);
    double scale = std::abs(err) < 0.6 ? 1.0 : (std::abs(err) < 1.5 ? 0.4 : 0.0);
    mv.v = max_speed_ * speed_frac * scale;
    return mv;
}

double MobileRobot::explore_score(double heading) const {
    // frontier bias: unvisited cells along the ray count quadratically,
    // directions that dead-end immediately stay cheap
    double score = 0.25;
    double reach = 0;
    for (double d = 0.5; d <= 3.0; d += 0.5) {
        Vec2 p{odom_.x + d * std::cos(heading), odom_.y + d * std::sin(heading)};
        if (p.x < 0.3 || p.y < 0.3 || p.x > cfg_.arena.width - 0.3 ||
            p.y > cfg_.arena.height - 0.3)
            break;
        int c = cell_index(p);
        int cx = c % cfg_.arena.cols(), cy = c / cfg_.arena.cols();
        if (!cfg_.arena.cell_free(cx, cy)) break;
        reach = d;
        if (!visited_[c]) score += 2.0;
    }
    score += reach * 0.5;
    return score * score;
}

void MobileRobot::redraw_explore(Tick now) {
    double weights[kHeadingBins];
    double total = 0;
    for (int b = 0; b < kHeadingBins; ++b) {
        weights[b] = explore_score(heading_of_bin(b));
        total += weights[b];
    }
    double u = rng_.uniform(0, total);
    int chosen = 0;
    for (int b = 0; b < kHeadingBins; ++b) {
        if (u < weights[b]) {
            chosen = b;
            break;
        }
        u -= weights[b];
        chosen = b;
    }
    explore_heading_ = heading_of_bin(chosen);
    explore_until_ = now + cfg_.tuning.explore_hold;
    explore_redraw_ = false;
}

ActionPrimitive MobileRobot::resolve(const ActionPrimitive& macro, const SensorFrame& frame,
                                     Tick now) {
    (void)now;
    if (std::holds_alternative<Stop>(macro)) return Move{0, 0};
    if (std::holds_alternative<Idle>(macro)) return Idle{};
    if (std::holds_alternative<Move>(macro)) return macro;
    if (std::holds_alternative<Lift>(macro) || std::holds_alternative<Place>(macro)) return macro;

    if (std::holds_alternative<AvoidObstacle>(macro)) {
        // latch a turn direction while the reflex keeps firing; re-deciding
        // every tick oscillates in corner pockets
        if (now - avoid_last_ > 3) {
            double left = 0, right = 0;
            const std::size_t k = frame.proximity.size();
            for (std::size_t i = 0; i < k; ++i) {
                if (i < k / 2) right += frame.proximity[i];
                else left += frame.proximity[i];
            }
            avoid_dir_ = left >= right ? 1 : -1;
        }
        avoid_last_ = now;
        double front = frame.max_range;
        const std::size_t k = frame.proximity.size();
        for (std::size_t i = k / 4; i < k && i <= 3 * k / 4; ++i)
            front = std::min(front, frame.proximity[i]);
        Move mv;
        mv.omega = 0.3 * avoid_dir_;
        mv.v = front < 0.38 ? 0.0 : 0.3 * max_speed_; // rotate in place when boxed in
        explore_redraw_ = true;
        return mv;
    }
    if (now < force_explore_until_ && !std::holds_alternative<Explore>(macro) &&
        !std::holds_alternative<AvoidObstacle>(macro))
        return steer_towards(explore_heading_, 0.8);
    if (const auto* sh = std::get_if<SetHeading>(&macro)) return steer_towards(sh->theta, 1.0);
    if (const auto* oc = std::get_if<OrientCue>(&macro)) {
        const CueHit* cue = find_cue(frame, oc->cue);
        if (!cue) return resolve(Explore{}, frame, now);
        return steer_towards(odom_.heading + cue->bearing, 1.0);
    }
    if (std::holds_alternative<DeliverBin>(macro)) {
        if (cfg_.arena.sorting_zone.contains(odom_.position())) return Place{};
        const CueHit* home = find_cue(frame, cfg_.arena.home_beacon_cue);
        if (home) return steer_towards(odom_.heading + home->bearing, 1.0);
        return resolve(Explore{}, frame, now);
    }
    if (std::holds_alternative<SeekCharge>(macro)) {
        if (cfg_.arena.charge_zone.contains(odom_.position())) return Move{0, 0};
        const CueHit* cz = find_cue(frame, cfg_.arena.charge_beacon_cue);
        if (cz) return steer_towards(odom_.heading + cz->bearing, 1.0);
        return resolve(Explore{}, frame, now);
    }
    if (const auto* sb = std::get_if<ServiceBench>(&macro)) {
        const world::BenchSpec* bench = cfg_.arena.bench(sb->bench);
        if (bench) {
            const CueHit* best_bin = nullptr;
            for (int m = 0; m < 4; ++m) {
                const CueHit* c = find_cue(frame, bench->bin_cues[m]);
                if (c && (!best_bin || c->range < best_bin->range)) best_bin = c;
            }
            if (best_bin) {
                if (best_bin->range <= cfg_.world.lift_reach - 0.05) return Lift{};
                return steer_towards(odom_.heading + best_bin->bearing, 1.0);
            }
            const CueHit* marker = find_cue(frame, bench->cue);
            if (marker) return steer_towards(odom_.heading + marker->bearing, 1.0);
        }
        return resolve(Explore{}, frame, now);
    }
    // Explore: seeded random walk biased toward unvisited space
    return steer_towards(explore_heading_, 0.8);
}

ActionPrimitive MobileRobot::act(const SensorFrame& frame, const std::vector<Event>& events,
                                 Tick now) {
    integrate_odometry(frame);
    int cell = cell_index(odom_.position());
    cell_changed_ = cell != last_cell_;
    if (cell_changed_) {
        last_cell_ = cell;
        if (!visited_[cell]) {
            visited_[cell] = 1;
            ++visited_count_;
        }
    }

    update_needs(frame, now);
    handle_events(events, frame, now);

    dac::SensoryPrototype proto = dac::prototype_encode(frame, layout_);

    auto firings = dac::reactive_evaluate(reflexes_, frame, needs_, ctx_);

    // goal for the contextual layer: charging dominates, then the episode goal
    std::string goal;
    if (needs_.drive("battery") > cfg_.tuning.battery_low_drive) {
        goal = "charge";
    } else if (frame.endo.loaded && !carried_origin_.empty()) {
        goal = "deliver:" + carried_origin_;
    } else {
        std::string best;
        double best_d = 0.05;
        for (const auto& b : cfg_.arena.benches) {
            double d = needs_.drive("transport:" + b.id);
            if (d > best_d) {
                best_d = d;
                best = b.id;
            }
        }
        if (!best.empty()) goal = "deliver:" + best;
    }
    if (goal != active_goal_) {
        active_goal_ = goal;
        cached_contextual_.reset();
    }

    // Learned layers steer the search; once the goal object is in plain view
    // (a full bin ahead, or standing in the sorting zone with a load) the
    // reactive approach/consume responses take over.
    bool full_bin_visible = false;
    for (const auto& b : cfg_.arena.benches)
        for (int m = 0; m < 4; ++m)
            if (find_cue(frame, b.bin_cues[m])) full_bin_visible = true;
    bool consummatory = (!frame.endo.loaded && full_bin_visible) ||
                        (frame.endo.loaded &&
                         cfg_.arena.sorting_zone.contains(odom_.position()));
    if (full_bin_visible) last_progress_ = now;

    // learned guidance that leads nowhere for this long gets abandoned for a
    // stretch of plain search
    if (now - last_progress_ > 1500) {
        force_explore_until_ = now + 500;
        explore_redraw_ = true;
        last_progress_ = now;
    }

    // Route memory holds outbound experience; the loaded return leg runs on
    // the home beacon, so only unloaded states query it.
    if ((cell_changed_ || !cached_contextual_) && !goal.empty() && !proto.is_zero() &&
        !frame.endo.loaded)
        cached_contextual_ = ltm_.select(proto, goal, now);
    std::optional<dac::ContextualChoice> contextual;
    if (!consummatory && !frame.endo.loaded) contextual = cached_contextual_;

    std::optional<std::pair<ActionPrimitive, double>> adaptive;
    bool transport_active = false;
    for (const auto& b : cfg_.arena.benches)
        if (needs_.drive("transport:" + b.id) > 0.05) transport_active = true;
    if (transport_active && !frame.endo.loaded && !consummatory && !proto.is_zero()) {
        if (auto resp = assoc_.respond(proto))
            adaptive = std::make_pair(ActionPrimitive{SetHeading{heading_of_bin(resp->response)}},
                                      resp->confidence);
    }

    if (stuck_count_ >= 10) {
        stuck_count_ = 0;
        force_explore_until_ = now + 60;
        explore_redraw_ = true;
    }
    if (now >= explore_until_ || explore_redraw_ || collided_recently_) {
        collided_recently_ = false;
        redraw_explore(now);
    }

    auto chosen = dac::arbitrate(firings, contextual, adaptive, Explore{});
    last_layer_ = chosen.layer;
    ActionPrimitive act = resolve(chosen.action, frame, now);

    if (cell_changed_ && !proto.is_zero()) {
        window_.push_back(Waypoint{proto, odom_.position()});
        while (window_.size() > 60) window_.pop_front();
        // route memory keeps one outbound waypoint per cell: the state seen
        // and the course taken from it
        if (!frame.endo.loaded) {
            dac::MemorySegment seg;
            seg.prototype = proto;
            double course = odom_.heading;
            if (const auto* mv = std::get_if<Move>(&act))
                course = wrap_angle(odom_.heading + mv->omega);
            seg.action = SetHeading{course};
            if (std::holds_alternative<Lift>(act)) seg.action = Lift{};
            std::string focal;
            for (const auto& b : cfg_.arena.benches)
                for (int m = 0; m < 4; ++m)
                    if (find_cue(frame, b.bin_cues[m])) focal = b.id;
            seg.h5w = h5w_annotate(frame, ctx_.worker_cues, focal, "c" + std::to_string(cell),
                                   now, active_goal_, action_name(act));
            seg.origin = dac::Origin{spec_.id, now};
            stm_.push(seg);
        }
    }

    ltm_.decay_primes();
    commanded_v_ = 0;
    if (const auto* mv = std::get_if<Move>(&act)) commanded_v_ = mv->v;
    return act;
}

std::vector<std::string> MobileRobot::hazard_flags() const {
    std::vector<std::string> flags;
    if (collided_recently_) flags.push_back("collision");
    return flags;
}

} // namespace recplant::agents
