#include "recplant/world/world.hpp"

#include <algorithm>
#include <cmath>

#include "recplant/core/rng.hpp"

namespace recplant::world {

World::World(ArenaMap arena, WorldConfig cfg) : arena_(std::move(arena)), cfg_(cfg) {
    // one bin per material at every bench
    std::vector<Event> ignore;
    for (const auto& b : arena_.benches)
        for (int m = 0; m < kMaterialCount; ++m)
            spawn_bin_at_bench(b.id, static_cast<Material>(m), ignore);
}

void World::add_mobile(const std::string& id, Pose pose, double radius, double max_speed) {
    BodyState b;
    b.id = id;
    b.kind = "mobile";
    b.pose = pose;
    b.pose.heading = wrap_angle(pose.heading);
    b.radius = radius;
    b.max_speed = max_speed;
    bodies_.push_back(std::move(b));
}

void World::add_worker(const std::string& id, Pose pose, int cue, double speed) {
    BodyState b;
    b.id = id;
    b.kind = "worker";
    b.pose = pose;
    b.pose.heading = wrap_angle(pose.heading);
    b.radius = 0.25;
    b.max_speed = speed;
    b.cue = cue;
    bodies_.push_back(std::move(b));
}

void World::add_gripper(const std::string& id, const std::string& bench, double reach,
                        double standoff) {
    GripperState g;
    g.id = id;
    g.bench = bench;
    g.reach = reach;
    g.standoff = standoff;
    grippers_.push_back(std::move(g));
}

void World::add_model(DeviceModel model) { models_[model.id] = std::move(model); }

void World::schedule_arrival(DeviceArrival a) {
    schedule_.push_back(std::move(a));
    schedule_sorted_ = false;
}

const BodyState* World::body(const std::string& id) const {
    for (const auto& b : bodies_)
        if (b.id == id) return &b;
    return nullptr;
}

BodyState* World::body_mut(const std::string& id) {
    for (auto& b : bodies_)
        if (b.id == id) return &b;
    return nullptr;
}

const GripperState* World::gripper(const std::string& id) const {
    for (const auto& g : grippers_)
        if (g.id == id) return &g;
    return nullptr;
}

GripperState* World::gripper_mut(const std::string& id) {
    for (auto& g : grippers_)
        if (g.id == id) return &g;
    return nullptr;
}

const Bin* World::bin(const std::string& id) const {
    for (const auto& b : bins_)
        if (b.id == id) return &b;
    return nullptr;
}

const DeviceInstance* World::docked_device(const std::string& bench) const {
    for (const auto& d : devices_)
        if (d.docked && d.bench == bench) return &d;
    return nullptr;
}

const DeviceModel* World::model(const std::string& id) const {
    auto it = models_.find(id);
    return it == models_.end() ? nullptr : &it->second;
}

bool World::agent_exists(const std::string& id) const {
    return body(id) != nullptr || gripper(id) != nullptr;
}

std::vector<std::string> World::agent_ids() const {
    std::vector<std::string> out;
    for (const auto& b : bodies_) out.push_back(b.id);
    for (const auto& g : grippers_) out.push_back(g.id);
    return out;
}

int World::component_census() const {
    // unremoved + staged + in bins + sorted; only meaningful when bins fill
    // exclusively from disassembly (no bins_always_full / auto_fill modes)
    int n = 0;
    for (const auto& d : devices_) {
        n += 4 - d.removed_count();
        if (d.staged >= 0) n += 1;
    }
    for (const auto& b : bins_) n += b.fill;
    for (int m = 0; m < kMaterialCount; ++m) n += sorted_[m];
    return n;
}

void World::spawn_bin_at_bench(const std::string& bench, Material m, std::vector<Event>& events) {
    const BenchSpec* spec = arena_.bench(bench);
    if (!spec) return;
    Bin b;
    b.id = bench + ":" + material_name(m);
    b.material = m;
    b.capacity = cfg_.bin_capacity;
    b.fill = cfg_.bins_always_full ? cfg_.bin_capacity : 0;
    b.cue = spec->bin_cues[static_cast<int>(m)];
    b.pos = spec->bin_slots[static_cast<int>(m)];
    b.home_bench = bench;
    // reuse the id if a bin with it already exists (replacement)
    for (auto& existing : bins_) {
        if (existing.id == b.id) {
            existing = b;
            Event e;
            e.tick = tick_;
            e.kind = event_kind::kBinSpawn;
            e.bench = bench;
            e.bin = b.id;
            e.material = material_name(m);
            events.push_back(e);
            return;
        }
    }
    bins_.push_back(b);
}

// ── sensing ──

double World::cast_ray(const Vec2& origin, double angle, const std::string& self) const {
    Vec2 dir{std::cos(angle), std::sin(angle)};
    double best = cfg_.proximity_max;
    for (const auto& seg : arena_.collision_segments()) {
        auto t = ray_segment(origin, dir, seg.a, seg.b);
        if (t && *t < best) best = *t;
    }
    for (const auto& b : bodies_) {
        if (b.id == self) continue;
        auto t = ray_circle(origin, dir, b.pose.position(), b.radius);
        if (t && *t < best) best = *t;
    }
    return best;
}

bool World::occluded(const Vec2& from, const Vec2& to) const {
    for (const auto& r : arena_.obstacles)
        if (segment_intersects_rect(from, to, r)) return true;
    return false;
}

SensorFrame World::sense(const std::string& agent) const {
    const BodyState* b = body(agent);
    const GripperState* g = b ? nullptr : gripper(agent);
    if (!b && !g) throw SimError(tick_, "sense: unknown agent '" + agent + "'");

    Vec2 origin;
    double heading;
    if (b) {
        origin = b->pose.position();
        heading = b->pose.heading;
    } else {
        const BenchSpec* spec = arena_.bench(g->bench);
        origin = spec ? spec->pose.position() : Vec2{0, 0};
        heading = spec ? spec->pose.heading : 0.0;
    }

    SensorFrame f;
    f.max_range = cfg_.proximity_max;
    f.heading = heading;
    const int k = cfg_.proximity_rays;
    f.proximity.resize(k);
    for (int i = 0; i < k; ++i) {
        double off = cfg_.fov * (static_cast<double>(i) / k) - cfg_.fov / 2.0;
        f.proximity[i] = cast_ray(origin, heading + off, agent);
    }

    auto add_cue = [&](int id, const Vec2& pos, bool beacon) {
        Vec2 d = pos - origin;
        double range = d.norm();
        double bearing = wrap_angle(std::atan2(d.y, d.x) - heading);
        if (!beacon) {
            if (range > cfg_.cue_range) return;
            if (std::abs(bearing) > cfg_.fov / 2.0 + 1e-9) return;
            if (occluded(origin, pos)) return;
        }
        f.cues.push_back(CueHit{id, bearing, range});
    };

    add_cue(arena_.home_beacon_cue, arena_.home_zone.center(), true);
    add_cue(arena_.charge_beacon_cue, arena_.charge_zone.center(), true);
    for (const auto& bench : arena_.benches) add_cue(bench.cue, bench.pose.position(), false);
    for (const auto& bin : bins_)
        if (bin.carried_by.empty() && bin.full()) add_cue(bin.cue, bin.pos, false);
    for (const auto& lm : arena_.landmarks) add_cue(lm.cue, lm.pos, false);
    for (const auto& w : bodies_)
        if (w.kind == "worker" && w.id != agent) add_cue(w.cue, w.pose.position(), false);

    if (b) {
        f.endo.battery = b->battery;
        f.endo.loaded = !b->carried_bin.empty();
        f.encoder_dforward = b->last_v;
        f.encoder_dheading = b->last_dheading;
    } else {
        f.endo.battery = 1.0;
        const DeviceInstance* dev = docked_device(g->bench);
        f.endo.loaded = dev && dev->staged >= 0;
        f.endo.pressure = g->last_pressure;
        f.endo.torque = g->last_velocity;
    }

    for (const auto& ge : gesture_visible_)
        if (distance(ge.pos, origin) <= cfg_.gesture_range) f.gestures.push_back(ge.event);
    return f;
}

// ── manipulation ops ──

StepResult World::apply_disassembly_step(const std::string& bench, int component, double velocity,
                                         double pressure, std::vector<Event>& events) {
    Event e;
    e.tick = tick_;
    e.bench = bench;
    e.component = component;

    DeviceInstance* dev = nullptr;
    for (auto& d : devices_)
        if (d.docked && d.bench == bench) dev = &d;
    if (!dev) {
        e.kind = event_kind::kFault;
        e.outcome = step_result_name(StepResult::NoDevice);
        events.push_back(e);
        return StepResult::NoDevice;
    }
    e.model = dev->model;
    e.kind = event_kind::kStepResult;

    if (dev->staged >= 0) {
        e.outcome = step_result_name(StepResult::Busy);
        events.push_back(e);
        return StepResult::Busy;
    }

    const DeviceModel& m = models_.at(dev->model);
    StepResult res;
    int next = -1;
    for (int idx : m.valid_order)
        if (!dev->removed[idx]) {
            next = idx;
            break;
        }
    if (component < 0 || component >= 4 || dev->removed[component] || component != next) {
        res = StepResult::WrongOrder;
    } else if (!m.components[component].params_ok(velocity, pressure)) {
        res = StepResult::BadParams;
    } else {
        res = StepResult::Success;
        dev->removed[component] = true;
        dev->staged = component;
        // extraction kinematics observed by the tool: linear in the contact
        // basis, fixed per model
        double theta = component * kPi / 2.0;
        double ct = std::cos(theta), st = std::sin(theta);
        std::uint64_t h = fnv1a64(m.id);
        auto coef = [&](int k) {
            return 0.02 + 0.01 * static_cast<double>((h >> (8 * k)) & 0xff) / 255.0;
        };
        e.dx = coef(0) + coef(1) * ct + coef(2) * velocity * ct;
        e.dy = coef(3) * st + coef(4) * velocity * st;
        e.dphi = coef(5) * (ct - st);
    }
    if (GripperState* g = [&]() -> GripperState* {
            for (auto& gr : grippers_)
                if (gr.bench == bench) return &gr;
            return nullptr;
        }()) {
        g->last_velocity = velocity;
        g->last_pressure = pressure;
    }
    e.outcome = step_result_name(res);
    events.push_back(e);
    return res;
}

bool World::lift_bin(const std::string& robot, const std::string& bin_id,
                     std::vector<Event>& events) {
    Event e;
    e.tick = tick_;
    e.agent = robot;
    e.bin = bin_id;

    BodyState* r = body_mut(robot);
    Bin* target = nullptr;
    for (auto& b : bins_)
        if (b.id == bin_id) target = &b;
    bool ok = r && r->kind == "mobile" && r->carried_bin.empty() && target &&
              target->carried_by.empty() &&
              distance(r->pose.position(), target->pos) <= cfg_.lift_reach;
    if (!ok) {
        e.kind = event_kind::kFault;
        e.outcome = "lift_precondition";
        events.push_back(e);
        return false;
    }
    target->carried_by = robot;
    r->carried_bin = bin_id;
    e.kind = event_kind::kLift;
    e.bench = target->home_bench;
    e.material = material_name(target->material);
    events.push_back(e);
    return true;
}

bool World::place_bin(const std::string& robot, std::vector<Event>& events) {
    Event e;
    e.tick = tick_;
    e.agent = robot;

    BodyState* r = body_mut(robot);
    if (!r || r->carried_bin.empty()) {
        e.kind = event_kind::kFault;
        e.outcome = "place_precondition";
        events.push_back(e);
        return false;
    }
    Bin* carried = nullptr;
    for (auto& b : bins_)
        if (b.id == r->carried_bin) carried = &b;
    carried->carried_by.clear();
    carried->pos = r->pose.position();
    r->carried_bin.clear();

    e.bin = carried->id;
    e.bench = carried->home_bench;
    e.material = material_name(carried->material);
    if (arena_.sorting_zone.contains(carried->pos)) {
        e.kind = event_kind::kDelivery;
        e.value = carried->fill;
        sorted_[static_cast<int>(carried->material)] += carried->fill;
        events.push_back(e);
        // empty replacement appears back at the bench
        spawn_bin_at_bench(carried->home_bench, carried->material, events);
    } else {
        e.kind = event_kind::kPlace;
        events.push_back(e);
    }
    return true;
}

// ── movement ──

namespace {
struct Motion {
    int index = -1;
    Vec2 start;
    Vec2 disp;
    double tstop = 1.0;
    bool moving = false;
    bool frozen = false;
};
} // namespace

void World::move_bodies(const std::map<std::string, ActionPrimitive>& actions,
                        std::vector<Event>& events) {
    const int n = static_cast<int>(bodies_.size());
    std::vector<Motion> motion(n);
    for (int i = 0; i < n; ++i) {
        BodyState& b = bodies_[i];
        motion[i].index = i;
        motion[i].start = b.pose.position();
        b.last_dheading = 0.0;
        auto it = actions.find(b.id);
        if (it == actions.end()) continue;
        const Move* mv = std::get_if<Move>(&it->second);
        if (!mv) continue;
        double v = std::clamp(mv->v, 0.0, b.max_speed);
        if (b.kind == "mobile" && b.battery <= 0.0) v = 0.0;
        double omega = std::clamp(mv->omega, -b.max_turn, b.max_turn);
        b.pose.heading = wrap_angle(b.pose.heading + omega);
        b.last_dheading = omega;
        motion[i].disp = Vec2{std::cos(b.pose.heading), std::sin(b.pose.heading)} * v;
        motion[i].moving = v > 0.0;
    }

    // Earliest-contact sweep: process contact events in increasing time; each
    // one freezes the involved bodies at the contact instant.
    double processed = 0.0;
    for (int guard = 0; guard < 4 * n + 8; ++guard) {
        double best_t = 1.0 + 1e-9;
        int hit_i = -1, hit_j = -1; // j = -1 for geometry
        for (int i = 0; i < n; ++i) {
            if (!motion[i].moving || motion[i].frozen) continue;
            for (const auto& seg : arena_.collision_segments()) {
                auto t = sweep_circle_segment(motion[i].start, motion[i].disp, bodies_[i].radius,
                                              seg.a, seg.b, motion[i].tstop);
                if (t && *t >= processed - 1e-12 && *t < best_t) {
                    best_t = *t;
                    hit_i = i;
                    hit_j = -1;
                }
            }
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                if (j < i && motion[j].moving && !motion[j].frozen) continue; // handled as (j,i)
                Vec2 rel_start = motion[i].start - (motion[j].frozen || !motion[j].moving
                                                        ? motion[j].start + motion[j].disp * motion[j].tstop * (motion[j].frozen ? 1.0 : 0.0)
                                                        : motion[j].start);
                Vec2 rel_disp = motion[i].disp;
                if (motion[j].moving && !motion[j].frozen) rel_disp = motion[i].disp - motion[j].disp;
                auto t = sweep_point_circle(rel_start, rel_disp, Vec2{0, 0},
                                            bodies_[i].radius + bodies_[j].radius,
                                            std::min(motion[i].tstop, motion[j].frozen ? 1.0 : motion[j].tstop));
                if (t && *t >= processed - 1e-12 && *t < best_t) {
                    best_t = *t;
                    hit_i = i;
                    hit_j = j;
                }
            }
        }
        if (hit_i < 0) break;
        processed = best_t;
        motion[hit_i].tstop = best_t;
        motion[hit_i].frozen = true;
        if (hit_j >= 0) {
            if (motion[hit_j].moving && !motion[hit_j].frozen) {
                motion[hit_j].tstop = best_t;
                motion[hit_j].frozen = true;
            }
            Event e;
            e.tick = tick_;
            e.kind = event_kind::kCollision;
            e.agent = bodies_[std::min(hit_i, hit_j)].id;
            e.extra = bodies_[std::max(hit_i, hit_j)].id;
            events.push_back(e);
        }
    }

    for (int i = 0; i < n; ++i) {
        BodyState& b = bodies_[i];
        Vec2 final_pos = motion[i].start + motion[i].disp * motion[i].tstop;
        b.pose.x = final_pos.x;
        b.pose.y = final_pos.y;
        b.last_v = (motion[i].disp * motion[i].tstop).norm();
        if (b.kind == "mobile") {
            double drain = cfg_.idle_drain;
            if (b.max_speed > 0) drain += cfg_.move_drain * (b.last_v / b.max_speed);
            b.battery = std::clamp(b.battery - drain, 0.0, 1.0);
        }
        if (!b.carried_bin.empty())
            for (auto& bin : bins_)
                if (bin.id == b.carried_bin) bin.pos = final_pos;
    }
}

void World::advance_devices(std::vector<Event>& events) {
    if (!schedule_sorted_) {
        std::stable_sort(schedule_.begin(), schedule_.end(),
                         [](const DeviceArrival& a, const DeviceArrival& b) {
                             return a.tick < b.tick;
                         });
        schedule_sorted_ = true;
    }
    while (next_arrival_ < schedule_.size() && schedule_[next_arrival_].tick <= tick_) {
        const auto& a = schedule_[next_arrival_++];
        if (!models_.count(a.model) || !arena_.bench(a.bench)) continue; // validated at config time
        DeviceInstance d;
        d.uid = next_device_uid_++;
        d.model = a.model;
        d.bench = a.bench;
        d.conveyor_s = 0.0;
        devices_.push_back(d);
        ++spawned_devices_;
    }

    for (auto& d : devices_) {
        if (d.docked) continue;
        const BenchSpec* bench = arena_.bench(d.bench);
        double station = bench ? bench->conveyor_station : 0.0;
        if (arena_.conveyor.points.empty()) {
            d.conveyor_s = station; // no belt configured: devices appear at the bench
        } else {
            d.conveyor_s = std::min(d.conveyor_s + arena_.conveyor.speed, station);
        }
        if (d.conveyor_s >= station - 1e-9) {
            bool bench_busy = false;
            for (const auto& other : devices_)
                if (other.docked && other.bench == d.bench) bench_busy = true;
            if (!bench_busy) {
                d.docked = true;
                Event e;
                e.tick = tick_;
                e.kind = event_kind::kDock;
                e.bench = d.bench;
                e.model = d.model;
                events.push_back(e);
            }
        }
    }
}

void World::auto_fill(std::vector<Event>& events) {
    if (cfg_.auto_fill_period <= 0) return;
    for (std::size_t bi = 0; bi < arena_.benches.size(); ++bi) {
        Tick phase = static_cast<Tick>(bi) * cfg_.auto_fill_period /
                     static_cast<Tick>(arena_.benches.size());
        if ((tick_ % cfg_.auto_fill_period) != phase) continue;
        Material m = static_cast<Material>((tick_ / cfg_.auto_fill_period) % kMaterialCount);
        for (auto& b : bins_) {
            if (b.home_bench != arena_.benches[bi].id || b.material != m) continue;
            if (!b.carried_by.empty()) continue;
            if (!b.full()) {
                b.fill = b.capacity;
                Event e;
                e.tick = tick_;
                e.kind = event_kind::kBinFill;
                e.bench = b.home_bench;
                e.bin = b.id;
                e.material = material_name(m);
                events.push_back(e);
            }
        }
    }
}

StepOutcome World::step(const std::map<std::string, ActionPrimitive>& actions) {
    StepOutcome out;
    for (const auto& [id, act] : actions) {
        if (!agent_exists(id)) throw SimError(tick_, "action for unknown agent '" + id + "'");
        if (!is_actuator_level(act))
            throw SimError(tick_, "unresolved macro action '" + std::string(action_name(act)) +
                                      "' for agent '" + id + "'");
    }

    for (auto& g : grippers_) {
        g.last_velocity = 0.0;
        g.last_pressure = 0.0;
    }
    gesture_visible_ = std::move(gesture_pending_);
    gesture_pending_.clear();

    move_bodies(actions, out.events);

    // manipulation in roster order (bodies, then grippers) for determinism
    for (const auto& id : agent_ids()) {
        auto it = actions.find(id);
        if (it == actions.end()) continue;
        const ActionPrimitive& act = it->second;
        if (const auto* lift = std::get_if<Lift>(&act)) {
            (void)lift;
            // lift the nearest grounded full bin within reach; fault when none
            const BodyState* r = body(id);
            std::string target;
            double best = cfg_.lift_reach;
            if (r)
                for (const auto& b : bins_) {
                    if (!b.carried_by.empty()) continue;
                    double d = distance(r->pose.position(), b.pos);
                    if (b.full() && d <= best) {
                        best = d;
                        target = b.id;
                    }
                }
            lift_bin(id, target.empty() ? "?" : target, out.events);
        } else if (std::holds_alternative<Place>(act)) {
            place_bin(id, out.events);
        } else if (const auto* st = std::get_if<Standoff>(&act)) {
            GripperState* g = gripper_mut(id);
            if (g) {
                double s = st->absolute ? st->target : g->standoff + st->delta;
                g->standoff = std::clamp(s, 0.0, 3.0);
            }
        } else if (const auto* ds = std::get_if<DisassembleStep>(&act)) {
            const GripperState* g = gripper(id);
            if (g) {
                apply_disassembly_step(g->bench, ds->component, ds->velocity, ds->pressure,
                                       out.events);
            }
        } else if (std::holds_alternative<PlaceComponent>(act)) {
            const GripperState* g = gripper(id);
            if (!g) continue;
            DeviceInstance* dev = nullptr;
            for (auto& d : devices_)
                if (d.docked && d.bench == g->bench) dev = &d;
            if (!dev || dev->staged < 0) continue;
            Material m = models_.at(dev->model).components[dev->staged].material;
            Bin* target = nullptr;
            for (auto& b : bins_)
                if (b.home_bench == g->bench && b.material == m && b.carried_by.empty() &&
                    !b.full())
                    target = &b;
            if (!target) {
                Event e;
                e.tick = tick_;
                e.kind = event_kind::kFault;
                e.agent = id;
                e.bench = g->bench;
                e.outcome = "bin_unavailable";
                e.material = material_name(m);
                out.events.push_back(e);
                continue;
            }
            target->fill += 1;
            dev->staged = -1;
            dev->placed += 1;
            Event e;
            e.tick = tick_;
            e.kind = event_kind::kBinFill;
            e.agent = id;
            e.bench = g->bench;
            e.bin = target->id;
            e.material = material_name(m);
            e.value = target->fill;
            out.events.push_back(e);
            if (dev->placed >= 4) {
                Event c;
                c.tick = tick_;
                c.kind = event_kind::kDeviceComplete;
                c.bench = g->bench;
                c.model = dev->model;
                out.events.push_back(c);
                for (auto dit = devices_.begin(); dit != devices_.end(); ++dit)
                    if (dit->uid == dev->uid) {
                        devices_.erase(dit);
                        break;
                    }
            }
        } else if (const auto* eg = std::get_if<EmitGesture>(&act)) {
            const BodyState* w = body(id);
            if (w && w->kind == "worker") {
                GestureEmission ge;
                ge.event = GestureEvent{id, eg->gesture};
                ge.pos = w->pose.position();
                gesture_pending_.push_back(ge);
                Event e;
                e.tick = tick_;
                e.kind = event_kind::kGesture;
                e.worker = id;
                e.gesture = eg->gesture;
                out.events.push_back(e);
            }
        }
    }

    advance_devices(out.events);
    auto_fill(out.events);

    for (auto& b : bodies_) {
        if (b.kind != "mobile") continue;
        if (arena_.charge_zone.contains(b.pose.position())) {
            double before = b.battery;
            b.battery = std::clamp(b.battery + cfg_.charge_rate, 0.0, 1.0);
            if (before < 0.95 && b.battery >= 0.95) {
                Event e;
                e.tick = tick_;
                e.kind = event_kind::kChargeFull;
                e.agent = b.id;
                out.events.push_back(e);
            }
        }
    }

    ++tick_;
    return out;
}

} // namespace recplant::world
