#include "recplant/sim/simulation.hpp"

#include <algorithm>

#include "recplant/dac/snapshot.hpp"

namespace recplant::sim {

Simulation::Simulation(config::ScenarioConfig cfg, std::uint64_t seed)
    : cfg_(std::move(cfg)), seed_(seed),
      log_(seed, nlohmann::json(), 0) {
    cfg_.seed = seed;
    log_ = EventLog(seed, cfg_.to_json(), cfg_.checksum());

    world_ = std::make_unique<world::World>(cfg_.arena, cfg_.world);
    for (const auto& m : cfg_.models) world_->add_model(m);
    for (const auto& a : cfg_.arrivals) world_->schedule_arrival(a);

    for (const auto& spec : cfg_.mobiles) {
        world_->add_mobile(spec.id, Pose{spec.x, spec.y, spec.heading}, spec.radius,
                           spec.max_speed_mps * config::ScenarioConfig::kDt);
        robots_.emplace_back(cfg_, spec, Rng::stream(seed, spec.id));
    }
    for (const auto& spec : cfg_.grippers) {
        world_->add_gripper(spec.id, spec.bench, spec.reach, spec.initial_standoff);
        grippers_.emplace_back(cfg_, spec, Rng::stream(seed, spec.id));
    }
    for (const auto& spec : cfg_.workers) {
        const world::BenchSpec* bench = cfg_.arena.bench(spec.bench);
        Pose bench_pose = bench ? bench->pose : Pose{};
        agents::WorkerProxy w(spec, cfg_.tuning, Rng::stream(seed, spec.id));
        w.bind_bench(spec.bench, bench_pose);
        Pose start{bench_pose.x + cfg_.tuning.worker_loop_radius, bench_pose.y, 0.0};
        world_->add_worker(spec.id, start, spec.cue,
                           cfg_.tuning.worker_speed_mps * config::ScenarioConfig::kDt);
        workers_.push_back(std::move(w));
    }

    bus::ChannelConfig bc;
    bc.central_enabled = cfg_.plant.central;
    bc.latency = cfg_.plant.bus_latency;
    bc.drop_prob = cfg_.plant.bus_drop;
    bc.drop_seed = Rng::stream(seed, "bus").next_u64();
    bus_ = std::make_unique<bus::Bus>(bc);
    for (const auto& r : robots_) bus_->register_sender(r.id());
    for (const auto& g : grippers_) bus_->register_sender(g.id());
    for (const auto& w : workers_) bus_->register_sender(w.profile().id);
    bus_->register_sender("plant");

    plant_ = std::make_unique<plant::PlantController>(cfg_);
}

const config::WorkerProfile* Simulation::worker_by_cue(int cue) const {
    for (const auto& w : cfg_.workers)
        if (w.cue == cue) return &w;
    return nullptr;
}

agents::GripperView Simulation::gripper_view(const agents::Gripper& g) const {
    agents::GripperView v;
    const world::GripperState* gs = world_->gripper(g.id());
    v.standoff = gs ? gs->standoff : 1.0;
    const world::DeviceInstance* dev = world_->docked_device(g.bench());
    if (dev) {
        v.docked = true;
        v.model_id = dev->model;
        v.model = world_->model(dev->model);
        v.removed = dev->removed;
        v.staged = dev->staged;
        v.placed = dev->placed;
    }
    for (const auto& bin : world_->bins()) {
        if (bin.home_bench != g.bench()) continue;
        int m = static_cast<int>(bin.material);
        if (bin.carried_by.empty() && !bin.full()) v.bin_space[m] = true;
        else v.bin_space[m] = false;
        if (bin.carried_by.empty() && bin.full()) ++v.full_bins;
    }
    return v;
}

void Simulation::do_swap() {
    if (!cfg_.swap || swapped_) return;
    const auto& sw = *cfg_.swap;
    agents::WorkerProxy* wa = nullptr;
    agents::WorkerProxy* wb = nullptr;
    for (auto& w : workers_) {
        if (w.profile().id == sw.worker_a) wa = &w;
        if (w.profile().id == sw.worker_b) wb = &w;
    }
    if (!wa || !wb) return;
    std::string bench_a = wa->bench(), bench_b = wb->bench();
    const world::BenchSpec* ba = cfg_.arena.bench(bench_b);
    const world::BenchSpec* bb = cfg_.arena.bench(bench_a);
    wa->bind_bench(bench_b, ba ? ba->pose : Pose{});
    wb->bind_bench(bench_a, bb ? bb->pose : Pose{});
    // the swap is a scenario intervention: workers change station directly
    if (auto* body = world_->body_mut(sw.worker_a); body && ba)
        body->pose = Pose{ba->pose.x + cfg_.tuning.worker_loop_radius, ba->pose.y, 0.0};
    if (auto* body = world_->body_mut(sw.worker_b); body && bb)
        body->pose = Pose{bb->pose.x + cfg_.tuning.worker_loop_radius, bb->pose.y, 0.0};

    if (naive_after_swap_)
        for (auto& g : grippers_) g.reset_memory();

    Event e;
    e.tick = world_->tick();
    e.kind = event_kind::kSwap;
    e.worker = sw.worker_a;
    e.extra = sw.worker_b;
    log_.append(e);
    swapped_ = true;
}

void Simulation::step_once() {
    const Tick t = world_->tick();
    if (cfg_.swap && t == cfg_.swap->tick) do_swap();

    std::map<std::string, ActionPrimitive> actions;
    std::map<std::string, std::vector<Event>> next_inbox;

    // ── agents sense / act ──
    for (auto& w : workers_) {
        const world::BodyState* body = world_->body(w.profile().id);
        double standoff = -1.0;
        std::string gripper_id;
        for (const auto& g : grippers_) {
            if (g.bench() == w.bench()) {
                const world::GripperState* gs = world_->gripper(g.id());
                if (gs) {
                    standoff = gs->standoff;
                    gripper_id = g.id();
                }
            }
        }
        auto ws = w.step(body ? body->pose : Pose{}, standoff, gripper_id, t);
        actions[w.profile().id] = ws.action;
        for (auto& e : ws.emitted) {
            log_.append(e);
            if (e.kind == event_kind::kDiscomfort && !e.agent.empty())
                next_inbox[e.agent].push_back(e);
        }
        bus::Envelope env;
        env.posted = t;
        env.sender = w.profile().id;
        env.kind = bus::LoopKind::Sensory;
        bus::AgentSnapshot snap;
        snap.id = w.profile().id;
        snap.kind = "worker";
        snap.pose = body ? body->pose : Pose{};
        env.payload = snap;
        bus_->post(std::move(env));
    }

    for (auto& r : robots_) {
        SensorFrame frame = world_->sense(r.id());
        ActionPrimitive act = r.act(frame, inbox_[r.id()], t);
        actions[r.id()] = act;

        bus::Envelope env;
        env.posted = t;
        env.sender = r.id();
        env.kind = bus::LoopKind::Sensory;
        bus::AgentSnapshot snap;
        snap.id = r.id();
        snap.kind = "mobile";
        const world::BodyState* body = world_->body(r.id());
        snap.pose = body ? body->pose : Pose{};
        snap.loaded = body && !body->carried_bin.empty();
        snap.battery = body ? body->battery : 1.0;
        snap.layer = dac::layer_name(r.last_layer());
        snap.hazard_flags = r.hazard_flags();
        for (const auto& [id, n] : r.needs().all()) snap.drives[id] = n.drive();
        snap.deliveries = r.deliveries_this_tick();
        snap.bench = r.last_delivery_bench();
        env.payload = snap;
        bus_->post(std::move(env));
    }

    for (auto& g : grippers_) {
        SensorFrame frame = world_->sense(g.id());
        agents::GripperView view = gripper_view(g);
        ActionPrimitive act = g.act(frame, view, inbox_[g.id()], t);
        actions[g.id()] = act;

        bus::Envelope env;
        env.posted = t;
        env.sender = g.id();
        env.kind = bus::LoopKind::Sensory;
        bus::AgentSnapshot snap;
        snap.id = g.id();
        snap.kind = "gripper";
        const world::BenchSpec* bench = cfg_.arena.bench(g.bench());
        snap.pose = bench ? bench->pose : Pose{};
        snap.battery = 1.0;
        snap.layer = dac::layer_name(g.last_layer());
        snap.bench = g.bench();
        snap.device_docked = view.docked;
        snap.full_bins = view.full_bins;
        for (const auto& [id, n] : g.needs().all()) snap.drives[id] = n.drive();
        if (g.current_worker()) {
            const config::WorkerProfile* wp = worker_by_cue(*g.current_worker());
            if (wp) snap.worker_seen = wp->id;
        }
        env.payload = snap;
        bus_->post(std::move(env));
    }

    // periodic LTM digests toward the plant
    if (cfg_.plant.exchange_period > 0 && t > 0 && t % cfg_.plant.exchange_period == 0) {
        auto post_digest = [&](const std::string& id, const std::string& kind,
                               const dac::SequenceMemory& ltm, int dim) {
            if (ltm.empty()) return;
            bus::Envelope env;
            env.posted = t;
            env.sender = id;
            env.kind = bus::LoopKind::LtmExchange;
            bus::LtmBatch batch;
            batch.kind = kind;
            batch.dim = dim;
            batch.sequences = ltm.sequences();
            env.payload = std::move(batch);
            bus_->post(std::move(env));
        };
        for (auto& r : robots_) post_digest(r.id(), "mobile", r.ltm(), r.layout().dim());
        for (auto& g : grippers_) post_digest(g.id(), "gripper", g.ltm(), g.layout().dim());
    }

    // ── bus delivery ──
    std::vector<bus::Envelope> plant_inbox;
    for (auto& env : bus_->deliver(t)) {
        EnvelopeRec rec;
        rec.tick = t;
        rec.loop = bus::loop_name(env.kind);
        rec.sender = env.sender;
        rec.seq = env.seq;
        if (const auto* s = std::get_if<bus::AgentSnapshot>(&env.payload)) {
            (void)s;
            plant_inbox.push_back(env);
        } else if (const auto* m = std::get_if<bus::NeedModulation>(&env.payload)) {
            rec.target = m->agent;
            for (auto& r : robots_)
                if (r.id() == m->agent) r.needs().modulate(m->need, m->delta, m->ttl, t);
            for (auto& g : grippers_)
                if (g.id() == m->agent) g.needs().modulate(m->need, m->delta, m->ttl, t);
        } else if (const auto* b = std::get_if<bus::LtmBatch>(&env.payload)) {
            rec.target = b->target;
            if (b->target.empty()) {
                plant_inbox.push_back(env);
            } else {
                for (auto& r : robots_)
                    if (r.id() == b->target) r.ltm().merge(b->sequences, t);
                for (auto& g : grippers_)
                    if (g.id() == b->target) g.ltm().merge(b->sequences, t);
            }
        } else if (const auto* cstr = std::get_if<bus::GlobalCommand>(&env.payload)) {
            bool halt = cstr->command == "estop";
            for (auto& r : robots_) r.set_halted(halt);
            for (auto& g : grippers_) g.set_halted(halt);
            halted_workers_ = halt;
        }
        log_.append(rec);
    }

    // ── plant aggregate / decide / post ──
    if (cfg_.plant.central) {
        plant::PlantDecisions decisions = plant_->step(t, plant_inbox);
        for (auto& e : decisions.events) log_.append(e);
        for (auto& m : decisions.modulations) {
            bus::Envelope env;
            env.posted = t;
            env.sender = "plant";
            env.kind = bus::LoopKind::Orchestrator;
            env.payload = m;
            bus_->post(std::move(env));
        }
        for (auto& cmd : decisions.commands) {
            bus::Envelope env;
            env.posted = t;
            env.sender = "plant";
            env.kind = bus::LoopKind::GlobalReflex;
            env.payload = cmd;
            bus_->post(std::move(env));
        }
        for (auto& batch : decisions.ltm_batches) {
            bus::Envelope env;
            env.posted = t;
            env.sender = "plant";
            env.kind = bus::LoopKind::LtmExchange;
            env.payload = std::move(batch);
            bus_->post(std::move(env));
        }
    }

    // ── halt overrides, then the world advances ──
    for (auto& r : robots_)
        if (r.halted()) actions[r.id()] = Move{0, 0};
    for (auto& g : grippers_)
        if (g.halted()) actions[g.id()] = Idle{};
    if (halted_workers_)
        for (auto& w : workers_)
            if (!std::holds_alternative<EmitGesture>(actions[w.profile().id]))
                actions[w.profile().id] = Move{0, 0};

    world::StepOutcome outcome = world_->step(actions);
    for (auto& e : outcome.events) {
        log_.append(e);
        if (e.kind == event_kind::kDelivery) ++deliveries_;
        // route to the agents concerned, for the next tick
        if (e.kind == event_kind::kStepResult || e.kind == event_kind::kDeviceComplete ||
            e.kind == event_kind::kDock || e.kind == event_kind::kFault) {
            for (const auto& g : grippers_)
                if (g.bench() == e.bench) next_inbox[g.id()].push_back(e);
        }
        if (!e.agent.empty()) next_inbox[e.agent].push_back(e);
        if (!e.extra.empty() && e.kind == event_kind::kCollision)
            next_inbox[e.extra].push_back(e);
    }

    // per-tick agent state records (post-step state of tick t)
    for (const auto& r : robots_) {
        const world::BodyState* body = world_->body(r.id());
        AgentStateRec s;
        s.tick = t;
        s.id = r.id();
        s.kind = "mobile";
        s.x = body->pose.x;
        s.y = body->pose.y;
        s.heading = body->pose.heading;
        s.battery = body->battery;
        s.loaded = !body->carried_bin.empty();
        s.halted = r.halted();
        s.layer = dac::layer_name(r.last_layer());
        s.goal = r.active_goal();
        log_.append(s);
    }
    for (const auto& g : grippers_) {
        const world::GripperState* gs = world_->gripper(g.id());
        const world::BenchSpec* bench = cfg_.arena.bench(g.bench());
        AgentStateRec s;
        s.tick = t;
        s.id = g.id();
        s.kind = "gripper";
        s.x = bench ? bench->pose.x : 0;
        s.y = bench ? bench->pose.y : 0;
        s.heading = bench ? bench->pose.heading : 0;
        s.battery = 1.0;
        s.halted = g.halted();
        s.layer = dac::layer_name(g.last_layer());
        s.standoff = gs ? gs->standoff : 0;
        if (g.current_worker()) {
            const config::WorkerProfile* wp = worker_by_cue(*g.current_worker());
            if (wp) s.worker = wp->id;
        }
        log_.append(s);
    }

    inbox_ = std::move(next_inbox);
}

void Simulation::run() {
    for (Tick i = 0; i < cfg_.ticks; ++i) step_once();
}

void Simulation::run_until_deliveries(int deliveries, Tick cap) {
    while (deliveries_ < deliveries && world_->tick() < cap) step_once();
}

nlohmann::json Simulation::save_memory() const {
    nlohmann::json j;
    j["version"] = dac::kSnapshotVersion;
    nlohmann::json agents = nlohmann::json::object();
    for (const auto& r : robots_)
        agents[r.id()] = dac::memory_to_json(r.ltm(), r.assoc(), r.needs());
    for (const auto& g : grippers_)
        agents[g.id()] = dac::memory_to_json(g.ltm(), g.assoc(), g.needs());
    j["agents"] = agents;
    return j;
}

void Simulation::load_memory(const nlohmann::json& snapshot) {
    int version = snapshot.value("version", -1);
    if (version != dac::kSnapshotVersion)
        throw dac::SnapshotError("memory snapshot version mismatch: file has " +
                                 std::to_string(version) + ", this build reads " +
                                 std::to_string(dac::kSnapshotVersion));
    if (!snapshot.contains("agents")) return;
    const auto& agents = snapshot["agents"];
    for (auto& r : robots_)
        if (agents.contains(r.id()))
            dac::memory_from_json(agents[r.id()], r.ltm(), r.assoc(), r.needs());
    for (auto& g : grippers_)
        if (agents.contains(g.id()))
            dac::memory_from_json(agents[g.id()], g.ltm(), g.assoc(), g.needs());
}

} // namespace recplant::sim
