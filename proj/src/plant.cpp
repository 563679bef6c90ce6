#include "recplant/plant/plant.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "recplant/plant/hungarian.hpp"

namespace recplant::plant {

double ema_update(double prev, double new_value, double weight) {
    return prev + weight * (new_value - prev);
}

PlantController::PlantController(const config::ScenarioConfig& cfg)
    : cfg_(cfg), needs_(cfg.dac.modulation_cap),
      pool_mobile_(dac::MemoryParams{cfg.dac.theta_c, cfg.dac.gamma, cfg.dac.beta, cfg.dac.lambda,
                                     static_cast<std::size_t>(cfg.dac.stm_capacity),
                                     static_cast<std::size_t>(cfg.dac.ltm_capacity) * 4, 0.99,
                                     0.5}),
      pool_gripper_(pool_mobile_.params()) {
    // the plant's own drives, same algebra as any agent
    needs_.define("throughput", 0.0, 1.0, 1.0);
    needs_.define("congestion", 1.0, 1.0, 1.0);
    needs_.define("fairness", 1.0, 1.0, 1.0);
}

PlantPercept PlantController::aggregate(const std::vector<bus::AgentSnapshot>& snapshots,
                                        Tick tick) {
    std::set<std::string> seen;
    for (const auto& s : snapshots)
        if (!seen.insert(s.id).second)
            throw AggregationError("duplicate agent id in snapshot batch: " + s.id);

    PlantPercept p;
    p.tick = tick;
    p.congestion_cols = std::max(1, static_cast<int>(cfg_.arena.width / cell_));
    p.congestion_rows = std::max(1, static_cast<int>(cfg_.arena.height / cell_));
    p.congestion.assign(static_cast<std::size_t>(p.congestion_cols) * p.congestion_rows, 0);

    std::map<std::string, BenchPercept> benches;
    for (const auto& b : cfg_.arena.benches) {
        BenchPercept bp;
        bp.bench = b.id;
        benches[b.id] = bp;
    }

    for (const auto& s : snapshots) {
        latest_[s.id] = s;
        auto prev = prev_pose_.find(s.id);
        speed_[s.id] =
            prev == prev_pose_.end()
                ? 0.0
                : distance(prev->second.position(), s.pose.position());
        prev_pose_[s.id] = s.pose;

        if (s.kind == "mobile") {
            int cx = std::clamp(static_cast<int>(s.pose.x / cell_), 0, p.congestion_cols - 1);
            int cy = std::clamp(static_cast<int>(s.pose.y / cell_), 0, p.congestion_rows - 1);
            p.congestion[static_cast<std::size_t>(cy) * p.congestion_cols + cx] += 1;
        }
        if (s.kind == "gripper" && benches.count(s.bench)) {
            BenchPercept& bp = benches[s.bench];
            bp.taken = s.device_docked;
            bp.worker = s.worker_seen;
            bp.full_bins = s.full_bins;
            bp.queue = s.queue;
        }
        window_deliveries_ += s.deliveries;
        for (const auto& h : s.hazard_flags) p.hazards.push_back(s.id + ":" + h);
    }
    // benches without grippers still expose bin state through robot snapshots?
    // no: bins are only known to the plant through gripper exosensing or the
    // task list built from full_bins below; mobile snapshots contribute pose.
    for (const auto& b : cfg_.arena.benches) p.benches.push_back(benches[b.id]);

    if (tick - ema_window_start_ >= cfg_.plant.ema_window) {
        double per_1000 = static_cast<double>(window_deliveries_) * 1000.0 /
                          static_cast<double>(cfg_.plant.ema_window);
        ema_ = ema_update(ema_, per_1000, cfg_.plant.ema_weight);
        window_deliveries_ = 0;
        ema_window_start_ = tick;
    }
    p.throughput_ema = ema_;

    // plant need levels from the percept
    if (cfg_.plant.throughput_target > 0)
        needs_.set_level("throughput", std::min(1.0, ema_ / cfg_.plant.throughput_target));
    int overloaded = 0;
    for (int c : p.congestion)
        if (c > 1) ++overloaded;
    needs_.set_level("congestion", overloaded == 0 ? 1.0 : std::max(0.0, 1.0 - 0.2 * overloaded));
    double entropy = 1.0;
    double total = 0;
    for (const auto& [b, n] : bench_service_) total += n;
    if (total > 0 && cfg_.arena.benches.size() > 1) {
        entropy = 0;
        for (const auto& [b, n] : bench_service_) {
            if (n == 0) continue;
            double q = n / total;
            entropy -= q * std::log(q);
        }
        entropy /= std::log(static_cast<double>(cfg_.arena.benches.size()));
    }
    needs_.set_level("fairness", std::clamp(entropy, 0.0, 1.0));
    needs_.expire(tick);

    percept_ = p;
    return p;
}

std::vector<bus::GlobalCommand> PlantController::global_reflex(const PlantPercept& percept,
                                                               Tick tick) {
    (void)tick;
    bool danger = false;
    std::vector<const bus::AgentSnapshot*> robots, workers;
    for (const auto& [id, s] : latest_) {
        if (s.kind == "mobile") robots.push_back(&s);
        if (s.kind == "worker") workers.push_back(&s);
    }
    for (std::size_t i = 0; i < robots.size() && !danger; ++i) {
        double vi = speed_.count(robots[i]->id) ? speed_.at(robots[i]->id) : 0.0;
        for (std::size_t j = i + 1; j < robots.size() && !danger; ++j) {
            double vj = speed_.count(robots[j]->id) ? speed_.at(robots[j]->id) : 0.0;
            if (vi <= 0 && vj <= 0) continue; // a stationary pair can be released
            double gap = distance(robots[i]->pose.position(), robots[j]->pose.position()) - 0.6;
            if (gap < cfg_.plant.d_crit) danger = true;
        }
        if (vi <= 0) continue;
        Vec2 dir{std::cos(robots[i]->pose.heading), std::sin(robots[i]->pose.heading)};
        Vec2 a = robots[i]->pose.position();
        Vec2 b = a + dir * cfg_.plant.envelope_lookahead;
        for (const auto* w : workers) {
            if (point_segment_distance(w->pose.position(), a, b) < 0.45) danger = true;
        }
    }
    std::vector<bus::GlobalCommand> out;
    if (danger) {
        hazard_free_ = 0;
        if (!latched_) {
            latched_ = true;
            out.push_back(bus::GlobalCommand{"estop"});
        }
    } else if (latched_) {
        ++hazard_free_;
        if (hazard_free_ >= cfg_.plant.estop_hold) {
            latched_ = false;
            hazard_free_ = 0;
            out.push_back(bus::GlobalCommand{"release"});
        }
    }
    return out;
}

double PlantController::corridor_congestion(const PlantPercept& percept, const Vec2& from,
                                            const Vec2& to) const {
    // walk the straight-line cells between the two points
    double total = 0;
    double len = distance(from, to);
    int steps = std::max(1, static_cast<int>(len / (cell_ * 0.5)));
    std::set<int> visited;
    for (int s = 0; s <= steps; ++s) {
        double t = static_cast<double>(s) / steps;
        Vec2 p = from + (to - from) * t;
        int cx = std::clamp(static_cast<int>(p.x / cell_), 0, percept.congestion_cols - 1);
        int cy = std::clamp(static_cast<int>(p.y / cell_), 0, percept.congestion_rows - 1);
        int cell = cy * percept.congestion_cols + cx;
        if (visited.insert(cell).second) total += percept.congestion[cell];
    }
    return total;
}

std::vector<bus::NeedModulation>
PlantController::orchestrate(const PlantPercept& percept,
                             const std::vector<bus::AgentSnapshot>& free_robots, Tick tick) const {
    (void)tick;
    std::vector<std::string> tasks; // bench ids with full bins awaiting pickup
    for (const auto& bp : percept.benches)
        if (bp.full_bins > 0) tasks.push_back(bp.bench);
    if (tasks.empty() || free_robots.empty()) return {};

    std::vector<std::vector<double>> cost(free_robots.size(),
                                          std::vector<double>(tasks.size(), 0));
    for (std::size_t r = 0; r < free_robots.size(); ++r) {
        for (std::size_t t = 0; t < tasks.size(); ++t) {
            const world::BenchSpec* bench = cfg_.arena.bench(tasks[t]);
            Vec2 goal = bench ? bench->pose.position() : Vec2{0, 0};
            double travel = distance(free_robots[r].pose.position(), goal);
            double congestion =
                corridor_congestion(percept, free_robots[r].pose.position(), goal);
            cost[r][t] = travel + cfg_.plant.congestion_weight * congestion;
        }
    }
    auto assign = lexicographic_min_assignment(cost);

    std::vector<bus::NeedModulation> out;
    for (std::size_t r = 0; r < free_robots.size(); ++r) {
        if (assign[r] < 0) continue;
        bus::NeedModulation m;
        m.agent = free_robots[r].id;
        m.need = "transport:" + tasks[assign[r]];
        m.delta = cfg_.dac.modulation_cap;
        m.ttl = cfg_.plant.modulation_ttl;
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<bus::LtmBatch> PlantController::ltm_exchange(const std::vector<bus::LtmBatch>& digests,
                                                         Tick tick) {
    for (const auto& d : digests) {
        dac::SequenceMemory& pool = d.kind == "gripper" ? pool_gripper_ : pool_mobile_;
        int& dim = d.kind == "gripper" ? pool_gripper_dim_ : pool_mobile_dim_;
        if (!d.sequences.empty()) {
            int got = static_cast<int>(d.sequences.front().segments.empty()
                                           ? 0
                                           : d.sequences.front().segments[0].prototype.dim());
            if (dim < 0) dim = got;
            if (got != dim) {
                ++rejected_batches_; // dimension mismatch: sender's batch dropped
                continue;
            }
        }
        pool.merge(d.sequences, tick);
    }

    std::vector<bus::LtmBatch> out;
    for (const auto& [id, snap] : latest_) {
        if (snap.kind == "gripper") {
            bus::LtmBatch b;
            b.target = id;
            b.kind = "gripper";
            b.dim = pool_gripper_dim_;
            for (const auto& seq : pool_gripper_.sequences()) {
                bool who_known = false;
                for (const auto& seg : seq.segments)
                    if (seg.h5w.who) who_known = true;
                if (who_known) b.sequences.push_back(seq); // worker-adaptation knowledge
            }
            if (!b.sequences.empty()) out.push_back(std::move(b));
        } else if (snap.kind == "mobile") {
            bus::LtmBatch b;
            b.target = id;
            b.kind = "mobile";
            b.dim = pool_mobile_dim_;
            for (const auto& seq : pool_mobile_.sequences()) {
                if (seq.goal.rfind("deliver:", 0) == 0 || seq.goal == "charge")
                    b.sequences.push_back(seq); // route knowledge
            }
            if (!b.sequences.empty()) out.push_back(std::move(b));
        }
    }
    return out;
}

PlantDecisions PlantController::step(Tick tick, const std::vector<bus::Envelope>& inbox) {
    PlantDecisions out;

    std::vector<bus::AgentSnapshot> snapshots;
    std::vector<bus::LtmBatch> digests;
    for (const auto& env : inbox) {
        if (const auto* s = std::get_if<bus::AgentSnapshot>(&env.payload)) snapshots.push_back(*s);
        if (const auto* b = std::get_if<bus::LtmBatch>(&env.payload))
            if (b->target.empty()) digests.push_back(*b);
    }
    if (snapshots.empty() && digests.empty()) return out;

    PlantPercept percept = aggregate(snapshots, tick);
    for (const auto& s : snapshots)
        if (s.deliveries > 0) bench_service_[s.bench.empty() ? "?" : s.bench] += s.deliveries;

    auto commands = global_reflex(percept, tick);
    for (const auto& c : commands) {
        Event e;
        e.tick = tick;
        e.kind = c.command == "estop" ? event_kind::kEStop : event_kind::kRelease;
        e.agent = "plant";
        out.events.push_back(e);
    }
    out.commands = commands;

    if (tick % cfg_.plant.orchestrate_period == 0) {
        std::vector<bus::AgentSnapshot> free_robots;
        for (const auto& s : snapshots)
            if (s.kind == "mobile" && !s.loaded && s.battery > 0.2) free_robots.push_back(s);
        std::sort(free_robots.begin(), free_robots.end(),
                  [](const bus::AgentSnapshot& a, const bus::AgentSnapshot& b) {
                      return a.id < b.id;
                  });
        out.modulations = orchestrate(percept, free_robots, tick);
        for (const auto& m : out.modulations) {
            Event e;
            e.tick = tick;
            e.kind = event_kind::kAssign;
            e.agent = m.agent;
            e.extra = m.need;
            e.value = m.delta;
            out.events.push_back(e);
        }
    }

    if (!digests.empty()) out.ltm_batches = ltm_exchange(digests, tick);
    return out;
}

} // namespace recplant::plant
