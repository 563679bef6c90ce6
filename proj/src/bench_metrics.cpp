#include "recplant/bench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace recplant::bench {

namespace {

struct RobotTrack {
    Tick tick = -1;
    double x = 0, y = 0;
    bool seen = false;
};

double preferred_distance(const config::ScenarioConfig& cfg, const std::string& worker_id) {
    const config::WorkerProfile* w = cfg.worker(worker_id);
    if (!w) return -1;
    return cfg.tuning.d_min + (1.0 - w->trust) * (cfg.tuning.d_max - cfg.tuning.d_min);
}

} // namespace

RunMetrics compute_metrics(const sim::EventLog& log, const config::ScenarioConfig& cfg,
                           const MetricsOptions& opts) {
    RunMetrics m;
    const int free_cells = std::max(1, cfg.arena.free_cell_count());

    std::map<std::string, RobotTrack> tracks;
    std::set<int> visited;
    double path_len = 0;
    std::vector<Tick> delivery_ticks;
    std::map<std::string, int> bench_service;

    // near-miss needs per-tick robot positions; records arrive tick-ordered
    Tick cur_tick = -1;
    std::vector<std::pair<double, double>> tick_positions;
    auto flush_tick = [&]() {
        for (std::size_t i = 0; i < tick_positions.size(); ++i)
            for (std::size_t j = i + 1; j < tick_positions.size(); ++j) {
                double dx = tick_positions[i].first - tick_positions[j].first;
                double dy = tick_positions[i].second - tick_positions[j].second;
                if (std::sqrt(dx * dx + dy * dy) < opts.d_near) ++m.near_miss;
            }
        tick_positions.clear();
    };

    for (const auto& rec : log.records()) {
        if (const auto* s = std::get_if<sim::AgentStateRec>(&rec)) {
            m.ticks = std::max(m.ticks, s->tick + 1);
            if (s->kind == "mobile") {
                if (s->tick != cur_tick) {
                    flush_tick();
                    cur_tick = s->tick;
                }
                tick_positions.push_back({s->x, s->y});
                auto& tr = tracks[s->id];
                if (tr.seen) {
                    double dx = s->x - tr.x, dy = s->y - tr.y;
                    path_len += std::sqrt(dx * dx + dy * dy);
                }
                tr = RobotTrack{s->tick, s->x, s->y, true};
                visited.insert(cfg.arena.cell_of(Vec2{s->x, s->y}));
            } else if (s->kind == "gripper" && !s->worker.empty()) {
                double d_pref = preferred_distance(cfg, s->worker);
                if (d_pref >= 0) m.adaptation_error += std::abs(s->standoff - d_pref);
            }
        } else if (const auto* e = std::get_if<Event>(&rec)) {
            m.ticks = std::max(m.ticks, e->tick + 1);
            if (e->kind == event_kind::kDelivery) {
                ++m.deliveries;
                delivery_ticks.push_back(e->tick);
                bench_service[e->bench] += 1;
            } else if (e->kind == event_kind::kCollision) {
                ++m.collisions;
            }
        }
    }
    flush_tick();

    m.occupancy = static_cast<double>(visited.size()) / free_cells;
    m.mean_traj_len = m.deliveries > 0 ? path_len / m.deliveries : path_len;
    m.collection_rate = m.ticks > 0 ? m.deliveries * 1000.0 / static_cast<double>(m.ticks) : 0;
    m.degenerate = m.deliveries == 0;

    const std::size_t n_benches = cfg.arena.benches.size();
    if (!bench_service.empty() && n_benches > 1) {
        double total = 0;
        for (const auto& [b, n] : bench_service) total += n;
        double h = 0;
        for (const auto& [b, n] : bench_service) {
            if (n == 0) continue;
            double q = n / total;
            h -= q * std::log(q);
        }
        m.service_entropy = h / std::log(static_cast<double>(n_benches));
        m.entropy_defined = true;
    }

    if (opts.phase_slices && m.deliveries >= 3) {
        // episode index thirds -> tick windows
        int per = m.deliveries / 3;
        std::vector<std::pair<Tick, Tick>> windows;
        Tick start = 0;
        windows.push_back({start, delivery_ticks[per - 1]});
        windows.push_back({delivery_ticks[per - 1] + 1, delivery_ticks[2 * per - 1]});
        windows.push_back({delivery_ticks[2 * per - 1] + 1, delivery_ticks.back()});
        const char* names[3] = {"early", "middle", "late"};
        for (int p = 0; p < 3; ++p) {
            PhaseMetrics pm;
            pm.name = names[p];
            std::set<int> cells;
            double len = 0;
            std::map<std::string, RobotTrack> tr2;
            int dels = 0;
            for (const auto& rec : log.records()) {
                if (const auto* s = std::get_if<sim::AgentStateRec>(&rec)) {
                    if (s->kind != "mobile" || s->tick < windows[p].first ||
                        s->tick > windows[p].second)
                        continue;
                    auto& tr = tr2[s->id];
                    if (tr.seen) {
                        double dx = s->x - tr.x, dy = s->y - tr.y;
                        len += std::sqrt(dx * dx + dy * dy);
                    }
                    tr = RobotTrack{s->tick, s->x, s->y, true};
                    cells.insert(cfg.arena.cell_of(Vec2{s->x, s->y}));
                } else if (const auto* e = std::get_if<Event>(&rec)) {
                    if (e->kind == event_kind::kDelivery && e->tick >= windows[p].first &&
                        e->tick <= windows[p].second)
                        ++dels;
                }
            }
            pm.deliveries = dels;
            pm.ticks = windows[p].second - windows[p].first + 1;
            pm.occupancy = static_cast<double>(cells.size()) / free_cells;
            pm.mean_traj_len = dels > 0 ? len / dels : len;
            pm.collection_rate = pm.ticks > 0 ? dels * 1000.0 / static_cast<double>(pm.ticks) : 0;
            m.phases.push_back(pm);
        }
    }
    return m;
}

RunMetrics replay_metrics(const sim::EventLog& log, const MetricsOptions& opts) {
    config::ScenarioConfig cfg = config::parse_config(log.config());
    return compute_metrics(log, cfg, opts);
}

std::string metrics_csv_header() {
    return "label,seed,ticks,deliveries,occupancy,mean_traj_len,collection_rate,near_miss,"
           "collisions,service_entropy,adaptation_error,degenerate";
}

std::string metrics_csv_row(const std::string& label, std::uint64_t seed, const RunMetrics& m) {
    std::ostringstream os;
    os << label << ',' << seed << ',' << m.ticks << ',' << m.deliveries << ',' << m.occupancy
       << ',' << m.mean_traj_len << ',' << m.collection_rate << ',' << m.near_miss << ','
       << m.collisions << ',' << m.service_entropy << ',' << m.adaptation_error << ','
       << (m.degenerate ? 1 : 0);
    return os.str();
}

} // namespace recplant::bench
