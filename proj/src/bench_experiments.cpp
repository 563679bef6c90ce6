#include "recplant/bench/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>

#include "recplant/sim/simulation.hpp"

namespace recplant::bench {

namespace {

int worker_count(int requested, std::size_t jobs) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 4;
    int n = requested > 0 ? requested : hw;
    return std::max(1, std::min<int>(n, static_cast<int>(jobs)));
}

// run the same job per seed on a small thread pool, results in seed order
template <typename F>
auto per_seed(const std::vector<std::uint64_t>& seeds, int threads, F job)
    -> std::vector<decltype(job(std::uint64_t{}))> {
    using R = decltype(job(std::uint64_t{}));
    std::vector<R> results(seeds.size());
    int pool = worker_count(threads, seeds.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> tids;
    for (int w = 0; w < pool; ++w)
        tids.emplace_back([&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= seeds.size()) return;
                results[i] = job(seeds[i]);
            }
        });
    for (auto& t : tids) t.join();
    return results;
}

} // namespace

ForagingResult run_foraging_phases(const config::ScenarioConfig& cfg,
                                   const std::vector<std::uint64_t>& seeds, int episodes,
                                   int threads) {
    if (cfg.mobiles.size() != 1)
        throw std::invalid_argument("foraging benchmark expects exactly one mobile robot");
    ForagingResult out;
    auto runs = per_seed(seeds, threads, [&](std::uint64_t seed) {
        sim::Simulation s(cfg, seed);
        s.run_until_deliveries(episodes, cfg.ticks);
        MetricsOptions opts;
        opts.phase_slices = true;
        ForagingRun run;
        run.seed = seed;
        run.metrics = compute_metrics(s.log(), cfg, opts);
        return run;
    });
    out.runs = std::move(runs);

    std::vector<std::pair<double, double>> occ, traj, rate;
    for (const auto& r : out.runs) {
        if (r.metrics.phases.size() != 3) continue;
        const auto& early = r.metrics.phases[0];
        const auto& late = r.metrics.phases[2];
        occ.push_back({early.occupancy, late.occupancy});
        traj.push_back({early.mean_traj_len, late.mean_traj_len});
        rate.push_back({late.collection_rate, early.collection_rate});
    }
    out.occupancy_drop = sign_test(occ);
    out.traj_len_drop = sign_test(traj);
    out.rate_gain = sign_test(rate);
    return out;
}

NavigationResult run_navigation_experiment(const config::ScenarioConfig& cfg,
                                           const std::vector<std::uint64_t>& seeds, int threads) {
    if (cfg.mobiles.size() < 2)
        throw std::invalid_argument("navigation experiment requires >= 2 mobile robots");
    if (cfg.arena.benches.size() < 2)
        throw std::invalid_argument("navigation experiment requires >= 2 benches");

    struct Pair {
        RunMetrics on, off;
    };
    auto runs = per_seed(seeds, threads, [&](std::uint64_t seed) {
        Pair p;
        {
            config::ScenarioConfig c = cfg;
            c.plant.central = true;
            sim::Simulation s(c, seed);
            s.run();
            p.on = compute_metrics(s.log(), c);
        }
        {
            config::ScenarioConfig c = cfg;
            c.plant.central = false;
            sim::Simulation s(c, seed);
            s.run();
            p.off = compute_metrics(s.log(), c);
        }
        return p;
    });

    NavigationResult out;
    out.seeds = seeds;
    for (const auto& p : runs) {
        out.central_on.push_back(p.on);
        out.central_off.push_back(p.off);
    }
    ConditionComparison entropy{"service_entropy", {}, {}};
    ConditionComparison near{"near_miss", {}, {}};
    ConditionComparison rate{"collection_rate", {}, {}};
    for (std::size_t i = 0; i < runs.size(); ++i) {
        entropy.pairs.push_back({runs[i].on.service_entropy, runs[i].off.service_entropy});
        near.pairs.push_back(
            {static_cast<double>(runs[i].on.near_miss), static_cast<double>(runs[i].off.near_miss)});
        rate.pairs.push_back({runs[i].on.collection_rate, runs[i].off.collection_rate});
    }
    entropy.test = sign_test(entropy.pairs);
    near.test = sign_test(near.pairs);
    rate.test = sign_test(rate.pairs);
    out.comparisons = {entropy, near, rate};
    return out;
}

double recovery_time_from_log(const sim::EventLog& log, const config::ScenarioConfig& cfg,
                              Tick swap_tick, double epsilon, Tick window) {
    // summed |standoff - D(trust)| per tick, after the swap
    std::map<Tick, double> err;
    Tick max_tick = swap_tick;
    for (const auto& rec : log.records()) {
        const auto* s = std::get_if<sim::AgentStateRec>(&rec);
        if (!s || s->kind != "gripper" || s->tick < swap_tick) continue;
        max_tick = std::max(max_tick, s->tick);
        const config::WorkerProfile* w = cfg.worker(s->worker);
        if (!w) {
            err[s->tick] += cfg.tuning.d_max; // no worker in sight counts as unadapted
            continue;
        }
        double d_pref =
            cfg.tuning.d_min + (1.0 - w->trust) * (cfg.tuning.d_max - cfg.tuning.d_min);
        err[s->tick] += std::abs(s->standoff - d_pref);
    }
    // first window whose mean stays below epsilon
    std::vector<double> series;
    for (Tick t = swap_tick; t <= max_tick; ++t)
        series.push_back(err.count(t) ? err[t] : 0.0);
    if (static_cast<Tick>(series.size()) < window) return static_cast<double>(series.size());
    double acc = 0;
    for (Tick i = 0; i < window; ++i) acc += series[i];
    for (std::size_t start = 0; start + window <= series.size(); ++start) {
        if (acc / window < epsilon) return static_cast<double>(start);
        if (start + window < series.size())
            acc += series[start + window] - series[start];
    }
    return static_cast<double>(series.size()); // never recovered within the run
}

GeneralizationResult run_generalization_experiment(const config::ScenarioConfig& cfg,
                                                   const std::vector<std::uint64_t>& seeds,
                                                   int threads) {
    if (cfg.grippers.size() < 2 || cfg.workers.size() < 2 || !cfg.swap)
        throw std::invalid_argument(
            "generalization experiment requires 2 grippers, 2 workers and a swap event");

    struct Triple {
        double on, off, naive;
    };
    auto runs = per_seed(seeds, threads, [&](std::uint64_t seed) {
        Triple t{};
        {
            config::ScenarioConfig c = cfg;
            c.plant.central = true;
            sim::Simulation s(c, seed);
            s.run();
            t.on = recovery_time_from_log(s.log(), c, c.swap->tick);
        }
        {
            config::ScenarioConfig c = cfg;
            c.plant.central = false;
            sim::Simulation s(c, seed);
            s.run();
            t.off = recovery_time_from_log(s.log(), c, c.swap->tick);
        }
        {
            config::ScenarioConfig c = cfg;
            c.plant.central = false;
            sim::Simulation s(c, seed);
            s.set_naive_grippers_after_swap(true);
            s.run();
            t.naive = recovery_time_from_log(s.log(), c, c.swap->tick);
        }
        return t;
    });

    GeneralizationResult out;
    out.seeds = seeds;
    for (const auto& t : runs) {
        out.recovery_on.push_back(t.on);
        out.recovery_off.push_back(t.off);
        out.recovery_naive.push_back(t.naive);
    }
    out.recovery.metric = "recovery_ticks";
    for (const auto& t : runs) out.recovery.pairs.push_back({t.on, t.off});
    out.recovery.test = sign_test(out.recovery.pairs);
    std::vector<std::pair<double, double>> off_naive;
    for (const auto& t : runs) off_naive.push_back({t.off, t.naive});
    out.off_vs_naive = sign_test(off_naive);
    return out;
}

DisassemblyResult run_disassembly_benchmark(const config::ScenarioConfig& cfg,
                                            const std::vector<std::uint64_t>& seeds,
                                            int threads) {
    struct Counts {
        int first = 0, trained = 0;
    };
    auto runs = per_seed(seeds, threads, [&](std::uint64_t seed) {
        sim::Simulation s(cfg, seed);
        s.run();
        // attempts per completed device episode, from the world event stream
        std::vector<int> attempts_per_episode;
        int attempts = 0;
        for (const auto& rec : s.log().records()) {
            const auto* e = std::get_if<Event>(&rec);
            if (!e) continue;
            if (e->kind == event_kind::kStepResult && e->outcome != "busy") ++attempts;
            if (e->kind == event_kind::kDeviceComplete) {
                attempts_per_episode.push_back(attempts);
                attempts = 0;
            }
        }
        Counts c;
        c.first = attempts_per_episode.empty() ? 0 : attempts_per_episode.front();
        c.trained = attempts_per_episode.size() > 5 ? attempts_per_episode[5] : 0;
        return c;
    });
    DisassemblyResult out;
    out.seeds = seeds;
    for (const auto& c : runs) {
        out.first_episode_attempts.push_back(c.first);
        out.trained_episode_attempts.push_back(c.trained);
    }
    return out;
}

Tick first_divergence_tick(const sim::EventLog& a, const sim::EventLog& b) {
    auto filtered = [](const sim::EventLog& log) {
        std::vector<std::pair<Tick, std::string>> out;
        for (const auto& rec : log.records()) {
            if (std::holds_alternative<sim::EnvelopeRec>(rec)) continue;
            if (const auto* e = std::get_if<Event>(&rec)) {
                if (e->kind == event_kind::kEStop || e->kind == event_kind::kRelease ||
                    e->kind == event_kind::kAssign)
                    continue;
            }
            Tick t = std::visit([](const auto& r) { return r.tick; }, rec);
            out.push_back({t, sim::record_to_json(rec).dump()});
        }
        return out;
    };
    auto fa = filtered(a), fb = filtered(b);
    for (std::size_t i = 0; i < std::min(fa.size(), fb.size()); ++i)
        if (fa[i].second != fb[i].second) return std::min(fa[i].first, fb[i].first);
    if (fa.size() != fb.size())
        return fa.size() < fb.size() ? (fa.empty() ? 0 : fa.back().first)
                                     : (fb.empty() ? 0 : fb.back().first);
    return -1;
}

Tick first_plant_delivery_tick(const sim::EventLog& log) {
    for (const auto& rec : log.records()) {
        const auto* env = std::get_if<sim::EnvelopeRec>(&rec);
        if (env && env->sender == "plant") return env->tick;
    }
    return -1;
}

} // namespace recplant::bench
