#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "recplant/bench/experiments.hpp"
#include "recplant/bench/metrics.hpp"
#include "recplant/sim/simulation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace recplant;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string default_out_dir() {
    const char* env = std::getenv("RECPLANT_OUT_DIR");
    return env && *env ? env : ".";
}

json metrics_to_json(const bench::RunMetrics& m) {
    json j;
    j["ticks"] = m.ticks;
    j["deliveries"] = m.deliveries;
    j["occupancy"] = m.occupancy;
    j["mean_traj_len"] = m.mean_traj_len;
    j["collection_rate"] = m.collection_rate;
    j["near_miss"] = m.near_miss;
    j["collisions"] = m.collisions;
    j["service_entropy"] = m.service_entropy;
    j["entropy_defined"] = m.entropy_defined;
    j["adaptation_error"] = m.adaptation_error;
    j["degenerate"] = m.degenerate;
    for (const auto& p : m.phases)
        j["phases"][p.name] = {{"occupancy", p.occupancy},
                               {"mean_traj_len", p.mean_traj_len},
                               {"collection_rate", p.collection_rate},
                               {"deliveries", p.deliveries},
                               {"ticks", p.ticks}};
    return j;
}

json comparison_to_json(const bench::ConditionComparison& c) {
    json j;
    j["metric"] = c.metric;
    j["pairs"] = json::array();
    for (const auto& [on, off] : c.pairs) j["pairs"].push_back({{"on", on}, {"off", off}});
    j["win_fraction"] = c.test.win_fraction;
    j["p_value"] = c.test.p_value;
    j["n_effective"] = c.test.n_effective;
    j["defined"] = c.test.defined;
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << text;
    }
    fs::rename(tmp, path); // atomic publish
}

config::ScenarioConfig load_or_default(const std::string& path,
                                       config::ScenarioConfig (*fallback)()) {
    if (path.empty()) return fallback();
    return config::parse_config_file(path);
}

struct CommonRunFlags {
    std::string config_path;
    std::int64_t seed = 1;
    std::int64_t ticks = -1;
    std::string central; // "", "on", "off"
    std::string out;
    std::string snapshot_in, snapshot_out;
};

void apply_overrides(config::ScenarioConfig& cfg, const CommonRunFlags& flags) {
    if (flags.ticks >= 0) cfg.ticks = flags.ticks;
    if (flags.central == "on") cfg.plant.central = true;
    if (flags.central == "off") cfg.plant.central = false;
}

int cmd_run(const CommonRunFlags& flags) {
    config::ScenarioConfig cfg = config::parse_config_file(flags.config_path);
    apply_overrides(cfg, flags);
    sim::Simulation s(cfg, static_cast<std::uint64_t>(flags.seed));
    if (!flags.snapshot_in.empty()) {
        std::ifstream in(flags.snapshot_in);
        if (!in) throw std::runtime_error("cannot open snapshot: " + flags.snapshot_in);
        json snap;
        in >> snap;
        s.load_memory(snap);
    }
    s.run();
    if (!flags.snapshot_out.empty()) write_text(flags.snapshot_out, s.save_memory().dump(2));

    bench::RunMetrics m = bench::compute_metrics(s.log(), cfg);
    if (!flags.out.empty()) s.log().write_file(flags.out);
    json summary;
    summary["seed"] = flags.seed;
    summary["log_checksum"] = s.log().checksum();
    summary["metrics"] = metrics_to_json(m);
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_replay(const std::string& log_path) {
    sim::EventLog log = sim::EventLog::read_file(log_path);
    bench::RunMetrics m = bench::replay_metrics(log);
    json summary;
    summary["seed"] = log.seed();
    summary["metrics"] = metrics_to_json(m);
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_bench_foraging(const std::string& config_path, int seeds, const std::string& out_dir,
                       bool trajectories) {
    config::ScenarioConfig cfg = load_or_default(config_path, bench::foraging_config);
    auto result = bench::run_foraging_phases(cfg, bench::seed_range(1, seeds));

    std::string csv = bench::metrics_csv_header() + "\n";
    for (const auto& r : result.runs) csv += bench::metrics_csv_row("foraging", r.seed, r.metrics) + "\n";
    fs::path dir(out_dir);
    fs::create_directories(dir);
    write_text(dir / "metrics.csv", csv);

    json summary;
    summary["experiment"] = "foraging";
    summary["seeds"] = seeds;
    auto st = [](const bench::SignTest& t) {
        return json{{"win_fraction", t.win_fraction},
                    {"p_value", t.p_value},
                    {"n_effective", t.n_effective},
                    {"defined", t.defined}};
    };
    summary["occupancy_drop"] = st(result.occupancy_drop);
    summary["traj_len_drop"] = st(result.traj_len_drop);
    summary["rate_gain"] = st(result.rate_gain);
    for (const auto& r : result.runs)
        summary["runs"].push_back(
            {{"seed", r.seed}, {"metrics", metrics_to_json(r.metrics)}});
    write_text(dir / "summary.json", summary.dump(2));

    if (trajectories) {
        std::string tcsv = "seed,tick,id,x,y\n";
        sim::Simulation s(cfg, 1);
        s.run_until_deliveries(60, cfg.ticks);
        for (const auto& rec : s.log().records())
            if (const auto* a = std::get_if<sim::AgentStateRec>(&rec))
                if (a->kind == "mobile")
                    tcsv += "1," + std::to_string(a->tick) + "," + a->id + "," +
                            std::to_string(a->x) + "," + std::to_string(a->y) + "\n";
        write_text(dir / "trajectories.csv", tcsv);
    }
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_bench_navigation(const std::string& config_path, int seeds, const std::string& out_dir) {
    config::ScenarioConfig cfg = load_or_default(config_path, bench::navigation_config);
    auto result = bench::run_navigation_experiment(cfg, bench::seed_range(1, seeds));

    std::string csv = bench::metrics_csv_header() + "\n";
    for (std::size_t i = 0; i < result.seeds.size(); ++i) {
        csv += bench::metrics_csv_row("nav_on", result.seeds[i], result.central_on[i]) + "\n";
        csv += bench::metrics_csv_row("nav_off", result.seeds[i], result.central_off[i]) + "\n";
    }
    fs::path dir(out_dir);
    fs::create_directories(dir);
    write_text(dir / "metrics.csv", csv);

    json summary;
    summary["experiment"] = "navigation";
    summary["seeds"] = result.seeds.size();
    for (const auto& c : result.comparisons) summary["comparisons"].push_back(comparison_to_json(c));
    write_text(dir / "summary.json", summary.dump(2));
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_bench_generalization(const std::string& config_path, int seeds,
                             const std::string& out_dir) {
    config::ScenarioConfig cfg = load_or_default(config_path, bench::generalization_config);
    auto result = bench::run_generalization_experiment(cfg, bench::seed_range(1, seeds));

    json summary;
    summary["experiment"] = "generalization";
    summary["seeds"] = result.seeds.size();
    summary["recovery_on"] = result.recovery_on;
    summary["recovery_off"] = result.recovery_off;
    summary["recovery_naive"] = result.recovery_naive;
    summary["recovery"] = comparison_to_json(result.recovery);
    summary["off_vs_naive"] = {{"p_value", result.off_vs_naive.p_value},
                               {"n_effective", result.off_vs_naive.n_effective},
                               {"defined", result.off_vs_naive.defined}};
    fs::path dir(out_dir);
    fs::create_directories(dir);
    write_text(dir / "summary.json", summary.dump(2));
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"recplant: a DAC-driven micro recycling plant simulator"};
    app.require_subcommand(1);

    CommonRunFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "run one scenario and print metrics");
    run->add_option("--config", run_flags.config_path, "scenario config (JSON)")->required();
    run->add_option("--seed", run_flags.seed, "run seed");
    run->add_option("--ticks", run_flags.ticks, "override run length");
    run->add_option("--central", run_flags.central, "override central control: on|off")
        ->check(CLI::IsMember({"on", "off"}));
    run->add_option("--out", run_flags.out, "write the event log here (JSON lines)");
    run->add_option("--snapshot-in", run_flags.snapshot_in, "load a memory snapshot before tick 0");
    run->add_option("--snapshot-out", run_flags.snapshot_out, "save the final memory snapshot");

    std::string replay_log;
    CLI::App* replay = app.add_subcommand("replay", "recompute metrics from an event log");
    replay->add_option("--log", replay_log, "event log file")->required();

    CLI::App* bench_cmd = app.add_subcommand("bench", "experiment harness");
    bench_cmd->require_subcommand(1);
    std::string bench_config;
    int bench_seeds = 20;
    std::string bench_out = default_out_dir();
    bool bench_traj = false;
    CLI::App* bf = bench_cmd->add_subcommand("foraging", "single-robot phase progression");
    CLI::App* bn = bench_cmd->add_subcommand("navigation", "multi-robot central-control ablation");
    CLI::App* bg = bench_cmd->add_subcommand("generalization", "worker-swap knowledge transfer");
    for (CLI::App* b : {bf, bn, bg}) {
        b->add_option("--config", bench_config, "scenario config override (JSON)");
        b->add_option("--seeds", bench_seeds, "number of seeds");
        b->add_option("--out", bench_out, "output directory");
    }
    bf->add_flag("--trajectories", bench_traj, "also write trajectories.csv for seed 1");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(run_flags);
        if (*replay) return cmd_replay(replay_log);
        if (*bf) return cmd_bench_foraging(bench_config, bench_seeds, bench_out, bench_traj);
        if (*bn) return cmd_bench_navigation(bench_config, bench_seeds, bench_out);
        if (*bg) return cmd_bench_generalization(bench_config, bench_seeds, bench_out);
    } catch (const config::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const world::SimError& e) {
        std::cerr << "runtime invariant violation: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
