#include "recplant/config/config.hpp"

#include <fstream>
#include <set>

#include "recplant/core/rng.hpp"

namespace recplant::config {

using nlohmann::json;

namespace {

struct Ctx {
    std::vector<std::string> errors;
    void err(std::string m) { errors.push_back(std::move(m)); }
};

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed, Ctx& c) {
    if (!j.is_object()) {
        c.err(path + ": expected an object");
        return;
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) c.err(path + ": unknown key '" + it.key() + "'");
    }
}

double num(const json& j, const std::string& path, const char* key, double def, Ctx& c,
           double lo = -1e300, double hi = 1e300, bool lo_strict = false, bool hi_strict = false) {
    if (!j.is_object() || !j.contains(key)) return def;
    if (!j[key].is_number()) {
        c.err(path + "." + key + ": expected a number");
        return def;
    }
    double v = j[key].get<double>();
    bool bad = lo_strict ? v <= lo : v < lo;
    bad = bad || (hi_strict ? v >= hi : v > hi);
    if (bad) {
        c.err(path + "." + key + ": value " + std::to_string(v) + " outside " +
              (lo_strict ? "(" : "[") + std::to_string(lo) + ", " + std::to_string(hi) +
              (hi_strict ? ")" : "]"));
        return def;
    }
    return v;
}

Tick integer(const json& j, const std::string& path, const char* key, Tick def, Ctx& c,
             Tick lo = -(1ll << 62), Tick hi = (1ll << 62)) {
    if (!j.is_object() || !j.contains(key)) return def;
    if (!j[key].is_number_integer()) {
        c.err(path + "." + key + ": expected an integer");
        return def;
    }
    Tick v = j[key].get<Tick>();
    if (v < lo || v > hi) {
        c.err(path + "." + key + ": value " + std::to_string(v) + " outside [" +
              std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return def;
    }
    return v;
}

std::string str(const json& j, const std::string& path, const char* key, const std::string& def,
                Ctx& c, bool required = false) {
    if (!j.is_object() || !j.contains(key)) {
        if (required) c.err(path + "." + key + ": required");
        return def;
    }
    if (!j[key].is_string()) {
        c.err(path + "." + key + ": expected a string");
        return def;
    }
    return j[key].get<std::string>();
}

bool boolean(const json& j, const std::string& path, const char* key, bool def, Ctx& c) {
    if (!j.is_object() || !j.contains(key)) return def;
    if (!j[key].is_boolean()) {
        c.err(path + "." + key + ": expected a boolean");
        return def;
    }
    return j[key].get<bool>();
}

Rect rect(const json& j, const std::string& path, Ctx& c) {
    check_keys(j, path, {"x", "y", "w", "h"}, c);
    Rect r;
    r.x = num(j, path, "x", 0, c);
    r.y = num(j, path, "y", 0, c);
    r.w = num(j, path, "w", 0, c, 0);
    r.h = num(j, path, "h", 0, c, 0);
    return r;
}

} // namespace

const WorkerProfile* ScenarioConfig::worker(const std::string& id) const {
    for (const auto& w : workers)
        if (w.id == id) return &w;
    return nullptr;
}

const WorkerProfile* ScenarioConfig::worker_at_bench(const std::string& bench) const {
    for (const auto& w : workers)
        if (w.bench == bench) return &w;
    return nullptr;
}

ScenarioConfig parse_config(const json& doc) {
    Ctx c;
    ScenarioConfig cfg;

    check_keys(doc, "$", {"arena", "world", "devices", "agents", "dac", "plant", "tuning", "run"},
               c);

    // ── arena ──
    const json& ja = doc.contains("arena") ? doc["arena"] : json::object();
    check_keys(ja, "arena",
               {"width", "height", "cell_size", "obstacles", "benches", "sorting_zone",
                "home_zone", "charge_zone", "conveyor", "landmarks"},
               c);
    cfg.arena.width = num(ja, "arena", "width", 10.0, c, 1.0, 1000.0);
    cfg.arena.height = num(ja, "arena", "height", 8.0, c, 1.0, 1000.0);
    cfg.arena.cell_size = num(ja, "arena", "cell_size", 0.5, c, 0.01, 10.0);
    if (ja.contains("obstacles")) {
        if (!ja["obstacles"].is_array()) c.err("arena.obstacles: expected an array");
        else
            for (std::size_t i = 0; i < ja["obstacles"].size(); ++i)
                cfg.arena.obstacles.push_back(
                    rect(ja["obstacles"][i], "arena.obstacles[" + std::to_string(i) + "]", c));
    }
    if (ja.contains("benches")) {
        if (!ja["benches"].is_array()) c.err("arena.benches: expected an array");
        else
            for (std::size_t i = 0; i < ja["benches"].size(); ++i) {
                const json& jb = ja["benches"][i];
                std::string path = "arena.benches[" + std::to_string(i) + "]";
                check_keys(jb, path, {"id", "x", "y", "heading"}, c);
                world::BenchSpec b;
                b.id = str(jb, path, "id", "", c, true);
                b.pose.x = num(jb, path, "x", 0, c);
                b.pose.y = num(jb, path, "y", 0, c);
                b.pose.heading = num(jb, path, "heading", 0, c);
                cfg.arena.benches.push_back(std::move(b));
            }
    }
    cfg.arena.sorting_zone = ja.contains("sorting_zone")
                                 ? rect(ja["sorting_zone"], "arena.sorting_zone", c)
                                 : Rect{0.2, 0.2, 1.6, 1.6};
    cfg.arena.home_zone = ja.contains("home_zone") ? rect(ja["home_zone"], "arena.home_zone", c)
                                                   : cfg.arena.sorting_zone;
    cfg.arena.charge_zone = ja.contains("charge_zone")
                                ? rect(ja["charge_zone"], "arena.charge_zone", c)
                                : Rect{0.2, 6.4, 1.2, 1.2};
    if (ja.contains("conveyor")) {
        const json& jc = ja["conveyor"];
        check_keys(jc, "arena.conveyor", {"points", "speed_mps"}, c);
        if (jc.contains("points")) {
            if (!jc["points"].is_array()) c.err("arena.conveyor.points: expected an array");
            else
                for (const auto& p : jc["points"]) {
                    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                        c.err("arena.conveyor.points: each point must be [x, y]");
                    else
                        cfg.arena.conveyor.points.push_back(
                            Vec2{p[0].get<double>(), p[1].get<double>()});
                }
        }
        cfg.arena.conveyor.speed =
            num(jc, "arena.conveyor", "speed_mps", 0.5, c, 0.0, 10.0) * ScenarioConfig::kDt;
    }
    if (ja.contains("landmarks")) {
        if (!ja["landmarks"].is_array()) c.err("arena.landmarks: expected an array");
        else
            for (std::size_t i = 0; i < ja["landmarks"].size(); ++i) {
                const json& jl = ja["landmarks"][i];
                std::string path = "arena.landmarks[" + std::to_string(i) + "]";
                check_keys(jl, path, {"cue", "x", "y"}, c);
                world::Landmark lm;
                lm.cue = static_cast<int>(integer(jl, path, "cue", -1, c, 100, 9999));
                lm.pos = {num(jl, path, "x", 0, c), num(jl, path, "y", 0, c)};
                cfg.arena.landmarks.push_back(lm);
            }
    }

    // ── world ──
    const json& jw = doc.contains("world") ? doc["world"] : json::object();
    check_keys(jw, "world",
               {"cue_range", "proximity_max", "proximity_rays", "gesture_range",
                "bins_always_full", "auto_fill_period", "bin_capacity", "lift_reach",
                "idle_drain", "move_drain", "charge_rate"},
               c);
    cfg.world.cue_range = num(jw, "world", "cue_range", 4.0, c, 0.1, 100.0);
    cfg.world.proximity_max = num(jw, "world", "proximity_max", 3.0, c, 0.1, 100.0);
    cfg.world.proximity_rays = static_cast<int>(integer(jw, "world", "proximity_rays", 8, c, 2, 64));
    cfg.world.gesture_range = num(jw, "world", "gesture_range", 3.0, c, 0.1, 100.0);
    cfg.world.bins_always_full = boolean(jw, "world", "bins_always_full", false, c);
    cfg.world.auto_fill_period = integer(jw, "world", "auto_fill_period", 0, c, 0, 1000000);
    cfg.world.bin_capacity = static_cast<int>(integer(jw, "world", "bin_capacity", 4, c, 1, 1000));
    cfg.world.lift_reach = num(jw, "world", "lift_reach", 0.5, c, 0.05, 5.0);
    cfg.world.idle_drain = num(jw, "world", "idle_drain", 1e-5, c, 0.0, 1.0);
    cfg.world.move_drain = num(jw, "world", "move_drain", 4e-5, c, 0.0, 1.0);
    cfg.world.charge_rate = num(jw, "world", "charge_rate", 2e-3, c, 0.0, 1.0);

    // ── devices ──
    const json& jd = doc.contains("devices") ? doc["devices"] : json::object();
    check_keys(jd, "devices", {"models", "arrivals", "generator"}, c);
    if (jd.contains("models")) {
        if (!jd["models"].is_array()) c.err("devices.models: expected an array");
        else
            for (std::size_t i = 0; i < jd["models"].size(); ++i) {
                const json& jm = jd["models"][i];
                std::string path = "devices.models[" + std::to_string(i) + "]";
                check_keys(jm, path, {"id", "components", "order"}, c);
                world::DeviceModel m;
                m.id = str(jm, path, "id", "", c, true);
                std::set<int> mats;
                if (!jm.contains("components") || !jm["components"].is_array() ||
                    jm["components"].size() != 4) {
                    c.err(path + ".components: exactly 4 components required");
                } else {
                    for (std::size_t k = 0; k < 4; ++k) {
                        const json& jc2 = jm["components"][k];
                        std::string cp = path + ".components[" + std::to_string(k) + "]";
                        check_keys(jc2, cp, {"material", "tool", "duration", "velocity", "pressure"},
                                   c);
                        world::ComponentSpec& comp = m.components[k];
                        std::string mat = str(jc2, cp, "material", "", c, true);
                        auto pm = world::material_from(mat);
                        if (!pm) c.err(cp + ".material: unknown material '" + mat + "'");
                        else {
                            comp.material = *pm;
                            mats.insert(static_cast<int>(*pm));
                        }
                        comp.tool = str(jc2, cp, "tool", "tool0", c);
                        comp.duration =
                            static_cast<int>(integer(jc2, cp, "duration", 20, c, 1, 100000));
                        auto band = [&](const char* key, double& lo, double& hi, double dlo,
                                        double dhi) {
                            if (!jc2.contains(key)) {
                                lo = dlo;
                                hi = dhi;
                                return;
                            }
                            const json& jb2 = jc2[key];
                            if (!jb2.is_array() || jb2.size() != 2 || !jb2[0].is_number() ||
                                !jb2[1].is_number()) {
                                c.err(cp + "." + key + ": expected [lo, hi]");
                                return;
                            }
                            lo = jb2[0].get<double>();
                            hi = jb2[1].get<double>();
                            if (lo > hi) c.err(cp + "." + key + ": lo > hi");
                        };
                        band("velocity", comp.velocity_lo, comp.velocity_hi, 0.2, 0.6);
                        band("pressure", comp.pressure_lo, comp.pressure_hi, 0.3, 0.7);
                    }
                    if (mats.size() != 4)
                        c.err(path + ".components: all four materials required exactly once");
                }
                if (jm.contains("order")) {
                    const json& jo = jm["order"];
                    std::set<int> seen;
                    if (!jo.is_array() || jo.size() != 4) c.err(path + ".order: expected 4 indices");
                    else {
                        for (std::size_t k = 0; k < 4; ++k) {
                            if (!jo[k].is_number_integer()) {
                                c.err(path + ".order: indices must be integers");
                                break;
                            }
                            int v = jo[k].get<int>();
                            if (v < 0 || v > 3) c.err(path + ".order: index out of range");
                            else {
                                m.valid_order[k] = v;
                                seen.insert(v);
                            }
                        }
                        if (seen.size() != 4) c.err(path + ".order: must be a permutation of 0..3");
                    }
                }
                cfg.models.push_back(std::move(m));
            }
    }
    if (jd.contains("arrivals")) {
        if (!jd["arrivals"].is_array()) c.err("devices.arrivals: expected an array");
        else
            for (std::size_t i = 0; i < jd["arrivals"].size(); ++i) {
                const json& jr = jd["arrivals"][i];
                std::string path = "devices.arrivals[" + std::to_string(i) + "]";
                check_keys(jr, path, {"tick", "model", "bench"}, c);
                world::DeviceArrival a;
                a.tick = integer(jr, path, "tick", 0, c, 0);
                a.model = str(jr, path, "model", "", c, true);
                a.bench = str(jr, path, "bench", "", c, true);
                cfg.arrivals.push_back(std::move(a));
            }
    }
    if (jd.contains("generator")) {
        const json& jg = jd["generator"];
        check_keys(jg, "devices.generator", {"period", "model", "benches", "until"}, c);
        Tick period = integer(jg, "devices.generator", "period", 400, c, 1);
        Tick until = integer(jg, "devices.generator", "until", 20000, c, 0);
        std::string model = str(jg, "devices.generator", "model", "", c, true);
        std::vector<std::string> benches;
        if (jg.contains("benches") && jg["benches"].is_array())
            for (const auto& b : jg["benches"]) benches.push_back(b.get<std::string>());
        if (benches.empty()) c.err("devices.generator.benches: at least one bench required");
        int k = 0;
        for (Tick t = 0; t < until; t += period)
            for (const auto& b : benches)
                cfg.arrivals.push_back(world::DeviceArrival{t, model, b}), ++k;
    }

    // ── agents ──
    const json& jag = doc.contains("agents") ? doc["agents"] : json::object();
    check_keys(jag, "agents", {"mobile_robots", "grippers", "workers"}, c);
    if (jag.contains("mobile_robots")) {
        for (std::size_t i = 0; i < jag["mobile_robots"].size(); ++i) {
            const json& jm = jag["mobile_robots"][i];
            std::string path = "agents.mobile_robots[" + std::to_string(i) + "]";
            check_keys(jm, path, {"id", "x", "y", "heading", "radius", "max_speed_mps"}, c);
            MobileSpec m;
            m.id = str(jm, path, "id", "", c, true);
            m.x = num(jm, path, "x", 1.0, c);
            m.y = num(jm, path, "y", 1.0, c);
            m.heading = num(jm, path, "heading", 0.0, c);
            m.radius = num(jm, path, "radius", 0.3, c, 0.05, 2.0);
            m.max_speed_mps = num(jm, path, "max_speed_mps", 0.5, c, 0.01, 10.0);
            cfg.mobiles.push_back(std::move(m));
        }
    }
    if (jag.contains("grippers")) {
        for (std::size_t i = 0; i < jag["grippers"].size(); ++i) {
            const json& jg2 = jag["grippers"][i];
            std::string path = "agents.grippers[" + std::to_string(i) + "]";
            check_keys(jg2, path, {"id", "bench", "reach", "initial_standoff"}, c);
            GripperSpec g;
            g.id = str(jg2, path, "id", "", c, true);
            g.bench = str(jg2, path, "bench", "", c, true);
            g.reach = num(jg2, path, "reach", 0.5, c, 0.05, 5.0);
            g.initial_standoff = num(jg2, path, "initial_standoff", 1.0, c, 0.0, 3.0);
            cfg.grippers.push_back(std::move(g));
        }
    }
    if (jag.contains("workers")) {
        for (std::size_t i = 0; i < jag["workers"].size(); ++i) {
            const json& jw2 = jag["workers"][i];
            std::string path = "agents.workers[" + std::to_string(i) + "]";
            check_keys(jw2, path, {"id", "bench", "cue", "trust", "skill", "pace", "gestures"}, c);
            WorkerProfile w;
            w.id = str(jw2, path, "id", "", c, true);
            w.bench = str(jw2, path, "bench", "", c, true);
            w.cue = static_cast<int>(integer(jw2, path, "cue", -1, c, 100, 9999));
            w.trust = num(jw2, path, "trust", 0.5, c, 0.0, 1.0);
            w.skill = num(jw2, path, "skill", 0.5, c, 0.0, 1.0);
            w.pace = num(jw2, path, "pace", 0.5, c, 0.0, 1.0);
            if (jw2.contains("gestures")) {
                for (std::size_t k = 0; k < jw2["gestures"].size(); ++k) {
                    const json& jg3 = jw2["gestures"][k];
                    std::string gp = path + ".gestures[" + std::to_string(k) + "]";
                    check_keys(jg3, gp, {"tick", "gesture"}, c);
                    GestureCue gc;
                    gc.tick = integer(jg3, gp, "tick", 0, c, 0);
                    gc.gesture = str(jg3, gp, "gesture", "", c, true);
                    w.gestures.push_back(std::move(gc));
                }
            }
            cfg.workers.push_back(std::move(w));
        }
    }

    // ── dac ──
    const json& jdac = doc.contains("dac") ? doc["dac"] : json::object();
    check_keys(jdac, "dac",
               {"eta", "rho", "theta_a", "theta_c", "gamma", "beta", "lambda", "stm_capacity",
                "ltm_capacity", "modulation_cap"},
               c);
    cfg.dac.eta = num(jdac, "dac", "eta", 0.05, c, 0.0, 1.0, true);
    cfg.dac.rho = num(jdac, "dac", "rho", 0.01, c, 0.0, 1.0);
    cfg.dac.theta_a = num(jdac, "dac", "theta_a", 0.5, c, 0.0, 1.0);
    cfg.dac.theta_c = num(jdac, "dac", "theta_c", 0.5, c, 0.0, 1.0);
    cfg.dac.gamma = num(jdac, "dac", "gamma", 0.9, c, 0.0, 1.0, true);
    cfg.dac.beta = num(jdac, "dac", "beta", 1.5, c, 1.0, 10.0);
    cfg.dac.lambda = num(jdac, "dac", "lambda", 0.95, c, 0.0, 1.0, true, true);
    cfg.dac.stm_capacity = static_cast<int>(integer(jdac, "dac", "stm_capacity", 50, c, 1, 100000));
    cfg.dac.ltm_capacity = static_cast<int>(integer(jdac, "dac", "ltm_capacity", 200, c, 1, 100000));
    cfg.dac.modulation_cap = num(jdac, "dac", "modulation_cap", 0.3, c, 0.0, 1.0);

    // ── plant ──
    const json& jp = doc.contains("plant") ? doc["plant"] : json::object();
    check_keys(jp, "plant",
               {"central", "bus_latency", "bus_drop", "exchange_period", "orchestrate_period",
                "modulation_ttl", "estop_hold", "d_crit", "congestion_weight", "throughput_target",
                "ema_weight", "ema_window", "envelope_lookahead"},
               c);
    cfg.plant.central = boolean(jp, "plant", "central", true, c);
    cfg.plant.bus_latency = integer(jp, "plant", "bus_latency", 1, c, 1, 1000);
    cfg.plant.bus_drop = num(jp, "plant", "bus_drop", 0.0, c, 0.0, 1.0, false, true);
    cfg.plant.exchange_period = integer(jp, "plant", "exchange_period", 200, c, 1);
    cfg.plant.orchestrate_period = integer(jp, "plant", "orchestrate_period", 50, c, 1);
    cfg.plant.modulation_ttl = integer(jp, "plant", "modulation_ttl", 200, c, 1);
    cfg.plant.estop_hold = integer(jp, "plant", "estop_hold", 10, c, 1);
    cfg.plant.d_crit = num(jp, "plant", "d_crit", 0.3, c, 0.0, 10.0);
    cfg.plant.congestion_weight = num(jp, "plant", "congestion_weight", 1.0, c, 0.0, 1000.0);
    cfg.plant.throughput_target = num(jp, "plant", "throughput_target", 20.0, c, 0.0, 1e6);
    cfg.plant.ema_weight = num(jp, "plant", "ema_weight", 0.1, c, 0.0, 1.0, true, true);
    cfg.plant.ema_window = integer(jp, "plant", "ema_window", 500, c, 1);
    cfg.plant.envelope_lookahead = num(jp, "plant", "envelope_lookahead", 1.0, c, 0.0, 10.0);

    // ── tuning ──
    const json& jt = doc.contains("tuning") ? doc["tuning"] : json::object();
    check_keys(jt, "tuning",
               {"d_min", "d_max", "d_stop", "delta_approach", "delta_retreat", "discomfort_unit",
                "avoid_range", "battery_low_drive", "transport_decay", "explore_hold",
                "worker_speed_mps", "worker_loop_radius", "rest_standoff"},
               c);
    cfg.tuning.d_min = num(jt, "tuning", "d_min", 0.4, c, 0.0, 10.0);
    cfg.tuning.d_max = num(jt, "tuning", "d_max", 1.2, c, 0.0, 10.0);
    cfg.tuning.d_stop = num(jt, "tuning", "d_stop", 0.5, c, 0.0, 10.0);
    cfg.tuning.delta_approach = num(jt, "tuning", "delta_approach", 0.002, c, 0.0, 1.0);
    cfg.tuning.delta_retreat = num(jt, "tuning", "delta_retreat", 0.01, c, 0.0, 1.0);
    cfg.tuning.discomfort_unit = num(jt, "tuning", "discomfort_unit", 0.04, c, 1e-6, 1.0);
    cfg.tuning.avoid_range = num(jt, "tuning", "avoid_range", 0.5, c, 0.0, 10.0);
    cfg.tuning.battery_low_drive = num(jt, "tuning", "battery_low_drive", 0.3, c, 0.0, 10.0);
    cfg.tuning.transport_decay = num(jt, "tuning", "transport_decay", 0.0008, c, 0.0, 1.0);
    cfg.tuning.explore_hold = integer(jt, "tuning", "explore_hold", 12, c, 1, 10000);
    cfg.tuning.worker_speed_mps = num(jt, "tuning", "worker_speed_mps", 0.3, c, 0.0, 10.0);
    cfg.tuning.worker_loop_radius = num(jt, "tuning", "worker_loop_radius", 0.85, c, 0.1, 10.0);
    cfg.tuning.rest_standoff = num(jt, "tuning", "rest_standoff", 1.2, c, 0.0, 3.0);
    if (cfg.tuning.d_min > cfg.tuning.d_max) c.err("tuning: d_min > d_max");

    // ── run ──
    const json& jr = doc.contains("run") ? doc["run"] : json::object();
    check_keys(jr, "run", {"ticks", "seed", "swap"}, c);
    cfg.ticks = integer(jr, "run", "ticks", 20000, c, 0);
    cfg.seed = static_cast<std::uint64_t>(integer(jr, "run", "seed", 1, c, 0));
    if (jr.contains("swap")) {
        const json& js = jr["swap"];
        check_keys(js, "run.swap", {"tick", "workers"}, c);
        SwapEvent sw;
        sw.tick = integer(js, "run.swap", "tick", 0, c, 0);
        if (!js.contains("workers") || !js["workers"].is_array() || js["workers"].size() != 2) {
            c.err("run.swap.workers: expected exactly two worker ids");
        } else {
            sw.worker_a = js["workers"][0].get<std::string>();
            sw.worker_b = js["workers"][1].get<std::string>();
        }
        cfg.swap = sw;
    }

    // ── cross references and uniqueness ──
    std::set<std::string> ids;
    auto unique_id = [&](const std::string& id, const std::string& what) {
        if (id.empty()) return;
        if (!ids.insert(id).second) c.err(what + ": duplicate id '" + id + "'");
    };
    std::set<std::string> bench_ids;
    for (const auto& b : cfg.arena.benches) {
        unique_id(b.id, "arena.benches");
        bench_ids.insert(b.id);
    }
    for (const auto& m : cfg.mobiles) unique_id(m.id, "agents.mobile_robots");
    for (const auto& g : cfg.grippers) {
        unique_id(g.id, "agents.grippers");
        if (!bench_ids.count(g.bench))
            c.err("agents.grippers: gripper '" + g.id + "' references unknown bench '" + g.bench +
                  "'");
    }
    std::set<std::string> worker_benches;
    for (const auto& w : cfg.workers) {
        unique_id(w.id, "agents.workers");
        if (!bench_ids.count(w.bench))
            c.err("agents.workers: worker '" + w.id + "' references unknown bench '" + w.bench +
                  "'");
        else if (!worker_benches.insert(w.bench).second)
            c.err("agents.workers: more than one worker bound to bench '" + w.bench + "'");
    }
    std::set<std::string> model_ids;
    for (const auto& m : cfg.models) {
        unique_id(m.id, "devices.models");
        model_ids.insert(m.id);
    }
    for (const auto& a : cfg.arrivals) {
        if (!model_ids.count(a.model))
            c.err("devices.arrivals: unknown model '" + a.model + "'");
        if (!bench_ids.count(a.bench)) c.err("devices.arrivals: unknown bench '" + a.bench + "'");
    }
    std::set<int> cues;
    for (const auto& lm : cfg.arena.landmarks)
        if (lm.cue >= 0 && !cues.insert(lm.cue).second)
            c.err("arena.landmarks: duplicate cue id " + std::to_string(lm.cue));
    for (const auto& w : cfg.workers)
        if (w.cue >= 0 && !cues.insert(w.cue).second)
            c.err("agents.workers: duplicate cue id " + std::to_string(w.cue));
    if (cfg.swap) {
        if (!cfg.worker(cfg.swap->worker_a))
            c.err("run.swap: unknown worker '" + cfg.swap->worker_a + "'");
        if (!cfg.worker(cfg.swap->worker_b))
            c.err("run.swap: unknown worker '" + cfg.swap->worker_b + "'");
    }

    auto arena_problems = cfg.arena.finalize();
    for (auto& p : arena_problems) c.err(p);

    if (!c.errors.empty()) throw ConfigError(std::move(c.errors));
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
    }
    return parse_config(doc);
}

nlohmann::json ScenarioConfig::to_json() const {
    json doc;
    json& ja = doc["arena"];
    ja["width"] = arena.width;
    ja["height"] = arena.height;
    ja["cell_size"] = arena.cell_size;
    ja["obstacles"] = json::array();
    for (const auto& o : arena.obstacles)
        ja["obstacles"].push_back({{"x", o.x}, {"y", o.y}, {"w", o.w}, {"h", o.h}});
    ja["benches"] = json::array();
    for (const auto& b : arena.benches)
        ja["benches"].push_back(
            {{"id", b.id}, {"x", b.pose.x}, {"y", b.pose.y}, {"heading", b.pose.heading}});
    auto jr = [](const Rect& r) {
        return json{{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}};
    };
    ja["sorting_zone"] = jr(arena.sorting_zone);
    ja["home_zone"] = jr(arena.home_zone);
    ja["charge_zone"] = jr(arena.charge_zone);
    if (!arena.conveyor.points.empty()) {
        json pts = json::array();
        for (const auto& p : arena.conveyor.points) pts.push_back({p.x, p.y});
        ja["conveyor"] = {{"points", pts}, {"speed_mps", arena.conveyor.speed / kDt}};
    }
    ja["landmarks"] = json::array();
    for (const auto& lm : arena.landmarks)
        ja["landmarks"].push_back({{"cue", lm.cue}, {"x", lm.pos.x}, {"y", lm.pos.y}});

    json& jw = doc["world"];
    jw["cue_range"] = world.cue_range;
    jw["proximity_max"] = world.proximity_max;
    jw["proximity_rays"] = world.proximity_rays;
    jw["gesture_range"] = world.gesture_range;
    jw["bins_always_full"] = world.bins_always_full;
    jw["auto_fill_period"] = world.auto_fill_period;
    jw["bin_capacity"] = world.bin_capacity;
    jw["lift_reach"] = world.lift_reach;
    jw["idle_drain"] = world.idle_drain;
    jw["move_drain"] = world.move_drain;
    jw["charge_rate"] = world.charge_rate;

    json& jd = doc["devices"];
    jd["models"] = json::array();
    for (const auto& m : models) {
        json jm;
        jm["id"] = m.id;
        jm["components"] = json::array();
        for (const auto& comp : m.components)
            jm["components"].push_back({{"material", world::material_name(comp.material)},
                                        {"tool", comp.tool},
                                        {"duration", comp.duration},
                                        {"velocity", {comp.velocity_lo, comp.velocity_hi}},
                                        {"pressure", {comp.pressure_lo, comp.pressure_hi}}});
        jm["order"] = m.valid_order;
        jd["models"].push_back(jm);
    }
    jd["arrivals"] = json::array();
    for (const auto& a : arrivals)
        jd["arrivals"].push_back({{"tick", a.tick}, {"model", a.model}, {"bench", a.bench}});

    json& jag = doc["agents"];
    jag["mobile_robots"] = json::array();
    for (const auto& m : mobiles)
        jag["mobile_robots"].push_back({{"id", m.id},
                                        {"x", m.x},
                                        {"y", m.y},
                                        {"heading", m.heading},
                                        {"radius", m.radius},
                                        {"max_speed_mps", m.max_speed_mps}});
    jag["grippers"] = json::array();
    for (const auto& g : grippers)
        jag["grippers"].push_back({{"id", g.id},
                                   {"bench", g.bench},
                                   {"reach", g.reach},
                                   {"initial_standoff", g.initial_standoff}});
    jag["workers"] = json::array();
    for (const auto& w : workers) {
        json jw2 = {{"id", w.id},     {"bench", w.bench}, {"cue", w.cue},
                    {"trust", w.trust}, {"skill", w.skill}, {"pace", w.pace}};
        if (!w.gestures.empty()) {
            jw2["gestures"] = json::array();
            for (const auto& g : w.gestures)
                jw2["gestures"].push_back({{"tick", g.tick}, {"gesture", g.gesture}});
        }
        jag["workers"].push_back(jw2);
    }

    doc["dac"] = {{"eta", dac.eta},
                  {"rho", dac.rho},
                  {"theta_a", dac.theta_a},
                  {"theta_c", dac.theta_c},
                  {"gamma", dac.gamma},
                  {"beta", dac.beta},
                  {"lambda", dac.lambda},
                  {"stm_capacity", dac.stm_capacity},
                  {"ltm_capacity", dac.ltm_capacity},
                  {"modulation_cap", dac.modulation_cap}};
    doc["plant"] = {{"central", plant.central},
                    {"bus_latency", plant.bus_latency},
                    {"bus_drop", plant.bus_drop},
                    {"exchange_period", plant.exchange_period},
                    {"orchestrate_period", plant.orchestrate_period},
                    {"modulation_ttl", plant.modulation_ttl},
                    {"estop_hold", plant.estop_hold},
                    {"d_crit", plant.d_crit},
                    {"congestion_weight", plant.congestion_weight},
                    {"throughput_target", plant.throughput_target},
                    {"ema_weight", plant.ema_weight},
                    {"ema_window", plant.ema_window},
                    {"envelope_lookahead", plant.envelope_lookahead}};
    doc["tuning"] = {{"d_min", tuning.d_min},
                     {"d_max", tuning.d_max},
                     {"d_stop", tuning.d_stop},
                     {"delta_approach", tuning.delta_approach},
                     {"delta_retreat", tuning.delta_retreat},
                     {"discomfort_unit", tuning.discomfort_unit},
                     {"avoid_range", tuning.avoid_range},
                     {"battery_low_drive", tuning.battery_low_drive},
                     {"transport_decay", tuning.transport_decay},
                     {"explore_hold", tuning.explore_hold},
                     {"worker_speed_mps", tuning.worker_speed_mps},
                     {"worker_loop_radius", tuning.worker_loop_radius},
                     {"rest_standoff", tuning.rest_standoff}};
    doc["run"]["ticks"] = ticks;
    doc["run"]["seed"] = seed;
    if (swap)
        doc["run"]["swap"] = {{"tick", swap->tick},
                              {"workers", {swap->worker_a, swap->worker_b}}};
    return doc;
}

std::uint64_t ScenarioConfig::checksum(bool include_central) const {
    json j = to_json();
    if (!include_central) j["plant"].erase("central");
    return fnv1a64(j.dump());
}

} // namespace recplant::config
