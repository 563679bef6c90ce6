#include "recplant/sim/eventlog.hpp"

#include <fstream>
#include <sstream>

#include "recplant/core/rng.hpp"

namespace recplant::sim {

using nlohmann::json;

EventLog::EventLog(std::uint64_t seed, json resolved_config, std::uint64_t config_checksum)
    : seed_(seed), config_checksum_(config_checksum), config_(std::move(resolved_config)) {}

void EventLog::append(LogRecord rec) {
    Tick t = std::visit([](const auto& r) { return r.tick; }, rec);
    if (t < last_tick_)
        throw LogError("log ticks must be non-decreasing (got " + std::to_string(t) + " after " +
                       std::to_string(last_tick_) + ")");
    last_tick_ = t;
    records_.push_back(std::move(rec));
}

json record_to_json(const LogRecord& rec) {
    json j;
    if (const auto* e = std::get_if<Event>(&rec)) {
        j["r"] = "ev";
        j["t"] = e->tick;
        j["k"] = e->kind;
        if (!e->agent.empty()) j["a"] = e->agent;
        if (!e->bench.empty()) j["b"] = e->bench;
        if (!e->bin.empty()) j["bin"] = e->bin;
        if (!e->material.empty()) j["m"] = e->material;
        if (!e->model.empty()) j["mo"] = e->model;
        if (!e->worker.empty()) j["w"] = e->worker;
        if (!e->gesture.empty()) j["g"] = e->gesture;
        if (!e->outcome.empty()) j["o"] = e->outcome;
        if (!e->extra.empty()) j["x"] = e->extra;
        if (e->component >= 0) j["c"] = e->component;
        if (e->value != 0.0) j["v"] = e->value;
        if (e->dx != 0.0 || e->dy != 0.0 || e->dphi != 0.0) {
            j["dx"] = e->dx;
            j["dy"] = e->dy;
            j["dp"] = e->dphi;
        }
    } else if (const auto* s = std::get_if<AgentStateRec>(&rec)) {
        j["r"] = "as";
        j["t"] = s->tick;
        j["id"] = s->id;
        j["kd"] = s->kind;
        j["x"] = s->x;
        j["y"] = s->y;
        j["h"] = s->heading;
        j["bat"] = s->battery;
        if (s->loaded) j["ld"] = true;
        if (s->halted) j["hl"] = true;
        j["ly"] = s->layer;
        if (s->kind == "gripper") j["so"] = s->standoff;
        if (!s->worker.empty()) j["w"] = s->worker;
        if (!s->goal.empty()) j["gl"] = s->goal;
    } else if (const auto* v = std::get_if<EnvelopeRec>(&rec)) {
        j["r"] = "env";
        j["t"] = v->tick;
        j["lp"] = v->loop;
        j["s"] = v->sender;
        j["q"] = v->seq;
        if (!v->target.empty()) j["tg"] = v->target;
    }
    return j;
}

LogRecord record_from_json(const json& j) {
    const std::string r = j.at("r").get<std::string>();
    if (r == "ev") {
        Event e;
        e.tick = j.at("t").get<Tick>();
        e.kind = j.at("k").get<std::string>();
        e.agent = j.value("a", "");
        e.bench = j.value("b", "");
        e.bin = j.value("bin", "");
        e.material = j.value("m", "");
        e.model = j.value("mo", "");
        e.worker = j.value("w", "");
        e.gesture = j.value("g", "");
        e.outcome = j.value("o", "");
        e.extra = j.value("x", "");
        e.component = j.value("c", -1);
        e.value = j.value("v", 0.0);
        e.dx = j.value("dx", 0.0);
        e.dy = j.value("dy", 0.0);
        e.dphi = j.value("dp", 0.0);
        return e;
    }
    if (r == "as") {
        AgentStateRec s;
        s.tick = j.at("t").get<Tick>();
        s.id = j.at("id").get<std::string>();
        s.kind = j.at("kd").get<std::string>();
        s.x = j.at("x").get<double>();
        s.y = j.at("y").get<double>();
        s.heading = j.at("h").get<double>();
        s.battery = j.at("bat").get<double>();
        s.loaded = j.value("ld", false);
        s.halted = j.value("hl", false);
        s.layer = j.value("ly", "");
        s.standoff = j.value("so", 0.0);
        s.worker = j.value("w", "");
        s.goal = j.value("gl", "");
        return s;
    }
    if (r == "env") {
        EnvelopeRec v;
        v.tick = j.at("t").get<Tick>();
        v.loop = j.at("lp").get<std::string>();
        v.sender = j.at("s").get<std::string>();
        v.seq = j.at("q").get<std::uint64_t>();
        v.target = j.value("tg", "");
        return v;
    }
    throw LogError("unknown log record kind '" + r + "'");
}

std::string EventLog::serialize() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

void EventLog::write(std::ostream& os) const {
    json hdr;
    hdr["r"] = "hdr";
    hdr["version"] = version_;
    hdr["seed"] = seed_;
    hdr["config_checksum"] = config_checksum_;
    hdr["config"] = config_;
    os << hdr.dump() << "\n";
    for (const auto& rec : records_) os << record_to_json(rec).dump() << "\n";
}

void EventLog::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw LogError("cannot write log file: " + path);
    write(out);
}

std::uint64_t EventLog::checksum() const { return fnv1a64(serialize()); }

EventLog EventLog::parse(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw LogError("empty log: header missing");
    json hdr = json::parse(line);
    if (!hdr.contains("r") || hdr["r"] != "hdr") throw LogError("log header missing");
    int version = hdr.value("version", -1);
    if (version != kLogVersion)
        throw LogError("log version mismatch: file has " + std::to_string(version) +
                       ", this build reads " + std::to_string(kLogVersion));
    EventLog log(hdr.value("seed", std::uint64_t{0}), hdr.value("config", json::object()),
                 hdr.value("config_checksum", std::uint64_t{0}));
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            log.append(record_from_json(json::parse(line)));
        } catch (const std::exception& e) {
            throw LogError("truncated or corrupt log at line " + std::to_string(line_no) +
                           " (last valid tick " + std::to_string(log.last_tick()) +
                           "): " + e.what());
        }
    }
    return log;
}

EventLog EventLog::read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LogError("cannot open log file: " + path);
    return parse(in);
}

} // namespace recplant::sim
