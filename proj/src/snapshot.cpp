#include "recplant/dac/snapshot.hpp"

#include "recplant/core/action.hpp"

namespace recplant::dac {

using nlohmann::json;

namespace {

json action_to_json(const ActionPrimitive& a) {
    json j;
    j["n"] = action_name(a);
    if (const auto* mv = std::get_if<Move>(&a)) {
        j["v"] = mv->v;
        j["o"] = mv->omega;
    } else if (const auto* sh = std::get_if<SetHeading>(&a)) {
        j["th"] = sh->theta;
    } else if (const auto* ds = std::get_if<DisassembleStep>(&a)) {
        j["c"] = ds->component;
        j["vel"] = ds->velocity;
        j["p"] = ds->pressure;
    } else if (const auto* so = std::get_if<Standoff>(&a)) {
        j["d"] = so->delta;
        j["abs"] = so->absolute;
        j["tg"] = so->target;
    }
    return j;
}

ActionPrimitive action_from_json(const json& j) {
    const std::string n = j.value("n", "idle");
    if (n == "move") return Move{j.value("v", 0.0), j.value("o", 0.0)};
    if (n == "set_heading") return SetHeading{j.value("th", 0.0)};
    if (n == "dis_step")
        return DisassembleStep{j.value("c", 0), j.value("vel", 0.0), j.value("p", 0.0)};
    if (n == "standoff")
        return Standoff{j.value("d", 0.0), j.value("abs", false), j.value("tg", 0.0)};
    if (n == "lift") return Lift{};
    if (n == "place") return Place{};
    if (n == "place_component") return PlaceComponent{};
    if (n == "stop") return Stop{};
    return Idle{};
}

json segment_to_json(const MemorySegment& s) {
    json j;
    j["p"] = s.prototype.v;
    j["a"] = action_to_json(s.action);
    json h;
    if (s.h5w.who) h["who"] = *s.h5w.who;
    h["what"] = s.h5w.what;
    h["where"] = s.h5w.where;
    h["when"] = s.h5w.when;
    h["why"] = s.h5w.why;
    h["how"] = s.h5w.how;
    j["h"] = h;
    j["og"] = {{"a", s.origin.agent}, {"t", s.origin.tick}};
    return j;
}

MemorySegment segment_from_json(const json& j) {
    MemorySegment s;
    s.prototype.v = j.at("p").get<std::vector<double>>();
    s.action = action_from_json(j.at("a"));
    const json& h = j.at("h");
    if (h.contains("who")) s.h5w.who = h["who"].get<int>();
    s.h5w.what = h.value("what", "");
    s.h5w.where = h.value("where", "");
    s.h5w.when = h.value("when", Tick{0});
    s.h5w.why = h.value("why", "");
    s.h5w.how = h.value("how", "");
    s.origin.agent = j.at("og").at("a").get<std::string>();
    s.origin.tick = j.at("og").at("t").get<Tick>();
    return s;
}

} // namespace

json sequence_to_json(const Sequence& s) {
    json j;
    j["goal"] = s.goal;
    j["value"] = s.value;
    j["uses"] = s.use_count;
    j["og"] = {{"a", s.origin.agent}, {"t", s.origin.tick}};
    j["segs"] = json::array();
    for (const auto& seg : s.segments) j["segs"].push_back(segment_to_json(seg));
    return j;
}

Sequence sequence_from_json(const json& j) {
    Sequence s;
    s.goal = j.value("goal", "");
    s.value = j.value("value", 0.0);
    s.use_count = j.value("uses", 0);
    s.origin.agent = j.at("og").at("a").get<std::string>();
    s.origin.tick = j.at("og").at("t").get<Tick>();
    for (const auto& seg : j.at("segs")) s.segments.push_back(segment_from_json(seg));
    s.primes.assign(s.segments.size(), 1.0);
    return s;
}

json memory_to_json(const SequenceMemory& ltm, const AssociationMatrix& assoc,
                    const NeedState& needs) {
    json j;
    j["version"] = kSnapshotVersion;
    j["ltm"] = json::array();
    for (const auto& s : ltm.sequences()) j["ltm"].push_back(sequence_to_json(s));
    json w = json::array();
    for (int r = 0; r < assoc.responses(); ++r) w.push_back(assoc.row(r));
    j["assoc"] = {{"rows", assoc.responses()}, {"dim", assoc.dim()}, {"w", w}};
    json n = json::object();
    for (const auto& [id, need] : needs.all())
        n[id] = {{"level", need.level}, {"setpoint", need.setpoint}, {"gain", need.gain}};
    j["needs"] = n;
    return j;
}

void memory_from_json(const json& j, SequenceMemory& ltm, AssociationMatrix& assoc,
                      NeedState& needs) {
    int version = j.value("version", -1);
    if (version != kSnapshotVersion)
        throw SnapshotError("memory snapshot version mismatch: file has " +
                            std::to_string(version) + ", this build reads " +
                            std::to_string(kSnapshotVersion));
    if (j.contains("ltm")) {
        for (const auto& js : j["ltm"]) {
            Sequence s = sequence_from_json(js);
            if (!s.segments.empty() &&
                static_cast<int>(s.segments[0].prototype.dim()) != assoc.dim())
                throw SnapshotError("memory snapshot dimension mismatch");
            ltm.insert(std::move(s), 0);
        }
    }
    if (j.contains("assoc")) {
        const json& ja = j["assoc"];
        if (ja.value("rows", -1) != assoc.responses() || ja.value("dim", -1) != assoc.dim())
            throw SnapshotError("association matrix shape mismatch in snapshot");
        for (int r = 0; r < assoc.responses(); ++r)
            assoc.row(r) = ja["w"][r].get<std::vector<double>>();
    }
    if (j.contains("needs")) {
        for (auto it = j["needs"].begin(); it != j["needs"].end(); ++it) {
            if (!needs.has(it.key())) continue;
            needs.set_level(it.key(), it.value().value("level", 1.0));
        }
    }
}

} // namespace recplant::dac
