#include "recplant/bench/experiments.hpp"

namespace recplant::bench {

using nlohmann::json;

namespace {

json base_arena() {
    json a;
    a["width"] = 10.0;
    a["height"] = 8.0;
    a["cell_size"] = 0.5;
    a["obstacles"] = json::array({{{"x", 4.2}, {"y", 2.2}, {"w", 0.6}, {"h", 2.6}},
                                  {{"x", 6.0}, {"y", 5.0}, {"w", 2.4}, {"h", 0.6}}});
    a["sorting_zone"] = {{"x", 0.2}, {"y", 0.2}, {"w", 1.6}, {"h", 1.6}};
    a["home_zone"] = {{"x", 0.2}, {"y", 0.2}, {"w", 1.6}, {"h", 1.6}};
    a["charge_zone"] = {{"x", 0.2}, {"y", 6.4}, {"w", 1.2}, {"h", 1.2}};
    return a;
}

json tv_model(const char* id, std::array<int, 4> order) {
    json m;
    m["id"] = id;
    m["components"] = json::array();
    const char* mats[4] = {"plastic", "metal", "paper", "hazardous"};
    const char* tools[4] = {"screwdriver", "wrench", "cutter", "tongs"};
    for (int i = 0; i < 4; ++i)
        m["components"].push_back({{"material", mats[i]},
                                   {"tool", tools[i]},
                                   {"duration", 20},
                                   {"velocity", {0.2, 0.6}},
                                   {"pressure", {0.3, 0.7}}});
    m["order"] = order;
    return m;
}

} // namespace

config::ScenarioConfig foraging_config() {
    json doc;
    doc["arena"] = base_arena();
    doc["arena"]["benches"] = json::array({{{"id", "b0"}, {"x", 8.8}, {"y", 6.8}, {"heading", 3.14159265}}});
    doc["arena"]["landmarks"] =
        json::array({{{"cue", 101}, {"x", 2.5}, {"y", 4.0}},
                     {{"cue", 102}, {"x", 5.0}, {"y", 2.0}},
                     {{"cue", 103}, {"x", 5.5}, {"y", 6.8}},
                     {{"cue", 104}, {"x", 7.5}, {"y", 4.2}}});
    doc["world"] = {{"bins_always_full", true}, {"cue_range", 4.0}};
    doc["agents"]["mobile_robots"] =
        json::array({{{"id", "m0"}, {"x", 1.0}, {"y", 1.0}, {"heading", 0.0}}});
    doc["dac"] = {{"eta", 0.25}, {"rho", 0.001}};
    doc["tuning"] = {{"transport_decay", 0.05}};
    doc["plant"] = {{"central", false}};
    doc["run"] = {{"ticks", 80000}, {"seed", 1}};
    return config::parse_config(doc);
}

config::ScenarioConfig navigation_config() {
    json doc;
    doc["arena"] = base_arena();
    doc["arena"]["benches"] =
        json::array({{{"id", "b0"}, {"x", 8.8}, {"y", 1.2}, {"heading", 3.14159265}},
                     {{"id", "b1"}, {"x", 8.8}, {"y", 6.8}, {"heading", 3.14159265}},
                     {{"id", "b2"}, {"x", 5.0}, {"y", 7.4}, {"heading", -1.5707963}}});
    doc["arena"]["landmarks"] = json::array({{{"cue", 101}, {"x", 2.5}, {"y", 4.0}},
                                             {{"cue", 102}, {"x", 5.0}, {"y", 2.0}},
                                             {{"cue", 103}, {"x", 7.5}, {"y", 4.2}}});
    doc["world"] = {{"auto_fill_period", 600}, {"cue_range", 4.0}};
    doc["agents"]["mobile_robots"] =
        json::array({{{"id", "m0"}, {"x", 0.8}, {"y", 0.8}, {"heading", 0.0}},
                     {{"id", "m1"}, {"x", 0.8}, {"y", 1.6}, {"heading", 0.0}},
                     {{"id", "m2"}, {"x", 1.6}, {"y", 0.8}, {"heading", 0.0}}});
    doc["dac"] = {{"eta", 0.25}, {"rho", 0.001}};
    doc["plant"] = {{"central", true}};
    doc["run"] = {{"ticks", 20000}, {"seed", 1}};
    return config::parse_config(doc);
}

config::ScenarioConfig generalization_config() {
    json doc;
    doc["arena"] = base_arena();
    doc["arena"]["benches"] =
        json::array({{{"id", "b0"}, {"x", 3.0}, {"y", 6.8}, {"heading", -1.5707963}},
                     {{"id", "b1"}, {"x", 7.0}, {"y", 6.8}, {"heading", -1.5707963}}});
    doc["world"] = {{"bin_capacity", 64}};
    doc["devices"]["models"] = json::array({tv_model("tv_a", {2, 0, 1, 3})});
    doc["devices"]["generator"] = {
        {"period", 400}, {"model", "tv_a"}, {"benches", {"b0", "b1"}}, {"until", 20000}};
    doc["agents"]["grippers"] =
        json::array({{{"id", "g0"}, {"bench", "b0"}, {"initial_standoff", 1.0}},
                     {{"id", "g1"}, {"bench", "b1"}, {"initial_standoff", 1.0}}});
    doc["agents"]["workers"] = json::array(
        {{{"id", "w0"}, {"bench", "b0"}, {"cue", 101}, {"trust", 0.95}, {"pace", 0.4}},
         {{"id", "w1"}, {"bench", "b1"}, {"cue", 102}, {"trust", 0.15}, {"pace", 0.4}}});
    doc["plant"] = {{"central", true}, {"exchange_period", 200}};
    doc["run"] = {{"ticks", 20000},
                  {"seed", 1},
                  {"swap", {{"tick", 10000}, {"workers", {"w0", "w1"}}}}};
    return config::parse_config(doc);
}

config::ScenarioConfig disassembly_config() {
    json doc;
    doc["arena"] = base_arena();
    doc["arena"]["benches"] =
        json::array({{{"id", "b0"}, {"x", 5.0}, {"y", 6.8}, {"heading", -1.5707963}}});
    doc["world"] = {{"bin_capacity", 64}};
    doc["devices"]["models"] = json::array({tv_model("tv_a", {2, 0, 1, 3})});
    doc["devices"]["generator"] = {
        {"period", 300}, {"model", "tv_a"}, {"benches", {"b0"}}, {"until", 6000}};
    doc["agents"]["grippers"] = json::array({{{"id", "g0"}, {"bench", "b0"}}});
    doc["agents"]["workers"] = json::array(
        {{{"id", "w0"}, {"bench", "b0"}, {"cue", 101}, {"trust", 0.8}, {"pace", 0.4}}});
    doc["plant"] = {{"central", false}};
    doc["run"] = {{"ticks", 6000}, {"seed", 1}};
    return config::parse_config(doc);
}

std::vector<std::uint64_t> seed_range(std::uint64_t base, int n) {
    std::vector<std::uint64_t> out;
    for (int i = 0; i < n; ++i) out.push_back(base + static_cast<std::uint64_t>(i));
    return out;
}

} // namespace recplant::bench
