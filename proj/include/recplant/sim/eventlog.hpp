#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "recplant/core/events.hpp"

namespace recplant::sim {

using Tick = std::int64_t;

inline constexpr int kLogVersion = 1;

// per-tick agent state sample, the trajectory stream behind every metric
struct AgentStateRec {
    Tick tick = 0;
    std::string id;
    std::string kind; // mobile | gripper
    double x = 0, y = 0, heading = 0;
    double battery = 1.0;
    bool loaded = false;
    bool halted = false;
    std::string layer;
    double standoff = 0;    // grippers
    std::string worker;     // current worker id (grippers)
    std::string goal;
};

// a delivered bus envelope, mirrored for replay
struct EnvelopeRec {
    Tick tick = 0;
    std::string loop;
    std::string sender;
    std::uint64_t seq = 0;
    std::string target;
};

using LogRecord = std::variant<Event, AgentStateRec, EnvelopeRec>;

struct LogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Append-only run record with a self-describing header (version, seed and the
// fully resolved config), serialized as JSON lines.
class EventLog {
public:
    EventLog() = default;
    EventLog(std::uint64_t seed, nlohmann::json resolved_config, std::uint64_t config_checksum);

    void append(LogRecord rec);
    const std::vector<LogRecord>& records() const { return records_; }
    std::uint64_t seed() const { return seed_; }
    const nlohmann::json& config() const { return config_; }
    std::uint64_t config_checksum() const { return config_checksum_; }
    int version() const { return version_; }
    Tick last_tick() const { return last_tick_; }

    std::string serialize() const;
    void write(std::ostream& os) const;
    void write_file(const std::string& path) const;
    std::uint64_t checksum() const; // fnv1a of the serialized form

    static EventLog parse(std::istream& is);
    static EventLog read_file(const std::string& path);

private:
    int version_ = kLogVersion;
    std::uint64_t seed_ = 0;
    std::uint64_t config_checksum_ = 0;
    nlohmann::json config_;
    std::vector<LogRecord> records_;
    Tick last_tick_ = 0;
};

nlohmann::json record_to_json(const LogRecord& rec);
LogRecord record_from_json(const nlohmann::json& j);

} // namespace recplant::sim
