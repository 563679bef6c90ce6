#include "recplant/agents/gesture.hpp"

namespace recplant::agents {

const char* command_name(Command c) {
    switch (c) {
    case Command::Start: return "start";
    case Command::Stop: return "stop";
    case Command::RestPosition: return "rest_position";
    case Command::SpeedUp: return "speed_up";
    case Command::SlowDown: return "slow_down";
    }
    return "?";
}

std::optional<Command> gesture_to_command(const std::string& gesture) {
    if (gesture == "StartG") return Command::Start;
    if (gesture == "StopG") return Command::Stop;
    if (gesture == "RestG") return Command::RestPosition;
    if (gesture == "FasterG") return Command::SpeedUp;
    if (gesture == "SlowerG") return Command::SlowDown;
    return std::nullopt;
}

} // namespace recplant::agents
