#pragma once

#include <optional>
#include <string>

namespace recplant::agents {

// StartG/StopG/RestG/FasterG/SlowerG -> worker commands; unknown symbols map
// to nothing.
enum class Command { Start, Stop, RestPosition, SpeedUp, SlowDown };

const char* command_name(Command c);
std::optional<Command> gesture_to_command(const std::string& gesture);

} // namespace recplant::agents
