#include "recplant/core/action.hpp"

namespace recplant {

const char* action_name(const ActionPrimitive& a) {
    struct Namer {
        const char* operator()(const Idle&) { return "idle"; }
        const char* operator()(const Move&) { return "move"; }
        const char* operator()(const Lift&) { return "lift"; }
        const char* operator()(const Place&) { return "place"; }
        const char* operator()(const DisassembleStep&) { return "dis_step"; }
        const char* operator()(const PlaceComponent&) { return "place_component"; }
        const char* operator()(const Standoff&) { return "standoff"; }
        const char* operator()(const EmitGesture&) { return "gesture"; }
        const char* operator()(const Stop&) { return "stop"; }
        const char* operator()(const AvoidObstacle&) { return "avoid"; }
        const char* operator()(const SeekCharge&) { return "seek_charge"; }
        const char* operator()(const ServiceBench&) { return "service_bench"; }
        const char* operator()(const DeliverBin&) { return "deliver_bin"; }
        const char* operator()(const OrientCue&) { return "orient_cue"; }
        const char* operator()(const SetHeading&) { return "set_heading"; }
        const char* operator()(const Explore&) { return "explore"; }
        const char* operator()(const AttemptNext&) { return "attempt_next"; }
        const char* operator()(const RetreatStandoff&) { return "retreat"; }
    };
    return std::visit(Namer{}, a);
}

bool is_actuator_level(const ActionPrimitive& a) {
    return std::holds_alternative<Idle>(a) || std::holds_alternative<Move>(a) ||
           std::holds_alternative<Lift>(a) || std::holds_alternative<Place>(a) ||
           std::holds_alternative<DisassembleStep>(a) ||
           std::holds_alternative<PlaceComponent>(a) || std::holds_alternative<Standoff>(a) ||
           std::holds_alternative<EmitGesture>(a);
}

} // namespace recplant
