#pragma once

#include <string>

#include <json.hpp>

#include "recplant/dac/adaptive.hpp"
#include "recplant/dac/memory.hpp"
#include "recplant/dac/needs.hpp"

namespace recplant::dac {

inline constexpr int kSnapshotVersion = 1;

// One agent's persistent memory: LTM sequences, association matrix and needs.
// Supports pretraining: snapshots saved by one run load at the start of the
// next.
nlohmann::json memory_to_json(const SequenceMemory& ltm, const AssociationMatrix& assoc,
                              const NeedState& needs);
void memory_from_json(const nlohmann::json& j, SequenceMemory& ltm, AssociationMatrix& assoc,
                      NeedState& needs);

nlohmann::json sequence_to_json(const Sequence& s);
Sequence sequence_from_json(const nlohmann::json& j);

struct SnapshotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace recplant::dac
