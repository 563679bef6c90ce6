#pragma once

#include <vector>

namespace recplant::plant {

// Minimum-cost one-to-one assignment (Jonker-Volgenant style shortest
// augmenting paths). cost is rows x cols; rectangular inputs are padded
// internally. Returns col index per row, -1 for rows left unassigned
// (only when rows > cols).
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost);

// total of the assigned real entries, summed in row order
double assignment_cost(const std::vector<std::vector<double>>& cost,
                       const std::vector<int>& assign);

// Among all minimum-cost assignments, the lexicographically smallest one in
// (row, col) reading order — the deterministic tie-break used by the
// orchestrator.
std::vector<int> lexicographic_min_assignment(const std::vector<std::vector<double>>& cost);

} // namespace recplant::plant
