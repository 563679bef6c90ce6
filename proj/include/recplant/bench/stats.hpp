#pragma once

#include <utility>
#include <vector>

namespace recplant::bench {

struct SignTest {
    int n_effective = 0; // pairs after dropping ties
    int wins = 0;        // first element strictly greater
    double win_fraction = 0;
    double p_value = 1.0; // exact two-sided binomial
    bool defined = false; // false when every pair ties
};

// Exact two-sided binomial sign test on (a, b) pairs; ties dropped.
SignTest sign_test(const std::vector<std::pair<double, double>>& pairs);

double median(std::vector<double> values);

} // namespace recplant::bench
