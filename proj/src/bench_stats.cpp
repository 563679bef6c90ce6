#include "recplant/bench/stats.hpp"

#include <algorithm>
#include <cmath>

namespace recplant::bench {

namespace {
double binom_pmf(int n, int k) {
    // C(n,k) * 0.5^n computed in logs for stability
    double log_c = 0;
    for (int i = 0; i < k; ++i) log_c += std::log((n - i) / static_cast<double>(i + 1));
    return std::exp(log_c - n * std::log(2.0));
}
} // namespace

SignTest sign_test(const std::vector<std::pair<double, double>>& pairs) {
    SignTest t;
    for (const auto& [a, b] : pairs) {
        if (a == b) continue;
        ++t.n_effective;
        if (a > b) ++t.wins;
    }
    if (t.n_effective == 0) return t; // undefined, flagged by defined=false
    t.defined = true;
    t.win_fraction = static_cast<double>(t.wins) / t.n_effective;
    double tail_hi = 0, tail_lo = 0;
    for (int k = t.wins; k <= t.n_effective; ++k) tail_hi += binom_pmf(t.n_effective, k);
    for (int k = 0; k <= t.wins; ++k) tail_lo += binom_pmf(t.n_effective, k);
    t.p_value = std::min(1.0, 2.0 * std::min(tail_hi, tail_lo));
    return t;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace recplant::bench
