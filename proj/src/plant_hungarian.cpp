#include "recplant/plant/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace recplant::plant {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// square JV on an n x n matrix; returns col per row
std::vector<int> solve_square(const std::vector<std::vector<double>>& a) {
    const int n = static_cast<int>(a.size());
    std::vector<double> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0); // p[col] = row matched to col (1-based)
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] >= 1) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

std::vector<std::vector<double>> pad_square(const std::vector<std::vector<double>>& cost,
                                            double pad_value) {
    const int rows = static_cast<int>(cost.size());
    const int cols = rows ? static_cast<int>(cost[0].size()) : 0;
    const int n = std::max(rows, cols);
    std::vector<std::vector<double>> a(n, std::vector<double>(n, pad_value));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a[i][j] = cost[i][j];
    return a;
}

double pad_cost_for(const std::vector<std::vector<double>>& cost) {
    double m = 1.0;
    for (const auto& row : cost)
        for (double v : row) m = std::max(m, std::abs(v));
    return 4.0 * m + 1.0;
}
} // namespace

std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
    const int rows = static_cast<int>(cost.size());
    if (rows == 0) return {};
    const int cols = static_cast<int>(cost[0].size());
    if (cols == 0) return std::vector<int>(rows, -1);
    auto a = pad_square(cost, pad_cost_for(cost));
    auto assign = solve_square(a);
    assign.resize(rows);
    for (int i = 0; i < rows; ++i)
        if (assign[i] >= cols) assign[i] = -1; // matched to a padding column
    return assign;
}

double assignment_cost(const std::vector<std::vector<double>>& cost,
                       const std::vector<int>& assign) {
    double total = 0;
    for (std::size_t i = 0; i < assign.size(); ++i)
        if (assign[i] >= 0) total += cost[i][assign[i]];
    return total;
}

namespace {
// optimal (total, cardinality) over an induced submatrix
std::pair<double, int> sub_optimum(const std::vector<std::vector<double>>& cost,
                                   const std::vector<int>& row_ids,
                                   const std::vector<int>& col_ids) {
    if (row_ids.empty() || col_ids.empty()) return {0.0, 0};
    std::vector<std::vector<double>> sub(row_ids.size(),
                                         std::vector<double>(col_ids.size(), 0));
    for (std::size_t r = 0; r < row_ids.size(); ++r)
        for (std::size_t cidx = 0; cidx < col_ids.size(); ++cidx)
            sub[r][cidx] = cost[row_ids[r]][col_ids[cidx]];
    auto assign = hungarian(sub);
    int count = 0;
    for (int a : assign) count += a >= 0 ? 1 : 0;
    return {assignment_cost(sub, assign), count};
}
} // namespace

std::vector<int> lexicographic_min_assignment(const std::vector<std::vector<double>>& cost) {
    const int rows = static_cast<int>(cost.size());
    if (rows == 0) return {};
    const int cols = static_cast<int>(cost[0].size());
    auto base = hungarian(cost);
    const double best_total = assignment_cost(cost, base);
    int best_count = 0;
    for (int a : base) best_count += a >= 0 ? 1 : 0;

    // Greedily pin each row to the smallest column (unassigned ranks last)
    // that keeps both the optimal total and the optimal cardinality reachable.
    auto close = [&](double a, double b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(b)); };
    std::vector<int> fixed(rows, -1);
    std::vector<char> col_used(cols, false);
    double fixed_cost = 0;
    int fixed_count = 0;
    for (int i = 0; i < rows; ++i) {
        std::vector<int> rest_rows;
        for (int r = i + 1; r < rows; ++r) rest_rows.push_back(r);
        bool pinned = false;
        for (int cand = 0; cand < cols && !pinned; ++cand) {
            if (col_used[cand]) continue;
            std::vector<int> rest_cols;
            for (int cc = 0; cc < cols; ++cc)
                if (!col_used[cc] && cc != cand) rest_cols.push_back(cc);
            auto [sub_total, sub_count] = sub_optimum(cost, rest_rows, rest_cols);
            if (fixed_count + 1 + sub_count == best_count &&
                close(fixed_cost + cost[i][cand] + sub_total, best_total)) {
                fixed[i] = cand;
                col_used[cand] = true;
                fixed_cost += cost[i][cand];
                ++fixed_count;
                pinned = true;
            }
        }
        // otherwise the row stays unassigned (only possible when rows > cols)
    }
    return fixed;
}

} // namespace recplant::plant
