#pragma once

#include <limits>
#include <vector>

namespace skg {

// Maximum-weight one-to-one assignment between rows and columns of `score`
// (rows x cols, scores >= 0). Unmatched entries contribute nothing. Returns
// the total score of the best assignment. Shortest-augmenting-path Hungarian
// on the negated matrix, O(n^3).
inline double max_weight_assignment(const std::vector<std::vector<double>>& score) {
    const int rows = static_cast<int>(score.size());
    if (rows == 0) return 0.0;
    const int cols = static_cast<int>(score[0].size());
    if (cols == 0) return 0.0;
    const int n = std::max(rows, cols);
    const double INF = std::numeric_limits<double>::infinity();

    // square cost matrix, padded with 0 (= "leave unmatched")
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) cost[i][j] = -score[i][j];

    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, INF);
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = 0;
            double delta = INF;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) { minv[j] = cur; way[j] = j0; }
                if (minv[j] < delta) { delta = minv[j]; j1 = j; }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) { u[p[j]] += delta; v[j] -= delta; }
                else minv[j] -= delta;
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        int i = p[j];
        if (i >= 1 && i <= rows && j <= cols) total += score[i - 1][j - 1];
    }
    return total;
}

} // namespace skg
