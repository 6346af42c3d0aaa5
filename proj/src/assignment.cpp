#include "diar/assignment.hpp"

#include <limits>
#include <stdexcept>

namespace diar {

namespace {

// Hungarian algorithm with potentials on a square cost matrix (1-indexed),
// minimizing total cost. Returns the optimal cost.
std::int64_t hungarian_min(const std::vector<std::vector<std::int64_t>>& cost) {
    const auto n = static_cast<int>(cost.size());
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> u(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::int64_t> v(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> match(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<std::int64_t> min_slack(static_cast<std::size_t>(n) + 1, kInf);
        std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
        do {
            used[static_cast<std::size_t>(j0)] = true;
            const int i0 = match[static_cast<std::size_t>(j0)];
            std::int64_t delta = kInf;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    continue;
                }
                const std::int64_t cur = cost[static_cast<std::size_t>(i0 - 1)]
                                             [static_cast<std::size_t>(j - 1)] -
                                         u[static_cast<std::size_t>(i0)] -
                                         v[static_cast<std::size_t>(j)];
                if (cur < min_slack[static_cast<std::size_t>(j)]) {
                    min_slack[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (min_slack[static_cast<std::size_t>(j)] < delta) {
                    delta = min_slack[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    min_slack[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    return -v[0];
}

void check_weights(const std::vector<std::vector<std::int64_t>>& weights) {
    const std::size_t cols = weights.empty() ? 0 : weights.front().size();
    for (const auto& row : weights) {
        if (row.size() != cols) {
            throw std::invalid_argument("weight matrix rows differ in length");
        }
        for (std::int64_t w : row) {
            if (w < 0) {
                throw std::invalid_argument("weights must be nonnegative");
            }
        }
    }
}

// Optimal value over a subset of rows and columns.
std::int64_t restricted_value(const std::vector<std::vector<std::int64_t>>& weights,
                              const std::vector<std::size_t>& rows,
                              const std::vector<std::size_t>& cols) {
    if (rows.empty() || cols.empty()) {
        return 0;
    }
    const std::size_t n = std::max(rows.size(), cols.size());
    std::vector<std::vector<std::int64_t>> cost(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            cost[r][c] = -weights[rows[r]][cols[c]];
        }
    }
    return -hungarian_min(cost);
}

}  // namespace

std::int64_t max_matching_value(const std::vector<std::vector<std::int64_t>>& weights) {
    check_weights(weights);
    std::vector<std::size_t> rows(weights.size());
    std::vector<std::size_t> cols(weights.empty() ? 0 : weights.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i] = i;
    }
    for (std::size_t j = 0; j < cols.size(); ++j) {
        cols[j] = j;
    }
    return restricted_value(weights, rows, cols);
}

std::vector<std::pair<std::size_t, std::size_t>> max_weight_matching(
    const std::vector<std::vector<std::int64_t>>& weights) {
    check_weights(weights);
    std::vector<std::size_t> rows(weights.size());
    std::vector<std::size_t> cols(weights.empty() ? 0 : weights.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i] = i;
    }
    for (std::size_t j = 0; j < cols.size(); ++j) {
        cols[j] = j;
    }
    std::vector<std::pair<std::size_t, std::size_t>> result;
    std::int64_t remaining_target = restricted_value(weights, rows, cols);
    const std::size_t num_cols = cols.size();
    for (std::size_t c = 0; c < num_cols && remaining_target > 0; ++c) {
        for (std::size_t ri = 0; ri < rows.size(); ++ri) {
            const std::size_t r = rows[ri];
            const std::int64_t w = weights[r][c];
            if (w <= 0) {
                continue;
            }
            std::vector<std::size_t> sub_rows = rows;
            sub_rows.erase(sub_rows.begin() + static_cast<std::ptrdiff_t>(ri));
            std::vector<std::size_t> sub_cols;
            for (std::size_t other : cols) {
                if (other > c) {
                    sub_cols.push_back(other);
                }
            }
            if (w + restricted_value(weights, sub_rows, sub_cols) == remaining_target) {
                result.emplace_back(r, c);
                rows = std::move(sub_rows);
                remaining_target -= w;
                break;
            }
        }
        std::erase(cols, c);
    }
    return result;
}

}  // namespace diar
