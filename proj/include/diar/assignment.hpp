#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace diar {

// Maximum-weight bipartite matching over a dense nonnegative integer
// weight matrix (rows x columns, unmatched cells simply contribute 0).

// Best achievable total weight.
std::int64_t max_matching_value(const std::vector<std::vector<std::int64_t>>& weights);

// A canonical optimal matching as (row, column) pairs: among all optimal
// matchings it fixes pairs greedily in lexicographic (column, row) order,
// and pairs of weight 0 are never part of the result. The output is sorted
// by column and independent of any solver internals.
std::vector<std::pair<std::size_t, std::size_t>> max_weight_matching(
    const std::vector<std::vector<std::int64_t>>& weights);

}  // namespace diar
