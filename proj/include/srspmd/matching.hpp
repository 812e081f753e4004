#pragma once

#include <cstdint>
#include <vector>

namespace srspmd {

/* Bipartite graph in CSR form, left -> right. `cost` is parallel to `to`
 * and may be left empty for unweighted matching. */
struct BipartiteGraph {
    int32_t n_left = 0, n_right = 0;
    std::vector<int64_t> offsets;  // size n_left + 1
    std::vector<int32_t> to;
    std::vector<int64_t> cost;

    int64_t edge_count() const { return static_cast<int64_t>(to.size()); }
};

struct MatchingResult {
    std::vector<int32_t> left_match;   // right index or -1
    std::vector<int32_t> right_match;  // left index or -1
    int32_t pairs = 0;
    int64_t total_cost = 0;
};

/* maximum-cardinality matching, Hopcroft-Karp */
MatchingResult max_matching(const BipartiteGraph& g);

/* Minimum total cost among all maximum-cardinality matchings, by successive
 * shortest augmenting paths with node potentials. Cardinality strictly
 * dominates cost: this is the potential-form equivalent of shifting every
 * edge cost below zero by a bound larger than the sum of all costs.
 * Costs must be non-negative. */
MatchingResult min_cost_max_matching(const BipartiteGraph& g);

}  // namespace srspmd
