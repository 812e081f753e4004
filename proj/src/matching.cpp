#include "srspmd/matching.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace srspmd {

namespace {

constexpr int32_t kFree = -1;

struct HopcroftKarp {
    const BipartiteGraph& g;
    std::vector<int32_t> lm, rm;
    std::vector<int32_t> layer;
    std::vector<int32_t> queue;

    explicit HopcroftKarp(const BipartiteGraph& g_)
        : g(g_), lm(g_.n_left, kFree), rm(g_.n_right, kFree), layer(g_.n_left, -1) {}

    bool bfs() {
        queue.clear();
        for (int32_t u = 0; u < g.n_left; u++) {
            if (lm[u] == kFree) {
                layer[u] = 0;
                queue.push_back(u);
            } else {
                layer[u] = -1;
            }
        }
        bool found = false;
        for (size_t qi = 0; qi < queue.size(); qi++) {
            int32_t u = queue[qi];
            for (int64_t i = g.offsets[u]; i < g.offsets[u + 1]; i++) {
                int32_t v = g.to[i];
                int32_t w = rm[v];
                if (w == kFree) {
                    found = true;
                } else if (layer[w] < 0) {
                    layer[w] = layer[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        return found;
    }

    bool dfs(int32_t u) {
        for (int64_t i = g.offsets[u]; i < g.offsets[u + 1]; i++) {
            int32_t v = g.to[i];
            int32_t w = rm[v];
            if (w == kFree || (layer[w] == layer[u] + 1 && dfs(w))) {
                lm[u] = v;
                rm[v] = u;
                return true;
            }
        }
        layer[u] = -1;
        return false;
    }

    int32_t solve() {
        int32_t pairs = 0;
        while (bfs()) {
            for (int32_t u = 0; u < g.n_left; u++)
                if (lm[u] == kFree && dfs(u)) pairs++;
        }
        return pairs;
    }
};

/* min cost among parallel (u, v) edges; the solvers always match along the
 * cheapest one */
int64_t matched_edge_cost(const BipartiteGraph& g, int32_t u, int32_t v) {
    int64_t best = std::numeric_limits<int64_t>::max();
    for (int64_t i = g.offsets[u]; i < g.offsets[u + 1]; i++)
        if (g.to[i] == v) best = std::min(best, g.cost[i]);
    return best;
}

}  // namespace

MatchingResult max_matching(const BipartiteGraph& g) {
    HopcroftKarp hk(g);
    MatchingResult res;
    res.pairs = hk.solve();
    res.left_match = std::move(hk.lm);
    res.right_match = std::move(hk.rm);
    if (!g.cost.empty()) {
        for (int32_t u = 0; u < g.n_left; u++) {
            if (res.left_match[u] == kFree) continue;
            res.total_cost += matched_edge_cost(g, u, res.left_match[u]);
        }
    }
    return res;
}

MatchingResult min_cost_max_matching(const BipartiteGraph& g) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const int32_t nl = g.n_left, nr = g.n_right;
    for (int64_t c : g.cost)
        if (c < 0) throw std::invalid_argument("min_cost_max_matching: negative cost");

    std::vector<int32_t> lm(nl, kFree), rm(nr, kFree);
    std::vector<double> pot_l(nl, 0), pot_r(nr, 0);
    std::vector<double> dist_l(nl), dist_r(nr);
    std::vector<int64_t> parent_edge(nr, -1);   // CSR index of the edge that set dist_r
    std::vector<int32_t> parent_right(nl, -1);  // right node we reached this left through
    std::vector<uint8_t> settled_r(nr);
    int64_t total_cost = 0;
    int32_t pairs = 0;

    /* one augmentation per round, Dijkstra over reduced costs from all
     * currently unmatched left nodes; stops when no augmenting path exists */
    for (;;) {
        std::fill(dist_l.begin(), dist_l.end(), kInf);
        std::fill(dist_r.begin(), dist_r.end(), kInf);
        std::fill(settled_r.begin(), settled_r.end(), 0);
        using Entry = std::pair<double, int32_t>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;

        auto relax_from_left = [&](int32_t u) {
            for (int64_t i = g.offsets[u]; i < g.offsets[u + 1]; i++) {
                int32_t v = g.to[i];
                if (rm[v] == u) continue;
                double c = static_cast<double>(g.cost.empty() ? 0 : g.cost[i]);
                double rd = dist_l[u] + c + pot_l[u] - pot_r[v];
                if (rd < dist_r[v]) {
                    dist_r[v] = rd;
                    parent_edge[v] = i;
                    heap.emplace(rd, v);
                }
            }
        };

        for (int32_t u = 0; u < nl; u++) {
            if (lm[u] == kFree) {
                dist_l[u] = 0;
                parent_right[u] = -1;
                relax_from_left(u);
            }
        }

        int32_t reached_free = -1;
        double best_free = kInf;
        while (!heap.empty()) {
            auto [d, v] = heap.top();
            heap.pop();
            if (settled_r[v] || d > dist_r[v]) continue;
            settled_r[v] = 1;
            if (rm[v] == kFree) {
                if (reached_free == -1) {
                    reached_free = v;
                    best_free = d;
                }
                continue;  // keep settling so the potential update stays valid
            }
            int32_t u = rm[v];
            if (d < dist_l[u]) {  // matched edge is tight under the potentials
                dist_l[u] = d;
                parent_right[u] = v;
                relax_from_left(u);
            }
        }
        if (reached_free == -1) break;

        /* potential update keeps all reduced costs non-negative */
        for (int32_t u = 0; u < nl; u++) pot_l[u] += std::min(dist_l[u], best_free);
        for (int32_t v = 0; v < nr; v++) pot_r[v] += std::min(dist_r[v], best_free);

        /* flip matched/unmatched along the augmenting path */
        int32_t v = reached_free;
        for (;;) {
            int64_t ei = parent_edge[v];
            int32_t u = -1;
            /* recover the left endpoint of CSR edge ei */
            {
                int32_t lo = 0, hi = nl;
                while (lo + 1 < hi) {
                    int32_t mid = (lo + hi) / 2;
                    if (g.offsets[mid] <= ei) lo = mid;
                    else hi = mid;
                }
                u = lo;
            }
            int32_t prev_v = parent_right[u];
            lm[u] = v;
            rm[v] = u;
            if (prev_v == -1) break;
            v = prev_v;
        }
        pairs++;
    }

    MatchingResult res;
    res.left_match = std::move(lm);
    res.right_match = std::move(rm);
    res.pairs = pairs;
    if (!g.cost.empty()) {
        for (int32_t u = 0; u < nl; u++) {
            if (res.left_match[u] == kFree) continue;
            total_cost += matched_edge_cost(g, u, res.left_match[u]);
        }
    }
    res.total_cost = total_cost;
    return res;
}

}  // namespace srspmd
