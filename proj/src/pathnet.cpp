#include "srspmd/pathnet.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_set>

#include "srspmd/csv.hpp"

namespace srspmd {

PathNetwork::PathNetwork(std::vector<NodeRecord> nodes, std::vector<EdgeRecord> edges)
    : nodes_(std::move(nodes)) {
    int32_t max_id = -1;
    for (const auto& e : edges) max_id = std::max(max_id, e.id);
    edges_.assign(static_cast<size_t>(max_id) + 1, EdgeRecord{-1, -1, -1, -1.0, false});
    for (const auto& e : edges) {
        if (e.length_m <= 0)
            throw std::runtime_error("edge " + std::to_string(e.id) + ": non-positive length");
        if (e.a < 0 || e.a >= static_cast<int32_t>(nodes_.size()) || e.b < 0 ||
            e.b >= static_cast<int32_t>(nodes_.size()))
            throw std::runtime_error("edge " + std::to_string(e.id) + ": endpoint out of range");
        if (edges_[e.id].length_m > 0)
            throw std::runtime_error("edge " + std::to_string(e.id) + ": duplicate edge id");
        edges_[e.id] = e;
    }
    build_index();
}

void PathNetwork::build_index() {
    n_edges_ = 0;
    total_length_m_ = 0;
    std::vector<int32_t> degree(nodes_.size(), 0);
    for (const auto& e : edges_) {
        if (e.length_m <= 0) continue;
        n_edges_++;
        total_length_m_ += e.length_m;
        degree[e.a]++;
        degree[e.b]++;
    }
    adj_offsets_.assign(nodes_.size() + 1, 0);
    for (size_t v = 0; v < nodes_.size(); v++) adj_offsets_[v + 1] = adj_offsets_[v] + degree[v];
    adj_.resize(adj_offsets_.back());
    std::vector<int64_t> fill(adj_offsets_.begin(), adj_offsets_.end() - 1);
    /* edges_ is ordered by edge id, so each adjacency list comes out sorted
     * by edge id, which the lexicographic tie-break relies on */
    for (const auto& e : edges_) {
        if (e.length_m <= 0) continue;
        adj_[fill[e.a]++] = Adj{e.id, e.b};
        adj_[fill[e.b]++] = Adj{e.id, e.a};
    }
    id_index_.clear();
    id_index_.reserve(nodes_.size());
    for (size_t i = 0; i < nodes_.size(); i++)
        id_index_.emplace_back(nodes_[i].id, static_cast<int32_t>(i));
    std::sort(id_index_.begin(), id_index_.end());
    for (size_t i = 1; i < id_index_.size(); i++)
        if (id_index_[i].first == id_index_[i - 1].first)
            throw std::runtime_error("duplicate node id " + std::to_string(id_index_[i].first));
}

int32_t PathNetwork::node_index(int64_t external_id) const {
    auto it = std::lower_bound(id_index_.begin(), id_index_.end(),
                               std::make_pair(external_id, int32_t{-1}));
    if (it != id_index_.end() && it->first == external_id) return it->second;
    return -1;
}

int32_t PathNetwork::require_node(int64_t external_id) const {
    int32_t idx = node_index(external_id);
    if (idx < 0) throw std::runtime_error("unknown node id " + std::to_string(external_id));
    return idx;
}

PathNetwork PathNetwork::load(const std::string& nodes_file, const std::string& edges_file) {
    std::vector<NodeRecord> nodes;
    {
        csv::Reader r(nodes_file);
        int c_id = r.require_column("node_id");
        int c_x = r.require_column("x_m");
        int c_y = r.require_column("y_m");
        std::vector<std::string> row;
        while (r.next_row(row)) {
            if (static_cast<int>(row.size()) <= std::max({c_id, c_x, c_y}))
                r.fail("too few fields");
            nodes.push_back(NodeRecord{r.parse_int(row[c_id]), r.parse_double(row[c_x]),
                                       r.parse_double(row[c_y])});
        }
    }
    /* resolve external node ids while reading edges */
    PathNetwork tmp;
    tmp.nodes_ = nodes;
    tmp.id_index_.clear();
    for (size_t i = 0; i < nodes.size(); i++)
        tmp.id_index_.emplace_back(nodes[i].id, static_cast<int32_t>(i));
    std::sort(tmp.id_index_.begin(), tmp.id_index_.end());

    std::vector<EdgeRecord> edges;
    {
        csv::Reader r(edges_file);
        int c_id = r.require_column("edge_id");
        int c_a = r.require_column("node_a");
        int c_b = r.require_column("node_b");
        int c_len = r.require_column("length_m");
        int c_upg = r.column("upgraded");
        std::vector<std::string> row;
        while (r.next_row(row)) {
            if (static_cast<int>(row.size()) <= std::max({c_id, c_a, c_b, c_len}))
                r.fail("too few fields");
            EdgeRecord e;
            e.id = static_cast<int32_t>(r.parse_int(row[c_id]));
            int64_t ida = r.parse_int(row[c_a]);
            int64_t idb = r.parse_int(row[c_b]);
            e.a = tmp.node_index(ida);
            e.b = tmp.node_index(idb);
            if (e.a < 0)
                r.fail("edge " + std::to_string(e.id) + " references unknown node " +
                       std::to_string(ida));
            if (e.b < 0)
                r.fail("edge " + std::to_string(e.id) + " references unknown node " +
                       std::to_string(idb));
            e.length_m = r.parse_double(row[c_len]);
            if (!(e.length_m > 0))
                r.fail("edge " + std::to_string(e.id) + ": non-positive length");
            e.upgraded = false;
            if (c_upg >= 0 && static_cast<int>(row.size()) > c_upg && !row[c_upg].empty())
                e.upgraded = r.parse_int(row[c_upg]) != 0;
            edges.push_back(e);
        }
    }
    return PathNetwork(std::move(nodes), std::move(edges));
}

PathNetwork PathNetwork::with_upgrades(const std::vector<uint8_t>& upgraded_mask) const {
    PathNetwork out = *this;
    for (auto& e : out.edges_) {
        if (e.length_m <= 0) continue;
        e.upgraded = e.id < static_cast<int32_t>(upgraded_mask.size()) && upgraded_mask[e.id] != 0;
    }
    return out;
}

/* ---- Router ---- */

Router::Router(const PathNetwork& net) : net_(net) {
    size_t n = net.node_count();
    time_.assign(n, 0);
    dist_.assign(n, 0);
    parent_node_.assign(n, -1);
    parent_edge_.assign(n, -1);
    stamp_.assign(n, 0);
    settled_.assign(n, 0);
}

std::vector<int32_t> Router::path_edges_to(int32_t v) const {
    std::vector<int32_t> seq;
    for (int32_t cur = v; parent_edge_[cur] >= 0; cur = parent_node_[cur])
        seq.push_back(parent_edge_[cur]);
    std::reverse(seq.begin(), seq.end());
    return seq;
}

/* true if the path through via_node + via_edge is lexicographically smaller
 * than the currently stored path to node (travel times already equal) */
bool Router::candidate_beats(int32_t node, int32_t via_node, int32_t via_edge) const {
    std::vector<int32_t> cand = path_edges_to(via_node);
    cand.push_back(via_edge);
    std::vector<int32_t> cur = path_edges_to(node);
    return std::lexicographical_compare(cand.begin(), cand.end(), cur.begin(), cur.end());
}

void Router::run(int32_t src, const SpeedProfile& profile, double budget, int32_t stop_at) {
    epoch_++;
    reached_list_.clear();
    using Entry = std::pair<double, int32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    time_[src] = 0;
    dist_[src] = 0;
    parent_node_[src] = -1;
    parent_edge_[src] = -1;
    stamp_[src] = epoch_;
    reached_list_.push_back(src);
    heap.emplace(0.0, src);
    /* all edge times are strictly positive, so equal-time nodes never relax
     * each other and the lexicographic choice at a node is final once all
     * strictly-earlier nodes are settled */
    while (!heap.empty()) {
        auto [t, u] = heap.top();
        heap.pop();
        if (settled_[u] == epoch_ || t > time_[u]) continue;
        settled_[u] = epoch_;
        if (u == stop_at) return;
        for (const auto* a = net_.adj_begin(u); a != net_.adj_end(u); ++a) {
            const EdgeRecord& e = net_.edge(a->edge_id);
            double et = e.length_m / profile.speed_mps(e.upgraded);
            double nt = t + et;
            if (nt > budget) continue;
            int32_t v = a->neighbor;
            if (stamp_[v] != epoch_ || nt < time_[v]) {
                time_[v] = nt;
                dist_[v] = dist_[u] + e.length_m;
                parent_node_[v] = u;
                parent_edge_[v] = a->edge_id;
                if (stamp_[v] != epoch_) {
                    stamp_[v] = epoch_;
                    reached_list_.push_back(v);
                }
                heap.emplace(nt, v);
            } else if (nt == time_[v] && settled_[v] != epoch_ && candidate_beats(v, u, a->edge_id)) {
                dist_[v] = dist_[u] + e.length_m;
                parent_node_[v] = u;
                parent_edge_[v] = a->edge_id;
            }
        }
    }
}

void Router::one_to_all(int32_t src, const SpeedProfile& profile, double time_budget_s) {
    profile.validate();
    run(src, profile, time_budget_s, -1);
}

RoutedPath Router::route_idx(int32_t from, int32_t to, const SpeedProfile& profile) {
    profile.validate();
    if (from == to) return RoutedPath{};
    run(from, profile, std::numeric_limits<double>::infinity(), to);
    if (stamp_[to] != epoch_) return unreachable_path();
    RoutedPath p;
    p.edges = path_edges_to(to);
    p.length_m = dist_[to];
    p.time_s = time_[to];
    return p;
}

RoutedPath Router::route(int64_t from_id, int64_t to_id, const SpeedProfile& profile) {
    return route_idx(net_.require_node(from_id), net_.require_node(to_id), profile);
}

/* ---- free functions ---- */

double traversal_time_s(double length_on_base_m, double length_on_upgraded_m,
                        const SpeedProfile& profile) {
    profile.validate();
    if (length_on_base_m < 0 || length_on_upgraded_m < 0)
        throw std::invalid_argument("traversal_time_s: negative length");
    if (!profile.applies_upgrades)
        return (length_on_base_m + length_on_upgraded_m) / profile.base_mps();
    return length_on_base_m / profile.base_mps() + length_on_upgraded_m / profile.upgraded_mps();
}

int64_t snap_point(const PathNetwork& net, double x_m, double y_m) {
    if (net.node_count() == 0) throw std::runtime_error("snap_point: empty network");
    double best_d2 = std::numeric_limits<double>::infinity();
    int64_t best_id = 0;
    for (size_t i = 0; i < net.node_count(); i++) {
        const NodeRecord& n = net.node(static_cast<int32_t>(i));
        double dx = n.x_m - x_m, dy = n.y_m - y_m;
        double d2 = dx * dx + dy * dy;
        if (d2 < best_d2 || (d2 == best_d2 && n.id < best_id)) {
            best_d2 = d2;
            best_id = n.id;
        }
    }
    return best_id;
}

double coverage_area_km2(const std::vector<std::pair<double, double>>& points, double radius_m,
                         double cell_m) {
    if (!(radius_m > 0)) throw std::invalid_argument("coverage_area: radius must be positive");
    if (!(cell_m > 0) || cell_m > radius_m / 2)
        throw std::invalid_argument("coverage_area: cell must be positive and <= radius/2");
    if (points.empty()) return 0.0;
    std::unordered_set<int64_t> cells;
    double r2 = radius_m * radius_m;
    for (const auto& [px, py] : points) {
        int64_t i0 = static_cast<int64_t>(std::floor((px - radius_m) / cell_m));
        int64_t i1 = static_cast<int64_t>(std::floor((px + radius_m) / cell_m));
        int64_t j0 = static_cast<int64_t>(std::floor((py - radius_m) / cell_m));
        int64_t j1 = static_cast<int64_t>(std::floor((py + radius_m) / cell_m));
        for (int64_t i = i0; i <= i1; i++) {
            double cx = (static_cast<double>(i) + 0.5) * cell_m;
            double dx = cx - px;
            for (int64_t j = j0; j <= j1; j++) {
                double cy = (static_cast<double>(j) + 0.5) * cell_m;
                double dy = cy - py;
                if (dx * dx + dy * dy <= r2)
                    cells.insert((i << 32) ^ (j & 0xffffffffLL));
            }
        }
    }
    return static_cast<double>(cells.size()) * cell_m * cell_m / 1e6;
}

}  // namespace srspmd
