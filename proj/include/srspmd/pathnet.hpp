#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace srspmd {

/* Per-edge travel speeds. The base speed applies everywhere; edges flagged
 * as upgraded are traversed at the (faster) upgraded speed when
 * applies_upgrades is set. Speeds are average relocation speeds, i.e. total
 * distance over total elapsed time. */
struct SpeedProfile {
    double v_r_kmh = 5.0;
    double v_r_star_kmh = 15.0;
    bool applies_upgrades = false;

    static SpeedProfile uniform(double v_kmh) {
        SpeedProfile p;
        p.v_r_kmh = v_kmh;
        p.v_r_star_kmh = v_kmh;
        p.applies_upgrades = false;
        p.validate();
        return p;
    }

    static SpeedProfile two_tier(double v_kmh, double v_star_kmh = 15.0) {
        SpeedProfile p;
        p.v_r_kmh = v_kmh;
        p.v_r_star_kmh = v_star_kmh;
        p.applies_upgrades = true;
        p.validate();
        return p;
    }

    void validate() const {
        if (!(v_r_kmh > 0)) throw std::invalid_argument("SpeedProfile: v_R must be positive");
        if (applies_upgrades && v_r_star_kmh < v_r_kmh)
            throw std::invalid_argument("SpeedProfile: v_R* must be >= v_R");
    }

    double base_mps() const { return v_r_kmh / 3.6; }
    double upgraded_mps() const { return v_r_star_kmh / 3.6; }
    double speed_mps(bool edge_upgraded) const {
        return (applies_upgrades && edge_upgraded) ? upgraded_mps() : base_mps();
    }
};

struct NodeRecord {
    int64_t id;
    double x_m, y_m;
};

struct EdgeRecord {
    int32_t id;
    int32_t a, b;  // internal node indices
    double length_m;
    bool upgraded;
};

/* Undirected path network. Immutable after load; all queries are read-only
 * and safe to run from multiple threads. */
class PathNetwork {
public:
    PathNetwork() = default;
    PathNetwork(std::vector<NodeRecord> nodes, std::vector<EdgeRecord> edges);

    static PathNetwork load(const std::string& nodes_file, const std::string& edges_file);

    size_t node_count() const { return nodes_.size(); }
    size_t edge_count() const { return n_edges_; }

    const NodeRecord& node(int32_t idx) const { return nodes_[idx]; }
    int32_t node_index(int64_t external_id) const;  // -1 if unknown
    int32_t require_node(int64_t external_id) const;
    int64_t node_id(int32_t idx) const { return nodes_[idx].id; }

    /* edges are stored by edge id; absent ids (gaps) have length_m < 0 */
    const EdgeRecord& edge(int32_t edge_id) const { return edges_[edge_id]; }
    bool edge_valid(int32_t edge_id) const {
        return edge_id >= 0 && edge_id < static_cast<int32_t>(edges_.size()) && edges_[edge_id].length_m > 0;
    }
    int32_t max_edge_id() const { return static_cast<int32_t>(edges_.size()) - 1; }
    double total_length_m() const { return total_length_m_; }

    /* adjacency: for node index v, [adj_begin(v), adj_end(v)) of (edge id, neighbor idx),
     * sorted by edge id */
    struct Adj {
        int32_t edge_id;
        int32_t neighbor;
    };
    const Adj* adj_begin(int32_t v) const { return adj_.data() + adj_offsets_[v]; }
    const Adj* adj_end(int32_t v) const { return adj_.data() + adj_offsets_[v + 1]; }

    /* Copy of this network with the upgraded flags replaced; mask is indexed
     * by edge id. */
    PathNetwork with_upgrades(const std::vector<uint8_t>& upgraded_mask) const;

private:
    void build_index();

    std::vector<NodeRecord> nodes_;
    std::vector<EdgeRecord> edges_;  // indexed by edge id, gaps have length_m = -1
    size_t n_edges_ = 0;
    double total_length_m_ = 0;
    std::vector<int64_t> adj_offsets_;
    std::vector<Adj> adj_;
    std::vector<std::pair<int64_t, int32_t>> id_index_;  // sorted (external id, idx)
};

/* A walk over consecutive edges with its totals under the profile used to
 * compute it. Unreachable endpoint pairs are a first-class result. */
struct RoutedPath {
    std::vector<int32_t> edges;  // edge ids in traversal order
    double length_m = 0;
    double time_s = 0;
    bool reachable = true;
};

inline RoutedPath unreachable_path() {
    RoutedPath p;
    p.reachable = false;
    p.length_m = std::numeric_limits<double>::infinity();
    p.time_s = std::numeric_limits<double>::infinity();
    return p;
}

/* Time-shortest-path engine with reusable buffers; one instance per thread.
 * Ties in travel time are broken by the lexicographically smallest edge-id
 * sequence, which makes routes reproducible across runs and platforms. */
class Router {
public:
    explicit Router(const PathNetwork& net);

    /* full route between external node ids */
    RoutedPath route(int64_t from_id, int64_t to_id, const SpeedProfile& profile);
    RoutedPath route_idx(int32_t from, int32_t to, const SpeedProfile& profile);

    /* One-to-many relaxation from a source, stopping at the time budget.
     * Afterwards time_at/dist_at are valid for every reached node until the
     * next query on this Router. */
    void one_to_all(int32_t src, const SpeedProfile& profile,
                    double time_budget_s = std::numeric_limits<double>::infinity());

    bool reached(int32_t v) const { return stamp_[v] == epoch_; }
    double time_at(int32_t v) const {
        return reached(v) ? time_[v] : std::numeric_limits<double>::infinity();
    }
    double dist_at(int32_t v) const {
        return reached(v) ? dist_[v] : std::numeric_limits<double>::infinity();
    }
    const std::vector<int32_t>& reached_nodes() const { return reached_list_; }

    /* edge-id sequence from the source of the last one_to_all to v */
    std::vector<int32_t> path_edges_to(int32_t v) const;

    const PathNetwork& network() const { return net_; }

private:
    void run(int32_t src, const SpeedProfile& profile, double budget, int32_t stop_at);
    bool candidate_beats(int32_t node, int32_t via_node, int32_t via_edge) const;

    const PathNetwork& net_;
    std::vector<double> time_, dist_;
    std::vector<int32_t> parent_node_, parent_edge_;
    std::vector<uint32_t> stamp_, settled_;
    uint32_t epoch_ = 0;
    std::vector<int32_t> reached_list_;
};

/* time to traverse the given meters of base and upgraded path */
double traversal_time_s(double length_on_base_m, double length_on_upgraded_m,
                        const SpeedProfile& profile);

/* nearest node by Euclidean distance; ties go to the smallest node id */
int64_t snap_point(const PathNetwork& net, double x_m, double y_m);

/* Area of the union of discs of the given radius around the points,
 * estimated by counting grid cells (side `cell_m`) whose centers fall in
 * any disc. Grid is anchored at the origin, so the result is deterministic
 * for a fixed cell size. */
double coverage_area_km2(const std::vector<std::pair<double, double>>& points,
                         double radius_m, double cell_m = 5.0);

}  // namespace srspmd
