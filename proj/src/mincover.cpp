#include "srspmd/mincover.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "srspmd/matching.hpp"

namespace srspmd {

namespace {

BipartiteGraph to_bipartite(const ShareabilityGraph& g, bool with_costs) {
    BipartiteGraph b;
    b.n_left = g.n_trips();
    b.n_right = g.n_trips();
    b.offsets = g.offsets;
    b.to = g.head;
    if (with_costs) {
        b.cost.resize(g.dist_m.size());
        for (size_t i = 0; i < g.dist_m.size(); i++) b.cost[i] = llround(g.dist_m[i]);
    }
    return b;
}

double matched_dist(const ShareabilityGraph& g, int32_t u, int32_t v) {
    double best = std::numeric_limits<double>::infinity();
    for (int64_t i = g.offsets[u]; i < g.offsets[u + 1]; i++)
        if (g.head[i] == v) best = std::min(best, g.dist_m[i]);
    return best;
}

FleetSolution reconstruct(const ShareabilityGraph& g, const MatchingResult& m) {
    const int32_t n = g.n_trips();
    FleetSolution sol;
    sol.matched_pairs = m.pairs;
    sol.fleet_size = n - m.pairs;
    sol.next_trip.assign(n, -1);
    for (int32_t u = 0; u < n; u++) sol.next_trip[u] = m.left_match[u];

    std::vector<uint8_t> has_pred(n, 0);
    for (int32_t u = 0; u < n; u++)
        if (m.left_match[u] >= 0) has_pred[m.left_match[u]] = 1;

    for (int32_t u = 0; u < n; u++) {
        if (has_pred[u]) continue;
        std::vector<int32_t> chain;
        double dist = 0, reloc = 0, used = 0;
        for (int32_t cur = u; cur != -1; cur = sol.next_trip[cur]) {
            chain.push_back(cur);
            dist += g.trips[cur].length_m;
            used += g.trips[cur].end_s - g.trips[cur].start_s;
            if (sol.next_trip[cur] != -1) {
                double d = matched_dist(g, cur, sol.next_trip[cur]);
                reloc += d;
                dist += d;
            }
        }
        sol.trips_per_vehicle.push_back(static_cast<int32_t>(chain.size()));
        sol.distance_per_vehicle_m.push_back(dist);
        sol.time_used_per_vehicle_s.push_back(used);
        sol.total_relocation_m += reloc;
        sol.chains.push_back(std::move(chain));
    }
    for (const auto& t : g.trips) sol.total_trip_m += t.length_m;
    return sol;
}

}  // namespace

FleetSolution min_fleet_unweighted(const ShareabilityGraph& g) {
    return reconstruct(g, max_matching(to_bipartite(g, false)));
}

FleetSolution min_fleet_weighted(const ShareabilityGraph& g) {
    return reconstruct(g, min_cost_max_matching(to_bipartite(g, true)));
}

UtilizationMetrics utilization(const FleetSolution& sol, const ShareabilityGraph& g, int n_days) {
    UtilizationMetrics m;
    if (sol.fleet_size <= 0 || n_days <= 0) return m;
    double denom = static_cast<double>(sol.fleet_size) * n_days;
    m.trips_per_vehicle_day = static_cast<double>(g.n_trips()) / denom;
    double used_s = 0;
    for (double s : sol.time_used_per_vehicle_s) used_s += s;
    m.minutes_used_per_vehicle_day = used_s / 60.0 / denom;
    m.km_per_vehicle_day = (sol.total_trip_m + sol.total_relocation_m) / 1000.0 / denom;
    return m;
}

std::vector<ApproxRow> approximation_report(const std::vector<Trip>& trips,
                                            const PathNetwork& net, const SpeedProfile& profile,
                                            const std::vector<double>& limits_h) {
    for (double h : limits_h)
        if (!(h > 0)) throw std::invalid_argument("approximation_report: limits must be positive");

    ShareabilityGraph full = build_graph(trips, net, profile);
    FleetSolution ref = min_fleet_weighted(full);
    UtilizationMetrics ref_util = utilization(ref, full, 1);

    std::vector<ApproxRow> out;
    for (double h : limits_h) {
        auto t0 = std::chrono::steady_clock::now();
        ShareabilityGraph g = build_graph(trips, net, profile, h * 3600.0);
        FleetSolution sol = min_fleet_weighted(g);
        auto t1 = std::chrono::steady_clock::now();
        ApproxRow row;
        row.limit_h = h;
        row.edges = g.edge_count();
        row.fleet = sol.fleet_size;
        if (ref.fleet_size > 0)
            row.fleet_ratio = static_cast<double>(sol.fleet_size) / ref.fleet_size;
        if (ref.matched_pairs > 0)
            row.matches_ratio = static_cast<double>(sol.matched_pairs) / ref.matched_pairs;
        UtilizationMetrics u = utilization(sol, g, 1);
        if (ref_util.trips_per_vehicle_day > 0)
            row.utilization_ratio = u.trips_per_vehicle_day / ref_util.trips_per_vehicle_day;
        row.runtime_s = std::chrono::duration<double>(t1 - t0).count();
        out.push_back(row);
    }
    return out;
}

}  // namespace srspmd
