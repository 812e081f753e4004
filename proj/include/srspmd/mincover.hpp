#pragma once

#include <cstdint>
#include <vector>

#include "srspmd/shareability.hpp"

namespace srspmd {

/* A minimum path cover of the trip-connection graph: one chain of trips per
 * vehicle. fleet_size = n_trips - matched_pairs. */
struct FleetSolution {
    std::vector<std::vector<int32_t>> chains;  // trip indices in time order
    int32_t fleet_size = 0;
    int32_t matched_pairs = 0;
    double total_relocation_m = 0;
    double total_trip_m = 0;
    std::vector<int32_t> trips_per_vehicle;
    std::vector<double> distance_per_vehicle_m;   // trips + relocation
    std::vector<double> time_used_per_vehicle_s;  // riding time only
    std::vector<int32_t> next_trip;               // successor within chain, -1 at chain end
};

/* smallest fleet able to serve all trips, via maximum bipartite matching on
 * the tail/head split of the connection graph */
FleetSolution min_fleet_unweighted(const ShareabilityGraph& g);

/* Same fleet size, but among all maximum matchings returns one of minimum
 * total relocation distance (cardinality first, then weight). Distances are
 * rounded to whole meters for exact cost arithmetic. */
FleetSolution min_fleet_weighted(const ShareabilityGraph& g);

struct UtilizationMetrics {
    double trips_per_vehicle_day = 0;
    double minutes_used_per_vehicle_day = 0;
    double km_per_vehicle_day = 0;
};

UtilizationMetrics utilization(const FleetSolution& sol, const ShareabilityGraph& g, int n_days);

struct ApproxRow {
    double limit_h = 0;
    int64_t edges = 0;
    int32_t fleet = 0;
    double fleet_ratio = 1;        // approx fleet / unlimited fleet
    double utilization_ratio = 1;  // unlimited is the denominator's fleet
    double matches_ratio = 1;
    double runtime_s = 0;  // diagnostic only; kept out of deterministic outputs
};

/* Re-solves the weighted problem under each connection-time limit and
 * reports quality ratios against the unlimited solution. */
std::vector<ApproxRow> approximation_report(const std::vector<Trip>& trips,
                                            const PathNetwork& net, const SpeedProfile& profile,
                                            const std::vector<double>& limits_h);

}  // namespace srspmd
