#pragma once

#include <cstdint>
#include <vector>

#include "srspmd/pathnet.hpp"
#include "srspmd/trips.hpp"

namespace srspmd {

/* fixed walking speed for the no-autonomy variant, 1 m/s */
constexpr double kWalkSpeedKmh = 3.6;

/* connections are solved per day; unlimited mode caps the idle gap here */
constexpr double kMaxConnectionCapS = 24 * 3600.0;

struct TripSummary {
    int64_t trip_id;
    double start_s, end_s;
    double length_m;
};

/* Directed acyclic trip-connection graph: edge i->j when one vehicle can
 * finish trip i and reach the start of trip j in time. Stored CSR by source
 * trip in start-time order. */
struct ShareabilityGraph {
    std::vector<TripSummary> trips;
    std::vector<int64_t> offsets;  // size n_trips + 1
    std::vector<int32_t> head;
    std::vector<double> dist_m;  // relocation path length
    std::vector<double> time_s;  // relocation travel time

    SpeedProfile profile;
    double max_connection_s = kMaxConnectionCapS;

    int32_t n_trips() const { return static_cast<int32_t>(trips.size()); }
    int64_t edge_count() const { return static_cast<int64_t>(head.size()); }
};

/* Trips must be routed and sorted by start time. Edge i->j exists when
 *   end_i + relocation_time(end_node_i -> start_node_j) <= start_j
 * and 0 < start_j - end_i <= max_connection_s. Construction parallelizes
 * over source trips. */
ShareabilityGraph build_graph(const std::vector<Trip>& trips, const PathNetwork& net,
                              const SpeedProfile& profile,
                              double max_connection_s = kMaxConnectionCapS, int n_threads = 0);

/* Stationary-vehicle variant: the user walks (at 1 m/s) to a parked vehicle
 * within d_walk meters of the previous drop-off. With
 * keep_observed_sequences, consecutive same-tag trips are connected
 * regardless of distance, preserving each bike's real chain. */
ShareabilityGraph build_stationary_graph(const std::vector<Trip>& trips, const PathNetwork& net,
                                         double d_walk_m, bool keep_observed_sequences,
                                         int n_threads = 0);

struct GraphStats {
    int64_t edges = 0;
    double mean_out_degree = 0;
    std::vector<int64_t> weight_histogram;  // bins of `bin_width_m`
    double bin_width_m = 100;
};

GraphStats graph_stats(const ShareabilityGraph& g, double bin_width_m = 100);

}  // namespace srspmd
