#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "srspmd/pathnet.hpp"

namespace srspmd {

struct Trip {
    int64_t trip_id = 0;
    std::string vehicle_tag;
    double start_time_s = 0, end_time_s = 0;
    int64_t start_node = 0, end_node = 0;  // external node ids
    RoutedPath route;
    bool routed = false;

    double duration_s() const { return end_time_s - start_time_s; }
    int day_index() const { return static_cast<int>(std::floor(start_time_s / 86400.0)); }
};

struct TripLoadResult {
    std::vector<Trip> trips;
    int64_t rejected = 0;
};

/* trips CSV with coordinate or node-id endpoint columns; records with
 * end <= start are rejected and counted, never fatal */
TripLoadResult load_trips(const std::string& file, const PathNetwork& net);

struct FilterPolicy {
    double min_duration_s = 60;
    double max_duration_s = 4 * 3600;
    double max_avg_speed_kmh = 30;

    void validate() const {
        if (!(min_duration_s < max_duration_s))
            throw std::invalid_argument("FilterPolicy: min_duration must be < max_duration");
        if (!(max_avg_speed_kmh > 0))
            throw std::invalid_argument("FilterPolicy: max_avg_speed must be positive");
    }
};

struct DropCounts {
    int64_t too_short = 0, too_long = 0, too_fast = 0, unroutable = 0;
    int64_t total() const { return too_short + too_long + too_fast + unroutable; }
};

struct FilterResult {
    std::vector<Trip> kept;
    DropCounts dropped;
};

/* Routes any unrouted trip on a uniform profile first; average speed is the
 * routed shortest-path length over the recorded duration. */
FilterResult filter_trips(std::vector<Trip> trips, const PathNetwork& net,
                          const FilterPolicy& policy);

/* fills route + edge list for every trip; parallel over trips */
void route_trips(std::vector<Trip>& trips, const PathNetwork& net, const SpeedProfile& profile,
                 int n_threads = 0);

struct ConcurrencyProfile {
    int max_concurrent = 0;
    std::vector<std::pair<double, int>> series;  // step function (time, active count)
};

/* sweep over start/end events; the maximum is a lower bound on any fleet */
ConcurrencyProfile concurrency_profile(const std::vector<Trip>& trips);

struct ProximityShares {
    double start_share = 0, end_share = 0, either_share = 0;
};

ProximityShares proximity_share(const std::vector<Trip>& trips, const PathNetwork& net,
                                const std::vector<std::pair<double, double>>& pois,
                                double threshold_m);

struct DayUsage {
    int day = 0;
    int64_t trips = 0;
    int64_t active_vehicles = 0;
    double trips_per_vehicle = 0;
    double minutes_used_per_vehicle = 0;
};

/* per-day aggregates over vehicle tags seen that day */
std::vector<DayUsage> usage_stats(const std::vector<Trip>& trips);

}  // namespace srspmd
