#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "srspmd/pathnet.hpp"
#include "srspmd/trips.hpp"

namespace srspmd {

struct SimParams {
    double t_b_s = 60;          // batch interval
    double t_w_s = 300;         // maximum waiting time
    double d_walk_m = 0;        // passenger walking limit to a meeting point
    double walk_speed_kmh = 3.6;
    double t_la_s = 0;          // look-ahead window; 0 = pure online
    uint64_t seed = 0;
    SpeedProfile profile = SpeedProfile::uniform(5.0);

    void validate() const {
        if (!(t_b_s > 0)) throw std::invalid_argument("SimParams: t_b must be positive");
        if (t_w_s < 0) throw std::invalid_argument("SimParams: t_w must be >= 0");
        if (d_walk_m < 0) throw std::invalid_argument("SimParams: d_walk must be >= 0");
        profile.validate();
    }
};

enum class RequestOutcome : uint8_t { served, expired, spawned };

struct RequestLog {
    int64_t trip_id = 0;
    double request_s = 0;
    double assign_s = 0;  // batch time of the final assignment, -1 if never assigned
    double pickup_s = 0;  // -1 if never picked up
    int32_t vehicle_id = -1;
    double walk_m = 0;
    RequestOutcome outcome = RequestOutcome::served;
};

struct SimResult {
    int32_t fleet_size = 0;
    int64_t requests = 0;
    int64_t served = 0;    // includes spawned-vehicle pickups in growth mode
    int64_t unserved = 0;  // dropped requests (fixed-fleet mode)
    double mean_wait_s = 0;
    double served_within_tw = 0;
    double relocation_km = 0;
    double utilization = 0;  // served trips per vehicle
    std::vector<RequestLog> log;

    std::string summary_json() const;        // single line
    void write_log_csv(std::ostream&) const;
};

/* one open request inside a batch */
struct PendingRequest {
    int32_t trip_idx;
    double request_s;
    int32_t start_node_idx;
    double deadline_s;
};

/* a vehicle available for assignment at (avail_s, node) */
struct AvailableVehicle {
    int32_t vehicle_id;
    int32_t node_idx;
    double avail_s;
};

struct Assignment {
    int32_t vehicle_slot;  // index into the available list
    int32_t request_slot;  // index into the pending list
    double pickup_s;
    double wait_s;
    double walk_m;
    double reloc_m;
    int32_t meet_node_idx;
    std::vector<int32_t> drive_edges;  // vehicle's path to the meeting node
};

/* One batch of vehicle-request assignment: maximizes the number of requests
 * served within their deadlines, then minimizes total waiting time.
 * Walking (d_walk > 0) lets the passenger move toward a meeting node while
 * the vehicle drives; walking time counts toward the wait. */
std::vector<Assignment> batch_assign(const std::vector<PendingRequest>& pending,
                                     const std::vector<AvailableVehicle>& vehicles, double now,
                                     const SimParams& params, const PathNetwork& net,
                                     Router& router);

/* Fleet-growth mode: starts from zero vehicles; a request still unserved at
 * request_time + t_w spawns a vehicle at its start node and is served with
 * wait exactly t_w. */
SimResult simulate_online_growth(const std::vector<Trip>& trips, const PathNetwork& net,
                                 const SimParams& params);

/* Fixed fleet placed uniformly at random over the distinct trip-start nodes
 * (seeded); requests unserved after t_w are dropped and counted. */
SimResult simulate_online_fixed(const std::vector<Trip>& trips, const PathNetwork& net,
                                int32_t fleet_size, const SimParams& params);

/* Limited-oracle mode: all trips inside the rolling window [now, now+T_LA]
 * are known; trips must start exactly on time (zero waiting). Vehicles are
 * dispatched ahead of time and uncommitted relocations may be revised at
 * every batch; a request no vehicle can reach in time spawns one. */
SimResult simulate_lookahead(const std::vector<Trip>& trips, const PathNetwork& net,
                             const SimParams& params);

/* Idle vehicles needed so that any point of the service area is within
 * t_w travel at v_R: N_I = area / (2 r^2) with r = v_R * t_w, rounded to
 * the nearest integer. */
int64_t standby_bound(double area_km2, double v_r_kmh, double t_w_s);

/* Smallest fleet reaching the target served-within-t_w fraction, by
 * bisection over simulate_online_fixed with a fixed seed. `step` is the
 * fleet-size resolution of the search (1 = exact). */
int32_t fleet_for_service_level(const std::vector<Trip>& trips, const PathNetwork& net,
                                const SimParams& params, double target_fraction, int32_t step = 1);

struct LogLogFit {
    double exponent = 0;
    double r2 = 0;
};

/* least-squares fit of log(y) against log(x) */
LogLogFit loglog_fit(const std::vector<std::pair<double, double>>& xy);

}  // namespace srspmd
