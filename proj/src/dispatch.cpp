#include "srspmd/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "srspmd/csv.hpp"
#include "srspmd/matching.hpp"
#include "srspmd/rng.hpp"

namespace srspmd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class CostMode { wait, relocation };

struct Candidate {
    int32_t v_slot, r_slot;
    double pickup_s, wait_s, walk_m, reloc_m, reloc_time_s;
    int32_t meet_node;
    std::vector<int32_t> drive_edges;
};

/* Enumerates feasible (vehicle, request) pairs and solves the batch as a
 * maximum-cardinality minimum-cost matching. */
std::vector<Assignment> assign_impl(const std::vector<PendingRequest>& pending,
                                    const std::vector<AvailableVehicle>& vehicles, double now,
                                    const SimParams& params, const PathNetwork& net,
                                    Router& router, CostMode cost_mode) {
    if (pending.empty() || vehicles.empty()) return {};

    double min_avail = kInf;
    for (const auto& v : vehicles) min_avail = std::min(min_avail, v.avail_s);

    std::vector<Candidate> cands;

    if (params.d_walk_m <= 0) {
        /* one bounded search per request; the network is undirected so the
         * request->vehicle time equals the drive time */
        std::unordered_map<int32_t, std::vector<int32_t>> slots_at_node;
        for (size_t s = 0; s < vehicles.size(); s++)
            slots_at_node[vehicles[s].node_idx].push_back(static_cast<int32_t>(s));
        for (size_t r = 0; r < pending.size(); r++) {
            const PendingRequest& req = pending[r];
            double budget = req.deadline_s - min_avail;
            if (budget < 0) continue;
            router.one_to_all(req.start_node_idx, params.profile, budget);
            for (int32_t node : router.reached_nodes()) {
                auto it = slots_at_node.find(node);
                if (it == slots_at_node.end()) continue;
                double drive_t = router.time_at(node);
                std::vector<int32_t> edges = router.path_edges_to(node);
                std::reverse(edges.begin(), edges.end());
                for (int32_t s : it->second) {
                    const AvailableVehicle& v = vehicles[s];
                    double arrival = v.avail_s + drive_t;
                    if (arrival > req.deadline_s) continue;
                    double pickup = std::max(arrival, req.request_s);
                    Candidate c;
                    c.v_slot = s;
                    c.r_slot = static_cast<int32_t>(r);
                    c.pickup_s = pickup;
                    c.wait_s = pickup - req.request_s;
                    c.walk_m = 0;
                    c.reloc_m = router.dist_at(node);
                    c.reloc_time_s = drive_t;
                    c.meet_node = req.start_node_idx;
                    c.drive_edges = edges;
                    cands.push_back(std::move(c));
                }
            }
        }
    } else {
        /* passenger walks toward a meeting node while the vehicle drives;
         * both start when the batch assigns, pickup is when both arrived */
        const SpeedProfile walk = SpeedProfile::uniform(params.walk_speed_kmh);
        double walk_mps = walk.base_mps();
        struct BallNode {
            int32_t node;
            double walk_t, walk_d;
        };
        std::vector<std::vector<BallNode>> balls(pending.size());
        std::unordered_map<int32_t, std::vector<std::pair<int32_t, double>>> ball_index;
        double max_deadline = 0;
        for (size_t r = 0; r < pending.size(); r++) {
            const PendingRequest& req = pending[r];
            max_deadline = std::max(max_deadline, req.deadline_s);
            double budget = std::min(params.d_walk_m / walk_mps, req.deadline_s - now);
            if (budget < 0) continue;
            router.one_to_all(req.start_node_idx, walk, budget);
            for (int32_t node : router.reached_nodes()) {
                if (router.dist_at(node) > params.d_walk_m) continue;
                balls[r].push_back(BallNode{node, router.time_at(node), router.dist_at(node)});
            }
        }
        for (size_t r = 0; r < pending.size(); r++)
            for (const auto& b : balls[r])
                ball_index[b.node].emplace_back(static_cast<int32_t>(r), 0.0);

        /* one drive search per distinct vehicle node */
        std::map<int32_t, std::vector<int32_t>> by_node;
        for (size_t s = 0; s < vehicles.size(); s++)
            by_node[vehicles[s].node_idx].push_back(static_cast<int32_t>(s));
        struct Best {
            double pickup = kInf, walk_m = 0, reloc_m = 0, reloc_t = 0;
            int32_t meet = -1;
        };
        for (const auto& [vnode, slots] : by_node) {
            double avail_min = kInf;
            for (int32_t s : slots) avail_min = std::min(avail_min, vehicles[s].avail_s);
            router.one_to_all(vnode, params.profile, max_deadline - avail_min);
            for (int32_t s : slots) {
                const AvailableVehicle& v = vehicles[s];
                std::vector<Best> best(pending.size());
                for (size_t r = 0; r < pending.size(); r++) {
                    for (const auto& b : balls[r]) {
                        if (!router.reached(b.node)) continue;
                        double vehicle_arrival = v.avail_s + router.time_at(b.node);
                        double walker_arrival = now + b.walk_t;
                        double pickup = std::max(
                            {vehicle_arrival, walker_arrival, pending[r].request_s});
                        if (pickup > pending[r].deadline_s) continue;
                        Best& cur = best[r];
                        if (pickup < cur.pickup ||
                            (pickup == cur.pickup && b.walk_d < cur.walk_m)) {
                            cur.pickup = pickup;
                            cur.walk_m = b.walk_d;
                            cur.reloc_m = router.dist_at(b.node);
                            cur.reloc_t = router.time_at(b.node);
                            cur.meet = b.node;
                        }
                    }
                    if (best[r].meet >= 0) {
                        Candidate c;
                        c.v_slot = s;
                        c.r_slot = static_cast<int32_t>(r);
                        c.pickup_s = best[r].pickup;
                        c.wait_s = best[r].pickup - pending[r].request_s;
                        c.walk_m = best[r].walk_m;
                        c.reloc_m = best[r].reloc_m;
                        c.reloc_time_s = best[r].reloc_t;
                        c.meet_node = best[r].meet;
                        cands.push_back(std::move(c));
                    }
                }
            }
        }
    }

    if (cands.empty()) return {};

    /* vehicles on the left in slot order, requests on the right */
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.v_slot != b.v_slot) return a.v_slot < b.v_slot;
        return a.r_slot < b.r_slot;
    });
    BipartiteGraph bg;
    bg.n_left = static_cast<int32_t>(vehicles.size());
    bg.n_right = static_cast<int32_t>(pending.size());
    bg.offsets.assign(bg.n_left + 1, 0);
    for (const auto& c : cands) bg.offsets[c.v_slot + 1]++;
    for (int32_t i = 0; i < bg.n_left; i++) bg.offsets[i + 1] += bg.offsets[i];
    bg.to.resize(cands.size());
    bg.cost.resize(cands.size());
    std::vector<int32_t> cand_of_edge(cands.size());
    {
        std::vector<int64_t> fill(bg.offsets.begin(), bg.offsets.end() - 1);
        for (size_t i = 0; i < cands.size(); i++) {
            int64_t pos = fill[cands[i].v_slot]++;
            bg.to[pos] = cands[i].r_slot;
            bg.cost[pos] = cost_mode == CostMode::wait
                               ? llround(cands[i].wait_s * 1000.0)
                               : llround(cands[i].reloc_time_s * 1000.0);
            cand_of_edge[pos] = static_cast<int32_t>(i);
        }
    }

    MatchingResult m = min_cost_max_matching(bg);

    std::vector<Assignment> out;
    for (int32_t s = 0; s < bg.n_left; s++) {
        if (m.left_match[s] < 0) continue;
        /* recover the candidate behind the matched (vehicle, request) pair;
         * among parallel candidates the solver used the cheapest */
        int32_t best_cand = -1;
        int64_t best_cost = std::numeric_limits<int64_t>::max();
        for (int64_t i = bg.offsets[s]; i < bg.offsets[s + 1]; i++)
            if (bg.to[i] == m.left_match[s] && bg.cost[i] < best_cost) {
                best_cost = bg.cost[i];
                best_cand = cand_of_edge[i];
            }
        Candidate& c = cands[best_cand];
        Assignment a;
        a.vehicle_slot = c.v_slot;
        a.request_slot = c.r_slot;
        a.pickup_s = c.pickup_s;
        a.wait_s = c.wait_s;
        a.walk_m = c.walk_m;
        a.reloc_m = c.reloc_m;
        a.meet_node_idx = c.meet_node;
        a.drive_edges = std::move(c.drive_edges);
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace

std::vector<Assignment> batch_assign(const std::vector<PendingRequest>& pending,
                                     const std::vector<AvailableVehicle>& vehicles, double now,
                                     const SimParams& params, const PathNetwork& net,
                                     Router& router) {
    params.validate();
    return assign_impl(pending, vehicles, now, params, net, router, CostMode::wait);
}

/* ---- online simulation (growth and fixed) ---- */

namespace {

struct SimVehicle {
    double busy_until = -kInf;
    int32_t node = -1;  // location once busy_until has passed
};

SimResult run_online(const std::vector<Trip>& trips, const PathNetwork& net,
                     const SimParams& params, bool growth, int32_t fleet_size) {
    params.validate();
    SimResult res;
    res.requests = static_cast<int64_t>(trips.size());
    if (trips.empty()) {
        res.fleet_size = growth ? 0 : fleet_size;
        res.served_within_tw = 1;
        return res;
    }
    for (size_t i = 1; i < trips.size(); i++)
        if (trips[i].start_time_s < trips[i - 1].start_time_s)
            throw std::invalid_argument("simulate: trips must be sorted by start time");

    Router router(net);
    std::vector<SimVehicle> vehicles;
    if (!growth) {
        /* seeded placement over the day's distinct trip-start nodes */
        std::vector<int64_t> start_ids;
        for (const auto& t : trips) start_ids.push_back(t.start_node);
        std::sort(start_ids.begin(), start_ids.end());
        start_ids.erase(std::unique(start_ids.begin(), start_ids.end()), start_ids.end());
        Rng rng(params.seed);
        for (int32_t i = 0; i < fleet_size; i++) {
            SimVehicle v;
            v.node = net.require_node(
                start_ids[uniform_index(rng, start_ids.size())]);
            vehicles.push_back(v);
        }
    }

    res.log.resize(trips.size());
    for (size_t i = 0; i < trips.size(); i++) {
        res.log[i].trip_id = trips[i].trip_id;
        res.log[i].request_s = trips[i].start_time_s;
        res.log[i].assign_s = -1;
        res.log[i].pickup_s = -1;
        res.log[i].outcome = RequestOutcome::expired;
    }

    std::vector<int32_t> pending;
    size_t next_arrival = 0;
    double wait_sum = 0;

    for (double now = trips.front().start_time_s;; now += params.t_b_s) {
        while (next_arrival < trips.size() && trips[next_arrival].start_time_s <= now)
            pending.push_back(static_cast<int32_t>(next_arrival++));

        if (!pending.empty()) {
            std::vector<AvailableVehicle> idle;
            for (size_t v = 0; v < vehicles.size(); v++)
                if (vehicles[v].busy_until <= now)
                    idle.push_back(
                        AvailableVehicle{static_cast<int32_t>(v), vehicles[v].node, now});
            std::vector<PendingRequest> reqs;
            for (int32_t ti : pending)
                reqs.push_back(PendingRequest{ti, trips[ti].start_time_s,
                                              net.require_node(trips[ti].start_node),
                                              trips[ti].start_time_s + params.t_w_s});
            auto assignments = assign_impl(reqs, idle, now, params, net, router, CostMode::wait);
            std::vector<uint8_t> done(pending.size(), 0);
            for (const auto& a : assignments) {
                int32_t ti = pending[a.request_slot];
                int32_t vid = idle[a.vehicle_slot].vehicle_id;
                const Trip& t = trips[ti];
                vehicles[vid].busy_until = a.pickup_s + t.duration_s();
                vehicles[vid].node = net.require_node(t.end_node);
                RequestLog& lg = res.log[ti];
                lg.assign_s = now;
                lg.pickup_s = a.pickup_s;
                lg.vehicle_id = vid;
                lg.walk_m = a.walk_m;
                lg.outcome = RequestOutcome::served;
                res.served++;
                wait_sum += a.wait_s;
                res.relocation_km += a.reloc_m / 1000.0;
                done[a.request_slot] = 1;
            }
            std::vector<int32_t> still;
            for (size_t r = 0; r < pending.size(); r++)
                if (!done[r]) still.push_back(pending[r]);
            pending.swap(still);
        }

        /* expiry is checked at batch boundaries */
        {
            std::vector<int32_t> still;
            for (int32_t ti : pending) {
                const Trip& t = trips[ti];
                if (t.start_time_s + params.t_w_s > now) {
                    still.push_back(ti);
                    continue;
                }
                RequestLog& lg = res.log[ti];
                if (growth) {
                    /* new vehicle appears at the start node; the request is
                     * served at the moment it would have expired */
                    SimVehicle v;
                    double pickup = t.start_time_s + params.t_w_s;
                    v.busy_until = pickup + t.duration_s();
                    v.node = net.require_node(t.end_node);
                    int32_t vid = static_cast<int32_t>(vehicles.size());
                    vehicles.push_back(v);
                    lg.assign_s = now;
                    lg.pickup_s = pickup;
                    lg.vehicle_id = vid;
                    lg.outcome = RequestOutcome::spawned;
                    res.served++;
                    wait_sum += params.t_w_s;
                } else {
                    lg.outcome = RequestOutcome::expired;
                    res.unserved++;
                }
            }
            pending.swap(still);
        }

        if (next_arrival >= trips.size() && pending.empty()) break;
    }

    res.fleet_size = growth ? static_cast<int32_t>(vehicles.size()) : fleet_size;
    res.mean_wait_s = res.served > 0 ? wait_sum / static_cast<double>(res.served) : 0;
    res.served_within_tw =
        res.requests > 0 ? static_cast<double>(res.served) / static_cast<double>(res.requests) : 1;
    res.utilization =
        res.fleet_size > 0 ? static_cast<double>(res.served) / res.fleet_size : 0;
    return res;
}

}  // namespace

SimResult simulate_online_growth(const std::vector<Trip>& trips, const PathNetwork& net,
                                 const SimParams& params) {
    if (params.t_la_s != 0)
        throw std::invalid_argument("simulate_online_growth: T_LA must be 0");
    return run_online(trips, net, params, true, 0);
}

SimResult simulate_online_fixed(const std::vector<Trip>& trips, const PathNetwork& net,
                                int32_t fleet_size, const SimParams& params) {
    if (fleet_size < 0) throw std::invalid_argument("simulate_online_fixed: negative fleet");
    return run_online(trips, net, params, false, fleet_size);
}

/* ---- limited-oracle simulation ---- */

namespace {

struct LaVehicle {
    double free_s = -kInf;  // end of the last committed trip
    int32_t free_node = -1;
    /* provisional relocation toward a future request */
    bool has_plan = false;
    double plan_depart_s = 0;
    std::vector<int32_t> plan_nodes;   // node sequence, first = departure node
    std::vector<double> plan_times;    // cumulative time to each node
    std::vector<double> plan_dists;    // cumulative distance
    size_t plan_progress = 0;          // nodes already paid for in relocation_km
};

/* where/when the vehicle can next accept an order */
std::pair<double, int32_t> la_avail(const LaVehicle& v, double now) {
    if (!v.has_plan) return {std::max(v.free_s, now), v.free_node};
    if (now >= v.plan_depart_s + v.plan_times.back())
        return {now, v.plan_nodes.back()};  // arrived, waiting at target
    size_t k = 0;
    while (v.plan_depart_s + v.plan_times[k] < now) k++;
    return {v.plan_depart_s + v.plan_times[k], v.plan_nodes[k]};
}

}  // namespace

SimResult simulate_lookahead(const std::vector<Trip>& trips, const PathNetwork& net,
                             const SimParams& params) {
    params.validate();
    if (params.t_la_s < params.t_b_s)
        throw std::invalid_argument("simulate_lookahead: T_LA must be >= t_b");
    if (params.d_walk_m != 0)
        throw std::invalid_argument("simulate_lookahead: walking is not supported here");

    SimResult res;
    res.requests = static_cast<int64_t>(trips.size());
    res.served_within_tw = 1;
    if (trips.empty()) return res;
    for (size_t i = 1; i < trips.size(); i++)
        if (trips[i].start_time_s < trips[i - 1].start_time_s)
            throw std::invalid_argument("simulate: trips must be sorted by start time");

    Router router(net);
    SimParams zero_wait = params;
    zero_wait.t_w_s = 0;

    std::vector<LaVehicle> vehicles;
    res.log.resize(trips.size());
    for (size_t i = 0; i < trips.size(); i++) {
        res.log[i].trip_id = trips[i].trip_id;
        res.log[i].request_s = trips[i].start_time_s;
        res.log[i].assign_s = -1;
        res.log[i].pickup_s = -1;
        res.log[i].outcome = RequestOutcome::expired;
    }
    std::vector<uint8_t> handled(trips.size(), 0);
    size_t n_handled = 0;

    /* truncate a provisional plan at the next reachable node, keeping the
     * distance already driven */
    auto cancel_plan = [&](LaVehicle& v, double now) {
        if (!v.has_plan) return;
        auto [t, node] = la_avail(v, now);
        size_t k = v.plan_nodes.size() - 1;
        if (now < v.plan_depart_s + v.plan_times.back()) {
            k = 0;
            while (v.plan_depart_s + v.plan_times[k] < now) k++;
        }
        res.relocation_km += (v.plan_dists[k] - v.plan_dists[v.plan_progress]) / 1000.0;
        v.free_s = t;
        v.free_node = node;
        v.has_plan = false;
        v.plan_nodes.clear();
        v.plan_times.clear();
        v.plan_dists.clear();
        v.plan_progress = 0;
    };

    auto commit = [&](int32_t vid, int32_t ti, const Assignment& a, double now) {
        LaVehicle& v = vehicles[vid];
        cancel_plan(v, now);
        const Trip& t = trips[ti];
        v.free_s = t.start_time_s + t.duration_s();
        v.free_node = net.require_node(t.end_node);
        res.relocation_km += a.reloc_m / 1000.0;
        RequestLog& lg = res.log[ti];
        lg.assign_s = now;
        lg.pickup_s = t.start_time_s;
        lg.vehicle_id = vid;
        lg.outcome = RequestOutcome::served;
        res.served++;
        handled[ti] = 1;
        n_handled++;
    };

    size_t horizon_lo = 0;
    for (double now = trips.front().start_time_s; n_handled < trips.size();
         now += params.t_b_s) {
        while (horizon_lo < trips.size() && handled[horizon_lo]) horizon_lo++;

        /* visible, still-unserved trips split into due-now and future */
        std::vector<int32_t> due, future;
        for (size_t i = horizon_lo; i < trips.size(); i++) {
            if (handled[i]) continue;
            double s = trips[i].start_time_s;
            if (s >= now + params.t_la_s) break;
            if (s < now + params.t_b_s) due.push_back(static_cast<int32_t>(i));
            else future.push_back(static_cast<int32_t>(i));
        }

        auto make_requests = [&](const std::vector<int32_t>& set) {
            std::vector<PendingRequest> reqs;
            for (int32_t ti : set)
                reqs.push_back(PendingRequest{ti, trips[ti].start_time_s,
                                              net.require_node(trips[ti].start_node),
                                              trips[ti].start_time_s});
            return reqs;
        };

        /* phase 1: final assignment for trips starting before the next batch */
        if (!due.empty()) {
            std::vector<AvailableVehicle> avail;
            for (size_t v = 0; v < vehicles.size(); v++) {
                auto [t, node] = la_avail(vehicles[v], now);
                avail.push_back(AvailableVehicle{static_cast<int32_t>(v), node, t});
            }
            auto assignments = assign_impl(make_requests(due), avail, now, zero_wait, net,
                                           router, CostMode::relocation);
            std::vector<uint8_t> got(due.size(), 0);
            for (const auto& a : assignments) {
                commit(avail[a.vehicle_slot].vehicle_id, due[a.request_slot], a, now);
                got[a.request_slot] = 1;
            }
            for (size_t r = 0; r < due.size(); r++) {
                if (got[r]) continue;
                /* nobody can arrive by the start time: a vehicle is created
                 * at the start node, zero wait */
                int32_t ti = due[r];
                const Trip& t = trips[ti];
                LaVehicle nv;
                nv.free_s = t.start_time_s + t.duration_s();
                nv.free_node = net.require_node(t.end_node);
                int32_t vid = static_cast<int32_t>(vehicles.size());
                vehicles.push_back(nv);
                RequestLog& lg = res.log[ti];
                lg.assign_s = now;
                lg.pickup_s = t.start_time_s;
                lg.vehicle_id = vid;
                lg.outcome = RequestOutcome::spawned;
                res.served++;
                handled[ti] = 1;
                n_handled++;
            }
        }

        /* phase 2: provisional pre-positioning toward known future trips */
        if (!future.empty()) {
            std::vector<AvailableVehicle> avail;
            for (size_t v = 0; v < vehicles.size(); v++) {
                if (vehicles[v].free_s > now && !vehicles[v].has_plan) continue;  // committed
                auto [t, node] = la_avail(vehicles[v], now);
                avail.push_back(AvailableVehicle{static_cast<int32_t>(v), node, t});
            }
            auto assignments = assign_impl(make_requests(future), avail, now, zero_wait, net,
                                           router, CostMode::relocation);
            std::vector<uint8_t> replanned(vehicles.size(), 0);
            for (const auto& a : assignments) {
                int32_t vid = avail[a.vehicle_slot].vehicle_id;
                LaVehicle& v = vehicles[vid];
                replanned[vid] = 1;
                int32_t target = net.require_node(trips[future[a.request_slot]].start_node);
                if (v.has_plan && v.plan_nodes.back() == target) continue;  // stay the course
                cancel_plan(v, now);
                if (a.drive_edges.empty()) continue;  // already there
                v.has_plan = true;
                v.plan_depart_s = avail[a.vehicle_slot].avail_s;
                v.plan_nodes.assign(1, avail[a.vehicle_slot].node_idx);
                v.plan_times.assign(1, 0.0);
                v.plan_dists.assign(1, 0.0);
                v.plan_progress = 0;
                int32_t cur = avail[a.vehicle_slot].node_idx;
                for (int32_t eid : a.drive_edges) {
                    const EdgeRecord& e = net.edge(eid);
                    cur = e.a == cur ? e.b : e.a;
                    v.plan_nodes.push_back(cur);
                    v.plan_times.push_back(v.plan_times.back() +
                                           e.length_m / params.profile.speed_mps(e.upgraded));
                    v.plan_dists.push_back(v.plan_dists.back() + e.length_m);
                }
            }
            for (size_t v = 0; v < vehicles.size(); v++)
                if (vehicles[v].has_plan && !replanned[v]) cancel_plan(vehicles[v], now);
        } else {
            for (auto& v : vehicles) cancel_plan(v, now);
        }
    }

    res.fleet_size = static_cast<int32_t>(vehicles.size());
    res.mean_wait_s = 0;
    res.utilization =
        res.fleet_size > 0 ? static_cast<double>(res.served) / res.fleet_size : 0;
    return res;
}

/* ---- closed-form bound and search helpers ---- */

int64_t standby_bound(double area_km2, double v_r_kmh, double t_w_s) {
    if (!(area_km2 > 0) || !(v_r_kmh > 0) || !(t_w_s > 0))
        throw std::invalid_argument("standby_bound: all arguments must be positive");
    double r_km = v_r_kmh * t_w_s / 3600.0;
    return llround(area_km2 / (2.0 * r_km * r_km));
}

int32_t fleet_for_service_level(const std::vector<Trip>& trips, const PathNetwork& net,
                                const SimParams& params, double target_fraction, int32_t step) {
    if (step < 1) throw std::invalid_argument("fleet_for_service_level: step must be >= 1");
    if (target_fraction >= 1)
        throw std::invalid_argument("fleet_for_service_level: target must be < 1");
    if (target_fraction <= 0) return step;
    if (trips.empty()) return step;

    auto frac = [&](int32_t fleet) {
        return simulate_online_fixed(trips, net, fleet, params).served_within_tw;
    };
    int32_t n = static_cast<int32_t>(trips.size());
    int32_t hi = ((n + step - 1) / step) * step;
    if (frac(hi) < target_fraction)
        throw std::runtime_error("fleet_for_service_level: target unattainable even at fleet = " +
                                 std::to_string(hi));
    int32_t lo = 0;  // zero vehicles serve nothing
    while (hi - lo > step) {
        int32_t mid = lo + (hi - lo) / (2 * step) * step;
        if (mid == lo) mid = lo + step;
        if (frac(mid) >= target_fraction) hi = mid;
        else lo = mid;
    }
    return hi;
}

LogLogFit loglog_fit(const std::vector<std::pair<double, double>>& xy) {
    LogLogFit fit;
    if (xy.size() < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = static_cast<double>(xy.size());
    for (const auto& [x, y] : xy) {
        double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) return fit;
    fit.exponent = (n * sxy - sx * sy) / denom;
    double intercept = (sy - fit.exponent * sx) / n;
    double ss_res = 0, ss_tot = 0, mean_y = sy / n;
    for (const auto& [x, y] : xy) {
        double ly = std::log(y);
        double pred = intercept + fit.exponent * std::log(x);
        ss_res += (ly - pred) * (ly - pred);
        ss_tot += (ly - mean_y) * (ly - mean_y);
    }
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

/* ---- serialization ---- */

std::string SimResult::summary_json() const {
    std::ostringstream os;
    os << "{\"fleet_size\":" << fleet_size << ",\"requests\":" << requests
       << ",\"served\":" << served << ",\"unserved\":" << unserved
       << ",\"mean_wait_s\":" << csv::fmt(mean_wait_s)
       << ",\"served_within_tw\":" << csv::fmt(served_within_tw)
       << ",\"relocation_km\":" << csv::fmt(relocation_km)
       << ",\"utilization\":" << csv::fmt(utilization) << "}";
    return os.str();
}

void SimResult::write_log_csv(std::ostream& os) const {
    os << "trip_id,request_s,assign_s,pickup_s,vehicle_id,walk_m,outcome\n";
    for (const auto& lg : log) {
        const char* oc = lg.outcome == RequestOutcome::served
                             ? "served"
                             : (lg.outcome == RequestOutcome::spawned ? "spawned" : "expired");
        os << lg.trip_id << ',' << csv::fmt(lg.request_s) << ',' << csv::fmt(lg.assign_s) << ','
           << csv::fmt(lg.pickup_s) << ',' << lg.vehicle_id << ',' << csv::fmt(lg.walk_m) << ','
           << oc << '\n';
    }
}

}  // namespace srspmd
