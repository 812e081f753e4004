#include "srspmd/trips.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include "srspmd/csv.hpp"

namespace srspmd {

TripLoadResult load_trips(const std::string& file, const PathNetwork& net) {
    csv::Reader r(file);
    int c_id = r.require_column("trip_id");
    int c_tag = r.require_column("vehicle_tag");
    int c_t0 = r.require_column("start_time_s");
    int c_t1 = r.require_column("end_time_s");
    bool by_node = r.column("start_node") >= 0;
    int c_sn = -1, c_en = -1, c_sx = -1, c_sy = -1, c_ex = -1, c_ey = -1;
    if (by_node) {
        c_sn = r.require_column("start_node");
        c_en = r.require_column("end_node");
    } else {
        c_sx = r.require_column("start_x");
        c_sy = r.require_column("start_y");
        c_ex = r.require_column("end_x");
        c_ey = r.require_column("end_y");
    }
    TripLoadResult out;
    std::vector<std::string> row;
    while (r.next_row(row)) {
        Trip t;
        t.trip_id = r.parse_int(row[c_id]);
        t.vehicle_tag = row[c_tag];
        t.start_time_s = r.parse_double(row[c_t0]);
        t.end_time_s = r.parse_double(row[c_t1]);
        if (!(t.end_time_s > t.start_time_s)) {
            out.rejected++;
            continue;
        }
        if (by_node) {
            t.start_node = r.parse_int(row[c_sn]);
            t.end_node = r.parse_int(row[c_en]);
            if (net.node_index(t.start_node) < 0 || net.node_index(t.end_node) < 0) {
                out.rejected++;
                continue;
            }
        } else {
            t.start_node = snap_point(net, r.parse_double(row[c_sx]), r.parse_double(row[c_sy]));
            t.end_node = snap_point(net, r.parse_double(row[c_ex]), r.parse_double(row[c_ey]));
        }
        out.trips.push_back(std::move(t));
    }
    std::sort(out.trips.begin(), out.trips.end(), [](const Trip& a, const Trip& b) {
        if (a.start_time_s != b.start_time_s) return a.start_time_s < b.start_time_s;
        return a.trip_id < b.trip_id;
    });
    return out;
}

void route_trips(std::vector<Trip>& trips, const PathNetwork& net, const SpeedProfile& profile,
                 int n_threads) {
    profile.validate();
    if (n_threads <= 0)
        n_threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n_threads = std::min<int>(n_threads, std::max<size_t>(trips.size(), 1));
    auto work = [&](int tid) {
        Router router(net);
        for (size_t i = tid; i < trips.size(); i += n_threads) {
            Trip& t = trips[i];
            t.route = router.route(t.start_node, t.end_node, profile);
            t.routed = true;
        }
    };
    if (n_threads == 1) {
        work(0);
        return;
    }
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; i++) pool.emplace_back(work, i);
    for (auto& th : pool) th.join();
}

FilterResult filter_trips(std::vector<Trip> trips, const PathNetwork& net,
                          const FilterPolicy& policy) {
    policy.validate();
    FilterResult out;
    Router router(net);
    for (auto& t : trips) {
        if (!t.routed) {
            t.route = router.route(t.start_node, t.end_node, SpeedProfile::uniform(1.0));
            t.routed = true;
        }
        double dur = t.duration_s();
        if (dur < policy.min_duration_s) {
            out.dropped.too_short++;
            continue;
        }
        if (dur > policy.max_duration_s) {
            out.dropped.too_long++;
            continue;
        }
        if (!t.route.reachable) {
            out.dropped.unroutable++;
            continue;
        }
        double speed_kmh = (t.route.length_m / dur) * 3.6;
        if (speed_kmh > policy.max_avg_speed_kmh) {
            out.dropped.too_fast++;
            continue;
        }
        out.kept.push_back(std::move(t));
    }
    return out;
}

ConcurrencyProfile concurrency_profile(const std::vector<Trip>& trips) {
    /* +1 at start, -1 at end; ends processed before starts at equal times so
     * back-to-back trips do not count as concurrent */
    std::vector<std::pair<double, int>> events;
    events.reserve(trips.size() * 2);
    for (const auto& t : trips) {
        events.emplace_back(t.start_time_s, +1);
        events.emplace_back(t.end_time_s, -1);
    }
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    ConcurrencyProfile out;
    int active = 0;
    for (size_t i = 0; i < events.size();) {
        size_t j = i;
        while (j < events.size() && events[j].first == events[i].first) {
            active += events[j].second;
            j++;
        }
        out.series.emplace_back(events[i].first, active);
        out.max_concurrent = std::max(out.max_concurrent, active);
        i = j;
    }
    return out;
}

ProximityShares proximity_share(const std::vector<Trip>& trips, const PathNetwork& net,
                                const std::vector<std::pair<double, double>>& pois,
                                double threshold_m) {
    if (!(threshold_m > 0)) throw std::invalid_argument("proximity_share: threshold must be > 0");
    ProximityShares out;
    if (trips.empty() || pois.empty()) return out;
    double r2 = threshold_m * threshold_m;
    auto near_any = [&](int64_t node_id) {
        const NodeRecord& n = net.node(net.require_node(node_id));
        for (const auto& [px, py] : pois) {
            double dx = n.x_m - px, dy = n.y_m - py;
            if (dx * dx + dy * dy <= r2) return true;
        }
        return false;
    };
    int64_t ns = 0, ne = 0, nei = 0;
    for (const auto& t : trips) {
        bool s = near_any(t.start_node);
        bool e = near_any(t.end_node);
        if (s) ns++;
        if (e) ne++;
        if (s || e) nei++;
    }
    double n = static_cast<double>(trips.size());
    out.start_share = ns / n;
    out.end_share = ne / n;
    out.either_share = nei / n;
    return out;
}

std::vector<DayUsage> usage_stats(const std::vector<Trip>& trips) {
    struct Acc {
        int64_t trips = 0;
        double minutes = 0;
        std::set<std::string> tags;
    };
    std::map<int, Acc> days;
    for (const auto& t : trips) {
        Acc& a = days[t.day_index()];
        a.trips++;
        a.minutes += t.duration_s() / 60.0;
        a.tags.insert(t.vehicle_tag);
    }
    std::vector<DayUsage> out;
    for (const auto& [day, a] : days) {
        DayUsage u;
        u.day = day;
        u.trips = a.trips;
        u.active_vehicles = static_cast<int64_t>(a.tags.size());
        if (!a.tags.empty()) {
            u.trips_per_vehicle = static_cast<double>(a.trips) / a.tags.size();
            u.minutes_used_per_vehicle = a.minutes / a.tags.size();
        }
        out.push_back(u);
    }
    return out;
}

}  // namespace srspmd
