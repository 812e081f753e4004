#include "srspmd/shareability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>

namespace srspmd {

namespace {

struct EdgeTmp {
    int32_t to;
    double dist_m, time_s;
};

std::vector<TripSummary> summarize(const std::vector<Trip>& trips) {
    std::vector<TripSummary> out;
    out.reserve(trips.size());
    for (size_t i = 0; i < trips.size(); i++) {
        const Trip& t = trips[i];
        if (!t.routed) throw std::invalid_argument("shareability: trips must be routed first");
        if (i > 0 && trips[i].start_time_s < trips[i - 1].start_time_s)
            throw std::invalid_argument("shareability: trips must be sorted by start time");
        out.push_back(TripSummary{t.trip_id, t.start_time_s, t.end_time_s,
                                  t.route.reachable ? t.route.length_m : 0.0});
    }
    return out;
}

ShareabilityGraph assemble(std::vector<TripSummary> summaries,
                           std::vector<std::vector<EdgeTmp>> per_source,
                           const SpeedProfile& profile, double max_connection_s) {
    ShareabilityGraph g;
    g.trips = std::move(summaries);
    g.profile = profile;
    g.max_connection_s = max_connection_s;
    g.offsets.assign(g.trips.size() + 1, 0);
    int64_t total = 0;
    for (size_t i = 0; i < per_source.size(); i++) {
        total += static_cast<int64_t>(per_source[i].size());
        g.offsets[i + 1] = total;
    }
    g.head.reserve(total);
    g.dist_m.reserve(total);
    g.time_s.reserve(total);
    for (auto& v : per_source) {
        for (const auto& e : v) {
            g.head.push_back(e.to);
            g.dist_m.push_back(e.dist_m);
            g.time_s.push_back(e.time_s);
        }
        v.clear();
        v.shrink_to_fit();
    }
    return g;
}

void parallel_over_sources(size_t n, int n_threads, const std::function<void(size_t, Router&)>& fn,
                           const PathNetwork& net) {
    if (n_threads <= 0)
        n_threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n_threads = std::min<int>(n_threads, std::max<size_t>(n, 1));
    auto work = [&](int tid) {
        Router router(net);
        for (size_t i = tid; i < n; i += n_threads) fn(i, router);
    };
    if (n_threads == 1) {
        work(0);
        return;
    }
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; i++) pool.emplace_back(work, i);
    for (auto& th : pool) th.join();
}

}  // namespace

ShareabilityGraph build_graph(const std::vector<Trip>& trips, const PathNetwork& net,
                              const SpeedProfile& profile, double max_connection_s,
                              int n_threads) {
    profile.validate();
    max_connection_s = std::min(max_connection_s, kMaxConnectionCapS);
    auto summaries = summarize(trips);
    const size_t n = trips.size();

    std::vector<double> starts(n);
    for (size_t i = 0; i < n; i++) starts[i] = summaries[i].start_s;

    std::vector<std::vector<EdgeTmp>> per_source(n);
    parallel_over_sources(
        n, n_threads,
        [&](size_t i, Router& router) {
            const Trip& src = trips[i];
            double end_i = src.end_time_s;
            /* candidates: start_j in (end_i, end_i + max_connection] */
            auto lo = std::upper_bound(starts.begin(), starts.end(), end_i);
            auto hi = std::upper_bound(starts.begin(), starts.end(), end_i + max_connection_s);
            if (lo == hi) return;
            double budget = *(hi - 1) - end_i;  // largest feasible relocation time
            router.one_to_all(net.require_node(src.end_node), profile, budget);
            for (auto it = lo; it != hi; ++it) {
                size_t j = static_cast<size_t>(it - starts.begin());
                int32_t start_idx = net.require_node(trips[j].start_node);
                if (!router.reached(start_idx)) continue;
                double reloc_t = router.time_at(start_idx);
                if (end_i + reloc_t <= summaries[j].start_s)
                    per_source[i].push_back(EdgeTmp{static_cast<int32_t>(j),
                                                    router.dist_at(start_idx), reloc_t});
            }
        },
        net);

    return assemble(std::move(summaries), std::move(per_source), profile, max_connection_s);
}

ShareabilityGraph build_stationary_graph(const std::vector<Trip>& trips, const PathNetwork& net,
                                         double d_walk_m, bool keep_observed_sequences,
                                         int n_threads) {
    auto summaries = summarize(trips);
    const size_t n = trips.size();
    const SpeedProfile walk = SpeedProfile::uniform(kWalkSpeedKmh);
    const double walk_mps = walk.base_mps();

    std::vector<double> starts(n);
    for (size_t i = 0; i < n; i++) starts[i] = summaries[i].start_s;

    std::vector<std::vector<EdgeTmp>> per_source(n);
    parallel_over_sources(
        n, n_threads,
        [&](size_t i, Router& router) {
            const Trip& src = trips[i];
            double end_i = src.end_time_s;
            auto lo = std::upper_bound(starts.begin(), starts.end(), end_i);
            auto hi = std::upper_bound(starts.begin(), starts.end(), end_i + kMaxConnectionCapS);
            if (lo == hi) return;
            router.one_to_all(net.require_node(src.end_node), walk, d_walk_m / walk_mps);
            for (auto it = lo; it != hi; ++it) {
                size_t j = static_cast<size_t>(it - starts.begin());
                int32_t start_idx = net.require_node(trips[j].start_node);
                if (!router.reached(start_idx)) continue;
                double walk_dist = router.dist_at(start_idx);
                if (walk_dist > d_walk_m) continue;
                double walk_t = walk_dist / walk_mps;
                if (end_i + walk_t <= summaries[j].start_s)
                    per_source[i].push_back(
                        EdgeTmp{static_cast<int32_t>(j), walk_dist, walk_t});
            }
        },
        net);

    if (keep_observed_sequences) {
        /* each bike's real consecutive trips stay connected even when the
         * recorded drop-off/pick-up gap exceeds d_walk */
        std::map<std::string, std::vector<size_t>> by_tag;
        for (size_t i = 0; i < n; i++) by_tag[trips[i].vehicle_tag].push_back(i);
        Router router(net);
        for (const auto& [tag, seq] : by_tag) {
            for (size_t k = 0; k + 1 < seq.size(); k++) {
                size_t i = seq[k], j = seq[k + 1];
                if (summaries[j].start_s < summaries[i].end_s) continue;  // dirty overlap
                bool present = false;
                for (const auto& e : per_source[i])
                    if (e.to == static_cast<int32_t>(j)) {
                        present = true;
                        break;
                    }
                if (present) continue;
                RoutedPath p = router.route(trips[i].end_node, trips[j].start_node, walk);
                double d = p.reachable ? p.length_m : 0.0;
                per_source[i].push_back(EdgeTmp{static_cast<int32_t>(j), d, 0.0});
            }
        }
        for (auto& v : per_source)
            std::sort(v.begin(), v.end(),
                      [](const EdgeTmp& a, const EdgeTmp& b) { return a.to < b.to; });
    }

    auto g = assemble(std::move(summaries), std::move(per_source),
                      SpeedProfile::uniform(kWalkSpeedKmh), kMaxConnectionCapS);
    return g;
}

GraphStats graph_stats(const ShareabilityGraph& g, double bin_width_m) {
    GraphStats s;
    s.edges = g.edge_count();
    s.bin_width_m = bin_width_m;
    if (g.n_trips() > 0)
        s.mean_out_degree = static_cast<double>(s.edges) / static_cast<double>(g.n_trips());
    for (double d : g.dist_m) {
        size_t bin = static_cast<size_t>(std::floor(d / bin_width_m));
        if (s.weight_histogram.size() <= bin) s.weight_histogram.resize(bin + 1, 0);
        s.weight_histogram[bin]++;
    }
    return s;
}

}  // namespace srspmd
