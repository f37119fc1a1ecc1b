#include "latbgp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_set>

#include "latbgp/error.hpp"

namespace latbgp {

ForwardingPath forwarding_path(RouterIndex node, const SimulationResult& result,
                               const Topology& topo) {
    ForwardingPath path;
    std::unordered_set<RouterIndex> visited;
    RouterIndex cur = node;
    path.hops.push_back(cur);
    visited.insert(cur);

    while (cur != result.origin) {
        const Route* best = result.ribs[cur].best();
        if (!best)
            throw data_error("forwarding: no selected route at " + topo.router(cur).id);
        RouterIndex next;
        LinkKind expect;
        switch (best->learned_via) {
        case LearnedVia::Ibgp:
            next = best->next_hop;
            expect = LinkKind::IntraAs;
            break;
        case LearnedVia::Ebgp:
            next = best->advertiser;
            expect = LinkKind::InterAs;
            break;
        default:
            throw internal_error("forwarding: origin-learned route away from the origin at " +
                                 topo.router(cur).id);
        }
        const Link* l = topo.find_link(cur, next);
        if (!l || l->kind != expect)
            throw internal_error("forwarding: missing " + std::string(to_string(expect)) +
                                 " link " + topo.router(cur).id + " -> " + topo.router(next).id);
        path.total_latency_ms += l->latency_ms;
        cur = next;
        if (!visited.insert(cur).second)
            throw internal_error("forwarding loop through " + topo.router(cur).id);
        path.hops.push_back(cur);
    }
    return path;
}

PathAudit path_audit(const ForwardingPath& path, const Topology& topo,
                     const AsRelationshipDb& rel_db) {
    PathAudit audit;
    for (RouterIndex i : path.hops) {
        Asn asn = topo.router(i).asn;
        if (audit.as_sequence.empty() || audit.as_sequence.back() != asn)
            audit.as_sequence.push_back(asn);
    }

    // uphill* peer? downhill*, scanned in traffic direction
    enum { Up, PeerSeen, Down } stage = Up;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < audit.as_sequence.size(); ++i) {
        auto rel = rel_db.relation(audit.as_sequence[i], audit.as_sequence[i + 1]);
        if (!rel) {
            audit.indeterminate = true;
            audit.valley_free = false;
            return audit;
        }
        switch (*rel) {
        case AsRel::CustomerOf: // next hop is our provider: uphill
            if (stage != Up) ok = false;
            break;
        case AsRel::Peer:
            if (stage != Up) ok = false;
            stage = PeerSeen;
            break;
        case AsRel::ProviderOf: // next hop is our customer: downhill
            stage = Down;
            break;
        }
        if (!ok) break;
    }
    audit.valley_free = ok;
    return audit;
}

namespace {

constexpr int kPhases = 4; // NeighborKind: Customer, Peer, Provider, Origin

int phase_of(NeighborKind k) { return static_cast<int>(k); }

struct HeapItem {
    double dist;
    std::uint64_t state;
    bool operator>(const HeapItem& o) const {
        if (dist != o.dist) return dist > o.dist;
        return state > o.state; // deterministic pops on ties
    }
};

} // namespace

ValleyFreeDistances valley_free_dijkstra(const Topology& topo, const AsRelationshipDb& rel_db,
                                         RouterIndex origin) {
    const std::size_t n = topo.router_count();
    ValleyFreeDistances out;
    out.origin = origin;
    out.phase_dist.assign(n * kPhases, kUnreachableLatency);
    out.phase_parent.assign(n * kPhases, -1);

    auto state_of = [](RouterIndex r, int phase) {
        return static_cast<std::uint64_t>(r) * kPhases + static_cast<std::uint64_t>(phase);
    };

    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    const std::uint64_t start = state_of(origin, phase_of(NeighborKind::Origin));
    out.phase_dist[start] = 0.0;
    heap.push(HeapItem{0.0, start});

    while (!heap.empty()) {
        auto [dist, state] = heap.top();
        heap.pop();
        if (dist > out.phase_dist[state]) continue;
        const RouterIndex u = static_cast<RouterIndex>(state / kPhases);
        const NeighborKind phase = static_cast<NeighborKind>(state % kPhases);
        const Asn u_as = topo.router(u).asn;

        for (std::uint32_t li : topo.links_of(u)) {
            const Link& l = topo.link(li);
            if (l.kind == LinkKind::ReflectorControl) continue;
            const RouterIndex v = l.other(u);
            std::uint64_t next_state;
            if (l.kind == LinkKind::IntraAs) {
                next_state = state_of(v, phase_of(phase)); // phase rides through the AS
            } else {
                const Asn v_as = topo.router(v).asn;
                if (!export_allowed(phase, rel_db.classify(u_as, v_as))) continue;
                next_state = state_of(v, phase_of(rel_db.classify(v_as, u_as)));
            }
            const double nd = dist + l.latency_ms;
            if (nd < out.phase_dist[next_state]) {
                out.phase_dist[next_state] = nd;
                out.phase_parent[next_state] = static_cast<std::int64_t>(state);
                heap.push(HeapItem{nd, next_state});
            }
        }
    }

    out.latency_ms.assign(n, kUnreachableLatency);
    for (RouterIndex r = 0; r < n; ++r)
        for (int p = 0; p < kPhases; ++p)
            out.latency_ms[r] = std::min(out.latency_ms[r], out.phase_dist[state_of(r, p)]);
    return out;
}

std::vector<RouterIndex> ValleyFreeDistances::witness(RouterIndex node) const {
    double best = kUnreachableLatency;
    std::int64_t state = -1;
    for (int p = 0; p < kPhases; ++p) {
        std::uint64_t s = static_cast<std::uint64_t>(node) * kPhases + p;
        if (phase_dist[s] < best) {
            best = phase_dist[s];
            state = static_cast<std::int64_t>(s);
        }
    }
    std::vector<RouterIndex> hops;
    while (state >= 0) {
        RouterIndex r = static_cast<RouterIndex>(state / kPhases);
        if (hops.empty() || hops.back() != r) hops.push_back(r);
        state = phase_parent[static_cast<std::uint64_t>(state)];
    }
    if (hops.empty() || hops.back() != origin) return {}; // unreachable
    return hops; // node first, origin last: traffic direction
}

std::vector<double> unconstrained_dijkstra(const Topology& topo, RouterIndex origin) {
    const std::size_t n = topo.router_count();
    std::vector<double> dist(n, kUnreachableLatency);
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    dist[origin] = 0.0;
    heap.push(HeapItem{0.0, origin});
    while (!heap.empty()) {
        auto [d, s] = heap.top();
        heap.pop();
        const RouterIndex u = static_cast<RouterIndex>(s);
        if (d > dist[u]) continue;
        for (std::uint32_t li : topo.links_of(u)) {
            const Link& l = topo.link(li);
            if (l.kind == LinkKind::ReflectorControl) continue;
            const RouterIndex v = l.other(u);
            const double nd = d + l.latency_ms;
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.push(HeapItem{nd, v});
            }
        }
    }
    return dist;
}

double percentile_nearest_rank(std::vector<double> values, double p) {
    if (values.empty())
        throw data_error("percentile of an empty multiset");
    if (!(p >= 0.0 && p <= 100.0))
        throw usage_error("percentile rank must be in [0, 100]");
    std::sort(values.begin(), values.end());
    std::size_t rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(values.size())));
    if (rank == 0) rank = 1;
    if (rank > values.size()) rank = values.size();
    return values[rank - 1];
}

double LatencyReport::percentile(double p) const {
    if (sorted_latencies.empty())
        throw data_error("percentile of an empty latency report");
    std::size_t rank = static_cast<std::size_t>(
        std::ceil(p / 100.0 * static_cast<double>(sorted_latencies.size())));
    if (rank == 0) rank = 1;
    if (rank > sorted_latencies.size()) rank = sorted_latencies.size();
    return sorted_latencies[rank - 1];
}

LatencyReport latency_report(const SimulationResult& result, const Topology& topo) {
    LatencyReport rep;
    rep.protocol_label = to_string(result.config.policy.protocol);
    if (result.config.policy.protocol == Protocol::AsPrep) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", result.config.policy.q_ms);
        rep.q_label = buf;
    }

    for (RouterIndex i = 0; i < topo.router_count(); ++i) {
        if (topo.router(i).kind != NodeKind::Border) continue;
        if (!result.ribs[i].best()) {
            ++rep.unreachable;
            continue;
        }
        ForwardingPath p = forwarding_path(i, result, topo);
        rep.node_latency.emplace_back(topo.router(i).id, p.total_latency_ms);
        ++rep.reachable;
    }
    // router ids are already in index (= id) order

    rep.sorted_latencies.reserve(rep.node_latency.size());
    for (auto& [id, ms] : rep.node_latency) rep.sorted_latencies.push_back(ms);
    std::sort(rep.sorted_latencies.begin(), rep.sorted_latencies.end());

    const double n = static_cast<double>(rep.sorted_latencies.size());
    for (std::size_t i = 0; i < rep.sorted_latencies.size(); ++i) {
        double v = rep.sorted_latencies[i];
        if (i + 1 < rep.sorted_latencies.size() && rep.sorted_latencies[i + 1] == v)
            continue; // emit one point per distinct value
        rep.cdf.emplace_back(v, static_cast<double>(i + 1) / n);
    }
    return rep;
}

} // namespace latbgp
