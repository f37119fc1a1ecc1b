#pragma once

#include <limits>
#include <string>
#include <vector>

#include "latbgp/simulator.hpp"

namespace latbgp {

constexpr double kUnreachableLatency = std::numeric_limits<double>::infinity();

/// Router sequence from a source to the origin over IntraAs/InterAs links.
struct ForwardingPath {
    std::vector<RouterIndex> hops;
    double total_latency_ms = 0.0;
};

/// Walks the converged RIBs: an iBGP-selected route hops to its next_hop
/// over the intra-AS mesh, an eBGP-selected route hops to its advertiser.
/// Fails loudly on forwarding loops and missing links.
ForwardingPath forwarding_path(RouterIndex node, const SimulationResult& result,
                               const Topology& topo);

struct PathAudit {
    bool valley_free = false;
    bool indeterminate = false; // some traversed AS pair has no known relation
    std::vector<Asn> as_sequence;
};

/// Collapses a forwarding path to its AS sequence and checks the
/// Gao-Rexford shape: uphill (customer-to-provider) steps, at most one
/// peer step, then downhill steps.
PathAudit path_audit(const ForwardingPath& path, const Topology& topo,
                     const AsRelationshipDb& rel_db);

/// Valley-free-constrained single-source shortest path: Dijkstra over the
/// (router, phase) product graph where phase records how a route reaching
/// that router was learned. The independent oracle for MinLatency.
struct ValleyFreeDistances {
    std::vector<double> latency_ms; // per router, minimum over phases

    /// Witness router sequence (node back to the origin) for diagnostics;
    /// empty when the node is unreachable.
    std::vector<RouterIndex> witness(RouterIndex node) const;

    // product-space internals, kept for witness reconstruction
    std::vector<double> phase_dist;        // router * 4 + phase
    std::vector<std::int64_t> phase_parent;
    RouterIndex origin = kNoRouter;
};

ValleyFreeDistances valley_free_dijkstra(const Topology& topo, const AsRelationshipDb& rel_db,
                                         RouterIndex origin);

/// Policy-free lower bound: textbook Dijkstra over IntraAs + InterAs links.
std::vector<double> unconstrained_dijkstra(const Topology& topo, RouterIndex origin);

/// Per-border one-way latency distribution of a converged run.
struct LatencyReport {
    std::string protocol_label;
    std::string q_label; // empty unless asprep
    std::vector<std::pair<std::string, double>> node_latency; // by router id
    std::size_t reachable = 0;
    std::size_t unreachable = 0;
    std::vector<std::pair<double, double>> cdf; // latency -> cumulative fraction

    /// Nearest-rank percentile over the finite latency multiset.
    double percentile(double p) const;

    std::vector<double> sorted_latencies;
};

LatencyReport latency_report(const SimulationResult& result, const Topology& topo);

/// Nearest-rank percentile of an arbitrary multiset (p in [0, 100]).
double percentile_nearest_rank(std::vector<double> values, double p);

} // namespace latbgp
