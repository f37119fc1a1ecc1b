#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "latbgp/rib.hpp"
#include "latbgp/route.hpp"

namespace latbgp {

/// Either an explicit router id, or the border of `asn` geodesically
/// nearest to `near` (ties to the smaller id).
struct OriginSpec {
    std::optional<std::string> router_id;
    std::optional<Asn> asn;
    std::optional<GeoPoint> near;

    static OriginSpec by_id(std::string id);
    static OriginSpec nearest(Asn asn, GeoPoint near);
    bool operator==(const OriginSpec&) const = default;
};

struct SimulationConfig {
    PrependPolicy policy;
    LocalPrefPolicy pref_policy = LocalPrefPolicy::neutralized();
    OriginSpec origin;
    /// AsPrep only: ASes applying latency-proportional prepending; absent
    /// means every AS deploys, empty means none (Baseline behaviour).
    std::optional<std::set<Asn>> deploying_ases;
    std::uint64_t max_messages = 10'000'000;

    void validate() const;
};

enum class Channel { Ibgp, Ebgp };

struct UpdateMessage {
    RouterIndex from = kNoRouter;
    RouterIndex to = kNoRouter;
    Channel channel = Channel::Ibgp;
    Route route;
};

struct MessageCounters {
    std::uint64_t ibgp = 0;
    std::uint64_t ebgp = 0;
    std::uint64_t total() const { return ibgp + ebgp; }
    bool operator==(const MessageCounters&) const = default;
};

struct SimulationResult {
    std::vector<Rib> ribs; // indexed by router
    MessageCounters counters;
    SimulationConfig config;
    RouterIndex origin = kNoRouter;
    bool converged = false;
    std::vector<RouterIndex> unreachable; // borders with no selected route
};

RouterIndex resolve_origin(const OriginSpec& spec, const Topology& topo);

/// Effective prepending behaviour for one AS under partial deployment.
PrependPolicy deployment_filter(Asn sender_as, const SimulationConfig& config);

/// Propagates a single prefix announcement from the configured origin to
/// convergence over a FIFO update queue, enforcing valley-free export and
/// counting every enqueued iBGP/eBGP message.
SimulationResult run(const Topology& topo, const AsRelationshipDb& rel_db,
                     const SimulationConfig& config);

} // namespace latbgp
