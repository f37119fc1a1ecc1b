#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "latbgp/relationships.hpp"
#include "latbgp/topology.hpp"

namespace latbgp {

enum class Protocol { Baseline, AsPrep, MinLatency };

const char* to_string(Protocol p);
Protocol protocol_from(const std::string& s);

/// Per-run prepending behaviour. q_ms is the quantization factor, required
/// positive for AsPrep and ignored otherwise.
struct PrependPolicy {
    Protocol protocol = Protocol::Baseline;
    double q_ms = 0.0;

    void validate() const;
    bool operator==(const PrependPolicy&) const = default;
};

enum class LearnedVia { Ebgp, Ibgp, Origin };

/// Which of a border's two iBGP advertisement streams an entry belongs to:
/// its best external route overall, or its best external route that is
/// exportable beyond customers (learned from a customer or originated).
/// Routes received over eBGP always sit in the BestExternal stream.
enum class AdvertSlot : std::uint8_t { BestExternal = 0, BestCustomerRoute = 1 };

struct Route {
    std::uint32_t prefix = 0;
    std::vector<Asn> as_path; // most recent prepend first
    int local_pref = 0;
    LearnedVia learned_via = LearnedVia::Origin;
    NeighborKind neighbor_as_rel = NeighborKind::Origin;
    RouterIndex next_hop = kNoRouter;   // border through which traffic exits the holder's AS
    RouterIndex advertiser = kNoRouter; // ADD-PATH source key
    AdvertSlot slot = AdvertSlot::BestExternal;
    double acc_latency_ms = 0.0; // MinLatency only, 0 otherwise
    double igp_cost_ms = 0.0;    // holder's intra-AS cost to next_hop

    bool operator==(const Route&) const = default;
};

/// Prepends applied when exporting over an eBGP session of one-way latency
/// L: max(1, ceil(L/Q)). The sender always prepends at least once.
int ebgp_prepend_count(double latency_ms, double q_ms);

/// Receiver-side prepends on an iBGP session: floor(L/Q), possibly zero.
int ibgp_prepend_count(double latency_ms, double q_ms);

/// Attribute handling when `receiver` accepts a route over iBGP whose
/// next_hop is a border of its own AS. Sets the interior cost, and per
/// protocol also receiver-prepends (AsPrep) or accumulates latency
/// (MinLatency).
Route apply_ibgp_receive(Route route, RouterIndex receiver, const PrependPolicy& policy,
                         const Topology& topo);

/// Attribute handling when `sender` exports a route over the eBGP session
/// to `peer`: prepends per protocol, rewrites next_hop/advertiser to the
/// sender, resets the interior cost, marks the route eBGP-learned.
Route apply_ebgp_export(Route route, RouterIndex sender, RouterIndex peer,
                        const PrependPolicy& policy, const Topology& topo);

/// Strict total order over route values; `less` means better. Baseline and
/// AsPrep compare local_pref, AS-path length, eBGP-over-iBGP, interior cost;
/// MinLatency compares local_pref then accumulated latency. Both end in a
/// deterministic tie-break chain covering every remaining field, so distinct
/// route values never compare equal.
std::strong_ordering best_path_compare(const Route& a, const Route& b, Protocol protocol);

inline bool route_better(const Route& a, const Route& b, Protocol protocol) {
    return best_path_compare(a, b, protocol) < 0;
}

} // namespace latbgp
