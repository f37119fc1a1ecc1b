#pragma once

#include <map>
#include <optional>

#include "latbgp/route.hpp"

namespace latbgp {

enum class RibOutcome { NoChange, EntryChanged, BestChanged };

/// Per-router route store with ADD-PATH semantics: one entry per
/// (prefix, advertiser, slot), plus the comparator-best entry per prefix.
class Rib {
public:
    struct Key {
        std::uint32_t prefix;
        RouterIndex advertiser;
        AdvertSlot slot;
        auto operator<=>(const Key&) const = default;
    };

    /// Stores/replaces the entry for the route's key if the value differs,
    /// and recomputes the best entry. BestChanged implies the best route
    /// value changed (not merely its advertiser).
    RibOutcome insert(const Route& route, Protocol protocol);

    const Route* best(std::uint32_t prefix = 0) const;

    /// Best entry learned over eBGP or originated here (iBGP entries are
    /// never re-advertised toward the reflector).
    const Route* best_external(std::uint32_t prefix = 0) const;

    /// Same, restricted to routes exportable beyond customers.
    const Route* best_external_customer(std::uint32_t prefix = 0) const;

    /// Best entry whose export to a session of the given class the
    /// valley-free rule permits.
    const Route* best_exportable_to(NeighborKind session, std::uint32_t prefix = 0) const;

    const std::map<Key, Route>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    const Route* scan_best(std::uint32_t prefix, bool external_only, bool customer_only) const;

    std::map<Key, Route> entries_;
    std::map<std::uint32_t, Key> best_; // per prefix
    Protocol protocol_ = Protocol::Baseline;
};

} // namespace latbgp
