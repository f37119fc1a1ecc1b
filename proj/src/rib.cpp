#include "latbgp/rib.hpp"

namespace latbgp {

namespace {
bool is_external(const Route& r) {
    return r.learned_via == LearnedVia::Ebgp || r.learned_via == LearnedVia::Origin;
}
bool is_customer_route(const Route& r) {
    return r.neighbor_as_rel == NeighborKind::Customer ||
           r.neighbor_as_rel == NeighborKind::Origin;
}
} // namespace

RibOutcome Rib::insert(const Route& route, Protocol protocol) {
    protocol_ = protocol;
    Key k{route.prefix, route.advertiser, route.slot};
    auto it = entries_.find(k);
    if (it != entries_.end() && it->second == route)
        return RibOutcome::NoChange;

    std::optional<Route> old_best;
    if (const Route* b = best(route.prefix)) old_best = *b;

    entries_.insert_or_assign(k, route);

    const Route* nb = nullptr;
    Key nb_key{};
    for (const auto& [key, r] : entries_) {
        if (key.prefix != route.prefix) continue;
        if (!nb || route_better(r, *nb, protocol)) {
            nb = &r;
            nb_key = key;
        }
    }
    best_[route.prefix] = nb_key;

    if (!old_best || !(*old_best == *nb))
        return RibOutcome::BestChanged;
    return RibOutcome::EntryChanged;
}

const Route* Rib::best(std::uint32_t prefix) const {
    auto it = best_.find(prefix);
    if (it == best_.end()) return nullptr;
    auto e = entries_.find(it->second);
    return e == entries_.end() ? nullptr : &e->second;
}

const Route* Rib::scan_best(std::uint32_t prefix, bool external_only, bool customer_only) const {
    const Route* out = nullptr;
    for (const auto& [key, r] : entries_) {
        if (key.prefix != prefix) continue;
        if (external_only && !is_external(r)) continue;
        if (customer_only && !is_customer_route(r)) continue;
        if (!out || route_better(r, *out, protocol_)) out = &r;
    }
    return out;
}

const Route* Rib::best_external(std::uint32_t prefix) const {
    return scan_best(prefix, true, false);
}

const Route* Rib::best_external_customer(std::uint32_t prefix) const {
    return scan_best(prefix, true, true);
}

const Route* Rib::best_exportable_to(NeighborKind session, std::uint32_t prefix) const {
    if (session == NeighborKind::Customer)
        return scan_best(prefix, false, false);
    return scan_best(prefix, false, true);
}

} // namespace latbgp
