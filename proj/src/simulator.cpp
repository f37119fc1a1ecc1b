#include "latbgp/simulator.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <unordered_map>

#include "latbgp/error.hpp"

namespace latbgp {

OriginSpec OriginSpec::by_id(std::string id) {
    OriginSpec s;
    s.router_id = std::move(id);
    return s;
}

OriginSpec OriginSpec::nearest(Asn asn, GeoPoint near) {
    OriginSpec s;
    s.asn = asn;
    s.near = near;
    return s;
}

void SimulationConfig::validate() const {
    policy.validate();
    pref_policy.validate();
    if (max_messages == 0)
        throw usage_error("max_messages must be positive");
    if (deploying_ases && policy.protocol != Protocol::AsPrep)
        throw usage_error("deploying_ases only applies to asprep");
    if (!origin.router_id && !(origin.asn && origin.near))
        throw usage_error("origin requires a router id or an (asn, near) pair");
}

RouterIndex resolve_origin(const OriginSpec& spec, const Topology& topo) {
    if (spec.router_id) {
        auto i = topo.index_of(*spec.router_id);
        if (!i)
            throw data_error("origin router " + *spec.router_id + " not in topology");
        if (topo.router(*i).kind != NodeKind::Border)
            throw usage_error("origin router " + *spec.router_id + " is a reflector");
        return *i;
    }
    if (!spec.asn || !spec.near)
        throw usage_error("origin spec is empty");
    RouterIndex best = kNoRouter;
    double best_km = 0.0;
    for (RouterIndex i = 0; i < topo.router_count(); ++i) {
        const RouterNode& r = topo.router(i);
        if (r.kind != NodeKind::Border || r.asn != *spec.asn) continue;
        double km = geodesic_km(*spec.near, r.geo);
        if (best == kNoRouter || km < best_km) {
            best = i; // ties keep the earlier (smaller-id) router
            best_km = km;
        }
    }
    if (best == kNoRouter)
        throw data_error("origin AS " + std::to_string(*spec.asn) + " not in topology");
    return best;
}

PrependPolicy deployment_filter(Asn sender_as, const SimulationConfig& config) {
    if (config.policy.protocol != Protocol::AsPrep) return config.policy;
    if (!config.deploying_ases || config.deploying_ases->count(sender_as))
        return config.policy;
    return PrependPolicy{Protocol::Baseline, 0.0};
}

namespace {

struct EbgpNeighbor {
    RouterIndex router;
    NeighborKind session; // what the neighbor is to this border's AS
};

// Per-border bookkeeping of what has already been advertised, so only
// genuinely new information generates messages.
struct BorderState {
    std::optional<Route> sent_best_external;          // slot A toward the reflector
    std::optional<Route> sent_best_customer;          // slot B toward the reflector
    std::optional<Route> exported_any;                // basis sent to customer sessions
    std::optional<Route> exported_customer_route;     // basis sent to peer/provider sessions
};

class Simulation {
public:
    Simulation(const Topology& topo, const AsRelationshipDb& rel, const SimulationConfig& cfg)
        : topo_(topo), rel_(rel), cfg_(cfg) {
        precompute();
    }

    SimulationResult go() {
        SimulationResult res;
        res.config = cfg_;
        res.ribs.resize(topo_.router_count());
        ribs_ = &res.ribs;

        origin_ = resolve_origin(cfg_.origin, topo_);
        res.origin = origin_;
        seed();

        bool aborted = false;
        std::uint64_t processed = 0;
        while (!queue_.empty()) {
            if (counters_.total() > cfg_.max_messages) {
                aborted = true;
                break;
            }
            UpdateMessage msg = std::move(queue_.front());
            queue_.pop_front();
            ++processed;
            deliver(msg);
        }
        assert(aborted || processed == counters_.total());
        (void)processed;

        res.counters = counters_;
        res.converged = !aborted;
        for (RouterIndex i = 0; i < topo_.router_count(); ++i)
            if (topo_.router(i).kind == NodeKind::Border && !res.ribs[i].best())
                res.unreachable.push_back(i);
        return res;
    }

private:
    void precompute() {
        const std::size_t n = topo_.router_count();
        reflector_of_.assign(n, kNoRouter);
        ebgp_neighbors_.resize(n);

        std::unordered_map<Asn, RouterIndex> reflectors;
        for (RouterIndex i = 0; i < n; ++i) {
            const RouterNode& r = topo_.router(i);
            if (r.kind == NodeKind::Reflector) {
                if (!reflectors.emplace(r.asn, i).second)
                    throw internal_error("AS " + std::to_string(r.asn) + " has two reflectors");
            } else {
                members_[r.asn].push_back(i); // ascending: index order is id order
            }
        }
        for (auto& [asn, members] : members_) {
            auto it = reflectors.find(asn);
            if (it == reflectors.end())
                throw usage_error("AS " + std::to_string(asn) +
                                  " has no reflector; run the topology through refinement");
            for (RouterIndex m : members) reflector_of_[m] = it->second;
        }

        for (RouterIndex i = 0; i < n; ++i) {
            if (topo_.router(i).kind != NodeKind::Border) continue;
            for (std::uint32_t li : topo_.links_of(i)) {
                const Link& l = topo_.link(li);
                if (l.kind != LinkKind::InterAs) continue;
                RouterIndex peer = l.other(i);
                ebgp_neighbors_[i].push_back(
                    EbgpNeighbor{peer, rel_.classify(topo_.router(i).asn, topo_.router(peer).asn)});
            }
            // adjacency is sorted by far endpoint, so this list already is
        }
        state_.resize(n);
    }

    void enqueue(RouterIndex from, RouterIndex to, Route route) {
        Channel ch = topo_.router(from).asn == topo_.router(to).asn ? Channel::Ibgp : Channel::Ebgp;
        if (ch == Channel::Ibgp) ++counters_.ibgp; else ++counters_.ebgp;
        queue_.push_back(UpdateMessage{from, to, ch, std::move(route)});
    }

    Route ibgp_advert(const Route& basis, RouterIndex border, AdvertSlot slot) const {
        Route r = basis;
        r.next_hop = border;
        r.advertiser = border;
        r.slot = slot;
        r.learned_via = LearnedVia::Ibgp;
        r.igp_cost_ms = 0.0;
        return r;
    }

    void seed() {
        const RouterNode& o = topo_.router(origin_);
        Route origin_route;
        origin_route.prefix = 0;
        origin_route.local_pref = cfg_.pref_policy.local_pref(NeighborKind::Origin);
        origin_route.learned_via = LearnedVia::Origin;
        origin_route.neighbor_as_rel = NeighborKind::Origin;
        origin_route.next_hop = origin_;
        origin_route.advertiser = origin_;
        (*ribs_)[origin_].insert(origin_route, cfg_.policy.protocol);

        // A lone border has no iBGP peer to reach through its reflector, so
        // the seed advertisement is suppressed for single-member ASes.
        bool advertise_reflector = members_.at(o.asn).size() > 1;
        border_actions(origin_, advertise_reflector);
    }

    void deliver(const UpdateMessage& msg) {
        const RouterNode& to = topo_.router(msg.to);
        if (to.kind == NodeKind::Reflector) {
            RibOutcome out = (*ribs_)[msg.to].insert(msg.route, cfg_.policy.protocol);
            if (out == RibOutcome::NoChange) return;
            // fan the advertiser-keyed route out to every other member
            for (RouterIndex m : members_.at(to.asn))
                if (m != msg.route.advertiser)
                    enqueue(msg.to, m, msg.route);
            return;
        }

        Route route = msg.route;
        if (msg.channel == Channel::Ibgp) {
            route = apply_ibgp_receive(std::move(route), msg.to,
                                       deployment_filter(to.asn, cfg_), topo_);
        } else {
            // standard loop rejection: a path that already contains the
            // receiver's AS is discarded on arrival
            const Asn self = to.asn;
            for (Asn hop : route.as_path)
                if (hop == self) return;
            route.neighbor_as_rel = rel_.classify(self, topo_.router(msg.from).asn);
            route.local_pref = cfg_.pref_policy.local_pref(route.neighbor_as_rel);
        }
        if ((*ribs_)[msg.to].insert(route, cfg_.policy.protocol) == RibOutcome::NoChange)
            return;
        border_actions(msg.to, true);
    }

    // Re-advertise whatever changed: the two iBGP streams toward the
    // reflector, then per-session eBGP exports in ascending neighbor order.
    void border_actions(RouterIndex r, bool advertise_reflector) {
        Rib& rib = (*ribs_)[r];
        BorderState& st = state_[r];

        const Route* e_any = rib.best_external();
        const Route* e_cust = rib.best_external_customer();
        if (e_any && (!st.sent_best_external || !(*st.sent_best_external == *e_any))) {
            st.sent_best_external = *e_any;
            if (advertise_reflector)
                enqueue(r, reflector_of_[r], ibgp_advert(*e_any, r, AdvertSlot::BestExternal));
        }
        // the second stream only carries information when the overall best
        // external is not itself exportable beyond customers
        if (e_cust && e_any && !(*e_cust == *e_any) &&
            (!st.sent_best_customer || !(*st.sent_best_customer == *e_cust))) {
            st.sent_best_customer = *e_cust;
            if (advertise_reflector)
                enqueue(r, reflector_of_[r], ibgp_advert(*e_cust, r, AdvertSlot::BestCustomerRoute));
        }

        const Route* x_any = rib.best();
        const Route* x_cust = rib.best_exportable_to(NeighborKind::Peer);
        bool any_changed =
            x_any && (!st.exported_any || !(*st.exported_any == *x_any));
        bool cust_changed =
            x_cust && (!st.exported_customer_route || !(*st.exported_customer_route == *x_cust));

        const PrependPolicy policy = deployment_filter(topo_.router(r).asn, cfg_);
        for (const EbgpNeighbor& nb : ebgp_neighbors_[r]) {
            const Route* basis = nullptr;
            if (nb.session == NeighborKind::Customer) {
                if (any_changed) basis = x_any;
            } else {
                if (cust_changed) basis = x_cust;
            }
            if (!basis) continue;
            enqueue(r, nb.router, apply_ebgp_export(*basis, r, nb.router, policy, topo_));
        }
        if (any_changed) st.exported_any = *x_any;
        if (cust_changed) st.exported_customer_route = *x_cust;
    }

    const Topology& topo_;
    const AsRelationshipDb& rel_;
    const SimulationConfig& cfg_;

    std::vector<RouterIndex> reflector_of_;
    std::map<Asn, std::vector<RouterIndex>> members_;
    std::vector<std::vector<EbgpNeighbor>> ebgp_neighbors_;
    std::vector<BorderState> state_;

    std::vector<Rib>* ribs_ = nullptr;
    std::deque<UpdateMessage> queue_;
    MessageCounters counters_;
    RouterIndex origin_ = kNoRouter;
};

} // namespace

SimulationResult run(const Topology& topo, const AsRelationshipDb& rel_db,
                     const SimulationConfig& config) {
    config.validate();
    Simulation sim(topo, rel_db, config);
    return sim.go();
}

} // namespace latbgp
