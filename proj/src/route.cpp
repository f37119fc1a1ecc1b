#include "latbgp/route.hpp"

#include <cmath>

#include "latbgp/error.hpp"

namespace latbgp {

const char* to_string(Protocol p) {
    switch (p) {
    case Protocol::Baseline: return "baseline";
    case Protocol::AsPrep: return "asprep";
    case Protocol::MinLatency: return "minlatency";
    }
    return "?";
}

Protocol protocol_from(const std::string& s) {
    if (s == "baseline") return Protocol::Baseline;
    if (s == "asprep") return Protocol::AsPrep;
    if (s == "minlatency") return Protocol::MinLatency;
    throw usage_error("unknown protocol '" + s + "'");
}

void PrependPolicy::validate() const {
    if (protocol == Protocol::AsPrep && !(q_ms > 0.0))
        throw usage_error("asprep requires a positive quantization factor");
}

namespace {
void check_quantum(double latency_ms, double q_ms) {
    if (!(q_ms > 0.0))
        throw internal_error("prepend count: quantization factor must be > 0");
    if (!(latency_ms >= 0.0))
        throw internal_error("prepend count: latency must be >= 0");
}

int checked_count(double v) {
    if (v > 1e9)
        throw internal_error("prepend count overflows; quantization factor too small");
    return static_cast<int>(v);
}

void prepend(Route& r, Asn asn, int times) {
    r.as_path.insert(r.as_path.begin(), static_cast<std::size_t>(times), asn);
}
} // namespace

int ebgp_prepend_count(double latency_ms, double q_ms) {
    check_quantum(latency_ms, q_ms);
    return std::max(1, checked_count(std::ceil(latency_ms / q_ms)));
}

int ibgp_prepend_count(double latency_ms, double q_ms) {
    check_quantum(latency_ms, q_ms);
    return checked_count(std::floor(latency_ms / q_ms));
}

Route apply_ibgp_receive(Route route, RouterIndex receiver, const PrependPolicy& policy,
                         const Topology& topo) {
    double latency = 0.0;
    if (route.next_hop != receiver) {
        const Link* l = topo.find_link(route.next_hop, receiver);
        if (!l || l->kind != LinkKind::IntraAs)
            throw internal_error("ibgp receive: no intra-AS link from " +
                                 topo.router(route.next_hop).id + " to " +
                                 topo.router(receiver).id);
        latency = l->latency_ms;
    }
    route.igp_cost_ms = latency;
    route.learned_via = LearnedVia::Ibgp;
    switch (policy.protocol) {
    case Protocol::Baseline:
        break;
    case Protocol::AsPrep:
        prepend(route, topo.router(receiver).asn, ibgp_prepend_count(latency, policy.q_ms));
        break;
    case Protocol::MinLatency:
        route.acc_latency_ms += latency;
        break;
    }
    return route;
}

Route apply_ebgp_export(Route route, RouterIndex sender, RouterIndex peer,
                        const PrependPolicy& policy, const Topology& topo) {
    const Link* l = topo.find_link(sender, peer);
    if (!l || l->kind != LinkKind::InterAs)
        throw internal_error("ebgp export: no inter-AS link from " + topo.router(sender).id +
                             " to " + topo.router(peer).id);
    const Asn sender_asn = topo.router(sender).asn;
    switch (policy.protocol) {
    case Protocol::Baseline:
        prepend(route, sender_asn, 1);
        break;
    case Protocol::AsPrep:
        prepend(route, sender_asn, ebgp_prepend_count(l->latency_ms, policy.q_ms));
        break;
    case Protocol::MinLatency:
        prepend(route, sender_asn, 1);
        route.acc_latency_ms += l->latency_ms;
        break;
    }
    route.next_hop = sender;
    route.advertiser = sender;
    route.slot = AdvertSlot::BestExternal;
    route.learned_via = LearnedVia::Ebgp;
    route.igp_cost_ms = 0.0;
    return route;
}

namespace {

int learned_via_rank(LearnedVia v) {
    switch (v) {
    case LearnedVia::Origin: return 0; // a router's own route beats anything learned
    case LearnedVia::Ebgp: return 1;
    case LearnedVia::Ibgp: return 2;
    }
    return 3;
}

std::strong_ordering cmp_double(double a, double b) {
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Asn first_hop_asn(const Route& r) {
    return r.as_path.empty() ? 0 : r.as_path.front();
}

// Deterministic residue once the protocol-specific criteria tie: compares
// every remaining field so the order is total on distinct route values.
std::strong_ordering final_tie_break(const Route& a, const Route& b) {
    if (auto c = first_hop_asn(a) <=> first_hop_asn(b); c != 0) return c;
    if (auto c = a.advertiser <=> b.advertiser; c != 0) return c;
    if (auto c = a.as_path <=> b.as_path; c != 0) return c;
    if (auto c = a.local_pref <=> b.local_pref; c != 0) return c;
    if (auto c = learned_via_rank(a.learned_via) <=> learned_via_rank(b.learned_via); c != 0) return c;
    if (auto c = cmp_double(a.igp_cost_ms, b.igp_cost_ms); c != 0) return c;
    if (auto c = cmp_double(a.acc_latency_ms, b.acc_latency_ms); c != 0) return c;
    if (auto c = static_cast<int>(a.neighbor_as_rel) <=> static_cast<int>(b.neighbor_as_rel); c != 0) return c;
    if (auto c = a.next_hop <=> b.next_hop; c != 0) return c;
    if (auto c = a.slot <=> b.slot; c != 0) return c;
    return a.prefix <=> b.prefix;
}

} // namespace

std::strong_ordering best_path_compare(const Route& a, const Route& b, Protocol protocol) {
    // higher local preference wins in every protocol
    if (auto c = b.local_pref <=> a.local_pref; c != 0) return c;

    if (protocol == Protocol::MinLatency) {
        if (auto c = cmp_double(a.acc_latency_ms, b.acc_latency_ms); c != 0) return c;
        return final_tie_break(a, b);
    }

    // shorter AS path; route origin and MED are modeled constant
    if (auto c = a.as_path.size() <=> b.as_path.size(); c != 0) return c;
    // eBGP over iBGP
    if (auto c = learned_via_rank(a.learned_via) <=> learned_via_rank(b.learned_via); c != 0) return c;
    // hot potato: lower interior cost
    if (auto c = cmp_double(a.igp_cost_ms, b.igp_cost_ms); c != 0) return c;
    return final_tie_break(a, b);
}

} // namespace latbgp
