#include "latbgp/topology.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "latbgp/error.hpp"

namespace latbgp {

const char* to_string(NodeKind k) {
    return k == NodeKind::Border ? "border" : "reflector";
}

const char* to_string(LinkKind k) {
    switch (k) {
    case LinkKind::InterAs: return "inter_as";
    case LinkKind::IntraAs: return "intra_as";
    case LinkKind::ReflectorControl: return "reflector_control";
    }
    return "?";
}

namespace {
std::uint64_t pair_key(RouterIndex a, RouterIndex b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}
} // namespace

Topology Topology::build(std::vector<RouterNode> routers, const std::vector<LinkSpec>& links) {
    Topology t;
    std::sort(routers.begin(), routers.end(),
              [](const RouterNode& x, const RouterNode& y) { return x.id < y.id; });
    t.routers_ = std::move(routers);

    for (RouterIndex i = 0; i < t.routers_.size(); ++i) {
        const RouterNode& r = t.routers_[i];
        if (r.id.empty())
            throw usage_error("topology: router with empty id");
        if (r.asn == 0)
            throw usage_error("topology: router " + r.id + " has no positive ASN");
        if (!geo_valid(r.geo))
            throw usage_error("topology: router " + r.id + " has out-of-range coordinates");
        if (!t.index_.emplace(r.id, i).second)
            throw usage_error("topology: duplicate router id " + r.id);
    }

    t.adjacency_.resize(t.routers_.size());
    t.links_.reserve(links.size());
    for (const LinkSpec& ls : links) {
        auto ia = t.index_of(ls.a);
        auto ib = t.index_of(ls.b);
        if (!ia || !ib)
            throw usage_error("topology: link references unknown router " + (ia ? ls.b : ls.a));
        if (*ia == *ib)
            throw usage_error("topology: self link at " + ls.a);
        if (!(ls.latency_ms >= 0.0) || !std::isfinite(ls.latency_ms))
            throw usage_error("topology: negative or non-finite latency on link " + ls.a + "--" + ls.b);

        const RouterNode& ra = t.routers_[*ia];
        const RouterNode& rb = t.routers_[*ib];
        switch (ls.kind) {
        case LinkKind::InterAs:
            if (ra.asn == rb.asn)
                throw usage_error("topology: inter_as link within AS " + std::to_string(ra.asn));
            if (ra.kind != NodeKind::Border || rb.kind != NodeKind::Border)
                throw usage_error("topology: inter_as link touching a reflector: " + ls.a + "--" + ls.b);
            break;
        case LinkKind::IntraAs:
            if (ra.asn != rb.asn || ra.kind != NodeKind::Border || rb.kind != NodeKind::Border)
                throw usage_error("topology: intra_as link must join two borders of one AS: " +
                                  ls.a + "--" + ls.b);
            break;
        case LinkKind::ReflectorControl:
            if (ra.asn != rb.asn)
                throw usage_error("topology: control link crossing ASes: " + ls.a + "--" + ls.b);
            if ((ra.kind == NodeKind::Reflector) == (rb.kind == NodeKind::Reflector))
                throw usage_error("topology: control link must join a border to its reflector: " +
                                  ls.a + "--" + ls.b);
            if (ls.latency_ms != 0.0)
                throw usage_error("topology: control link " + ls.a + "--" + ls.b +
                                  " must have latency_ms 0");
            break;
        }

        std::uint32_t li = static_cast<std::uint32_t>(t.links_.size());
        if (!t.link_by_pair_.emplace(pair_key(*ia, *ib), li).second)
            throw usage_error("topology: duplicate link " + ls.a + "--" + ls.b);
        t.links_.push_back(Link{*ia, *ib, ls.latency_ms, ls.kind});
        t.adjacency_[*ia].push_back(li);
        t.adjacency_[*ib].push_back(li);
    }

    // reflector uniqueness per AS
    std::unordered_map<Asn, int> reflectors;
    for (const RouterNode& r : t.routers_)
        if (r.kind == NodeKind::Reflector)
            if (++reflectors[r.asn] > 1)
                throw usage_error("topology: AS " + std::to_string(r.asn) +
                                  " has more than one reflector");

    for (RouterIndex i = 0; i < t.adjacency_.size(); ++i) {
        auto& adj = t.adjacency_[i];
        std::sort(adj.begin(), adj.end(), [&](std::uint32_t x, std::uint32_t y) {
            return t.links_[x].other(i) < t.links_[y].other(i);
        });
    }
    return t;
}

std::optional<RouterIndex> Topology::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const Link* Topology::find_link(RouterIndex a, RouterIndex b) const {
    auto it = link_by_pair_.find(pair_key(a, b));
    if (it == link_by_pair_.end()) return nullptr;
    return &links_[it->second];
}

std::vector<Asn> Topology::as_list() const {
    std::set<Asn> s;
    for (const RouterNode& r : routers_) s.insert(r.asn);
    return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------

std::string RefineReport::summary() const {
    std::ostringstream os;
    os << "routers: " << routers_kept << " kept of " << routers_in
       << " (dropped: " << dropped_no_geo << " no-geo, " << dropped_no_asn
       << " no-asn, " << dropped_asn_conflict << " asn-conflict)\n"
       << "links: " << inter_as_links_kept << " inter-AS kept of " << links_in
       << " (" << links_dropped_endpoint << " dropped with endpoints, "
       << intra_as_links_replaced << " same-AS replaced by mesh)\n"
       << "synthesized: " << intra_as_links_synthesized << " intra-AS mesh links, "
       << control_links_synthesized << " reflector control links\n"
       << "ASes covered: " << ases << ", border retention: "
       << border_retention_fraction << "\n";
    if (ingest.malformed_lines || ingest.duplicate_links)
        os << "ingest warnings: " << ingest.malformed_lines << " malformed lines, "
           << ingest.duplicate_links << " duplicate links\n";
    return os.str();
}

std::pair<Topology, RefineReport> refine(const RawTopology& raw) {
    if (raw.routers.empty())
        throw data_error("refine: raw topology has no routers");

    RefineReport rep;
    rep.ingest = raw.stats;
    rep.routers_in = raw.routers.size();
    rep.links_in = raw.links.size();

    std::unordered_map<std::string, const RawRouter*> kept;
    for (const RawRouter& r : raw.routers) {
        if (r.asn_conflict) { ++rep.dropped_asn_conflict; continue; }
        if (!r.asn) { ++rep.dropped_no_asn; continue; }
        if (!r.geo || !geo_valid(*r.geo)) { ++rep.dropped_no_geo; continue; }
        kept.emplace(r.id, &r);
    }
    if (kept.empty())
        throw data_error("refine: no routers survive filtering");
    rep.routers_kept = kept.size();
    rep.border_retention_fraction =
        static_cast<double>(rep.routers_kept) / static_cast<double>(rep.routers_in);

    std::vector<RouterNode> routers;
    routers.reserve(kept.size() + 64);
    std::unordered_map<Asn, std::vector<const RawRouter*>> by_as;
    for (const RawRouter& r : raw.routers) {
        auto it = kept.find(r.id);
        if (it == kept.end() || it->second != &r) continue;
        routers.push_back(RouterNode{r.id, *r.asn, *r.geo, NodeKind::Border});
        by_as[*r.asn].push_back(&r);
    }
    rep.ases = by_as.size();

    std::vector<LinkSpec> links;
    std::set<std::pair<std::string, std::string>> seen;
    auto canon_pair = [](std::string a, std::string b) {
        if (a > b) std::swap(a, b);
        return std::make_pair(std::move(a), std::move(b));
    };

    for (const RawLink& l : raw.links) {
        auto ia = kept.find(l.a);
        auto ib = kept.find(l.b);
        if (ia == kept.end() || ib == kept.end()) { ++rep.links_dropped_endpoint; continue; }
        if (*ia->second->asn == *ib->second->asn) {
            // measured same-AS adjacency; the synthesized full mesh supersedes it
            ++rep.intra_as_links_replaced;
            continue;
        }
        if (!seen.insert(canon_pair(l.a, l.b)).second) continue;
        double km = geodesic_km(*ia->second->geo, *ib->second->geo);
        links.push_back(LinkSpec{l.a, l.b, link_latency_ms(km), LinkKind::InterAs});
        ++rep.inter_as_links_kept;
    }

    // full mesh among each AS's borders, plus one reflector per AS
    for (auto& [asn, members] : by_as) {
        std::sort(members.begin(), members.end(),
                  [](const RawRouter* x, const RawRouter* y) { return x->id < y->id; });
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                double km = geodesic_km(*members[i]->geo, *members[j]->geo);
                links.push_back(LinkSpec{members[i]->id, members[j]->id,
                                         link_latency_ms(km), LinkKind::IntraAs});
                ++rep.intra_as_links_synthesized;
            }

        GeoPoint centroid{0.0, 0.0};
        for (const RawRouter* m : members) {
            centroid.lat += m->geo->lat;
            centroid.lon += m->geo->lon;
        }
        centroid.lat /= static_cast<double>(members.size());
        centroid.lon /= static_cast<double>(members.size());

        std::string rid = "RR" + std::to_string(asn);
        if (kept.count(rid))
            throw usage_error("refine: router id " + rid + " collides with the reflector namespace");
        routers.push_back(RouterNode{rid, asn, centroid, NodeKind::Reflector});
        for (const RawRouter* m : members) {
            links.push_back(LinkSpec{m->id, rid, 0.0, LinkKind::ReflectorControl});
            ++rep.control_links_synthesized;
        }
    }

    return {Topology::build(std::move(routers), links), rep};
}

RawTopology to_raw(const Topology& topo) {
    RawTopology raw;
    for (const RouterNode& r : topo.routers())
        if (r.kind == NodeKind::Border)
            raw.routers.push_back(RawRouter{r.id, r.asn, r.geo, false});
    for (const Link& l : topo.links())
        if (l.kind == LinkKind::InterAs)
            raw.links.push_back(RawLink{topo.router(l.a).id, topo.router(l.b).id});
    raw.stats.nodes = raw.routers.size();
    raw.stats.links = raw.links.size();
    return raw;
}

} // namespace latbgp
