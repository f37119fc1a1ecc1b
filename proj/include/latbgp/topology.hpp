#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "latbgp/geo.hpp"
#include "latbgp/relationships.hpp"

namespace latbgp {

using RouterIndex = std::uint32_t;
constexpr RouterIndex kNoRouter = 0xffffffffu;

enum class NodeKind { Border, Reflector };
enum class LinkKind { InterAs, IntraAs, ReflectorControl };

const char* to_string(NodeKind k);
const char* to_string(LinkKind k);

struct RouterNode {
    std::string id;
    Asn asn = 0;
    GeoPoint geo;
    NodeKind kind = NodeKind::Border;
};

struct Link {
    RouterIndex a = kNoRouter;
    RouterIndex b = kNoRouter;
    double latency_ms = 0.0;
    LinkKind kind = LinkKind::InterAs;

    RouterIndex other(RouterIndex self) const { return self == a ? b : a; }
};

/// Link endpoints by router id, used before indices exist.
struct LinkSpec {
    std::string a;
    std::string b;
    double latency_ms = 0.0;
    LinkKind kind = LinkKind::InterAs;
};

/// Immutable router-level graph. Routers are stored sorted by id so that
/// index order and id order coincide; adjacency holds link indices per
/// router, sorted by the id of the far endpoint.
class Topology {
public:
    /// Validates and indexes the graph: unique ids, both endpoints present,
    /// no self links, at most one link per unordered pair, link kinds
    /// consistent with endpoint ASNs/kinds, control links at zero latency.
    static Topology build(std::vector<RouterNode> routers, const std::vector<LinkSpec>& links);

    std::size_t router_count() const { return routers_.size(); }
    std::size_t link_count() const { return links_.size(); }

    const RouterNode& router(RouterIndex i) const { return routers_[i]; }
    const std::vector<RouterNode>& routers() const { return routers_; }
    const std::vector<Link>& links() const { return links_; }
    const Link& link(std::uint32_t li) const { return links_[li]; }

    std::optional<RouterIndex> index_of(const std::string& id) const;

    /// Link indices incident to a router, sorted by far-endpoint id.
    const std::vector<std::uint32_t>& links_of(RouterIndex i) const { return adjacency_[i]; }

    /// The link joining a and b, if any.
    const Link* find_link(RouterIndex a, RouterIndex b) const;

    std::vector<Asn> as_list() const;

private:
    std::vector<RouterNode> routers_;
    std::vector<Link> links_;
    std::vector<std::vector<std::uint32_t>> adjacency_;
    std::unordered_map<std::string, RouterIndex> index_;
    std::unordered_map<std::uint64_t, std::uint32_t> link_by_pair_;
};

// ---------------------------------------------------------------------------
// Raw (pre-refinement) form, as ingested from ITDK-style files.

struct RawRouter {
    std::string id;
    std::optional<Asn> asn;
    std::optional<GeoPoint> geo;
    bool asn_conflict = false;
};

struct RawLink {
    std::string a;
    std::string b;
};

struct IngestStats {
    std::size_t nodes = 0;
    std::size_t links = 0;
    std::size_t malformed_lines = 0;
    std::size_t duplicate_links = 0;
    std::size_t multi_endpoint_links = 0; // link lines expanded pairwise
    std::size_t geo_missing = 0;
    std::size_t asn_missing = 0;
    std::size_t asn_conflicts = 0;
};

struct RawTopology {
    std::vector<RawRouter> routers;
    std::vector<RawLink> links;
    IngestStats stats;
};

/// Reads the four ITDK text files (nodes, nodes.geo, nodes.AS, links).
/// Malformed lines are tallied and skipped; missing files and inputs with
/// zero parseable nodes are fatal.
RawTopology ingest_itdk(const std::string& nodes_path, const std::string& geo_path,
                        const std::string& as_path, const std::string& links_path);

struct RefineReport {
    std::size_t routers_in = 0;
    std::size_t routers_kept = 0;
    std::size_t dropped_no_geo = 0;
    std::size_t dropped_no_asn = 0;
    std::size_t dropped_asn_conflict = 0;
    std::size_t links_in = 0;
    std::size_t inter_as_links_kept = 0;
    std::size_t links_dropped_endpoint = 0;
    std::size_t intra_as_links_replaced = 0;
    std::size_t intra_as_links_synthesized = 0;
    std::size_t control_links_synthesized = 0;
    std::size_t ases = 0;
    double border_retention_fraction = 0.0;
    IngestStats ingest;

    std::string summary() const;
};

/// Refines a raw topology into simulation-ready form: drops routers without
/// geolocation or ASN, keeps surviving inter-AS links with geodesic-derived
/// latencies, meshes each AS's border routers, and injects one reflector per
/// AS wired to every member by a zero-latency control link.
std::pair<Topology, RefineReport> refine(const RawTopology& raw);

/// Inverse of refinement for idempotence checks: borders plus their
/// inter-AS adjacencies, reflectors and synthesized links stripped.
RawTopology to_raw(const Topology& topo);

// ---------------------------------------------------------------------------
// Canonical on-disk form (JSON).

void save_canonical(const Topology& topo, const std::string& path);
Topology load_canonical(const std::string& path);

std::string canonical_string(const Topology& topo);
Topology topology_from_canonical_string(const std::string& text, const std::string& what);

} // namespace latbgp
