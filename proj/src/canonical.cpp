#include <fstream>
#include <json.hpp>

#include "latbgp/error.hpp"
#include "latbgp/topology.hpp"

// Canonical topology document:
//   { "routers": [ {"id","asn","lat","lon","kind"} ... ],
//     "links":   [ {"a","b","latency_ms","kind"} ... ] }
// Routers sorted by id, links by (a, b); doubles round-trip exactly.

namespace latbgp {

namespace {

using json = nlohmann::ordered_json;

NodeKind node_kind_from(const std::string& s, const std::string& where) {
    if (s == "border") return NodeKind::Border;
    if (s == "reflector") return NodeKind::Reflector;
    throw usage_error(where + ": unknown router kind '" + s + "'");
}

LinkKind link_kind_from(const std::string& s, const std::string& where) {
    if (s == "inter_as") return LinkKind::InterAs;
    if (s == "intra_as") return LinkKind::IntraAs;
    if (s == "reflector_control") return LinkKind::ReflectorControl;
    throw usage_error(where + ": unknown link kind '" + s + "'");
}

template <typename T>
T field(const json& obj, const char* name, const std::string& where) {
    auto it = obj.find(name);
    if (it == obj.end())
        throw usage_error(where + ": missing field '" + std::string(name) + "'");
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw usage_error(where + ": field '" + std::string(name) + "' has the wrong type");
    }
}

} // namespace

std::string canonical_string(const Topology& topo) {
    json routers = json::array();
    for (const RouterNode& r : topo.routers()) {
        routers.push_back(json{{"id", r.id},
                               {"asn", r.asn},
                               {"lat", r.geo.lat},
                               {"lon", r.geo.lon},
                               {"kind", to_string(r.kind)}});
    }

    // emit each link with its lexicographically smaller endpoint first,
    // in (a, b) order
    std::vector<const Link*> ordered;
    ordered.reserve(topo.link_count());
    for (const Link& l : topo.links()) ordered.push_back(&l);
    auto ends = [&](const Link& l) {
        const std::string& ia = topo.router(l.a).id;
        const std::string& ib = topo.router(l.b).id;
        return ia < ib ? std::make_pair(ia, ib) : std::make_pair(ib, ia);
    };
    std::sort(ordered.begin(), ordered.end(),
              [&](const Link* x, const Link* y) { return ends(*x) < ends(*y); });

    json links = json::array();
    for (const Link* l : ordered) {
        auto [a, b] = ends(*l);
        links.push_back(json{{"a", a}, {"b", b}, {"latency_ms", l->latency_ms},
                             {"kind", to_string(l->kind)}});
    }

    json doc{{"routers", routers}, {"links", links}};
    return doc.dump(2) + "\n";
}

Topology topology_from_canonical_string(const std::string& text, const std::string& what) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw usage_error(what + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("routers") || !doc.contains("links"))
        throw usage_error(what + ": expected an object with 'routers' and 'links'");

    std::vector<RouterNode> routers;
    std::size_t n = 0;
    for (const json& jr : doc["routers"]) {
        std::string where = what + ": routers[" + std::to_string(n++) + "]";
        RouterNode r;
        r.id = field<std::string>(jr, "id", where);
        r.asn = field<Asn>(jr, "asn", where);
        r.geo.lat = field<double>(jr, "lat", where);
        r.geo.lon = field<double>(jr, "lon", where);
        r.kind = node_kind_from(field<std::string>(jr, "kind", where), where);
        if (!geo_valid(r.geo))
            throw usage_error(where + ": coordinates out of range");
        routers.push_back(std::move(r));
    }

    std::vector<LinkSpec> links;
    n = 0;
    for (const json& jl : doc["links"]) {
        std::string where = what + ": links[" + std::to_string(n++) + "]";
        LinkSpec l;
        l.a = field<std::string>(jl, "a", where);
        l.b = field<std::string>(jl, "b", where);
        l.latency_ms = field<double>(jl, "latency_ms", where);
        l.kind = link_kind_from(field<std::string>(jl, "kind", where), where);
        links.push_back(std::move(l));
    }

    try {
        return Topology::build(std::move(routers), links);
    } catch (const Error& e) {
        throw usage_error(what + ": " + e.what());
    }
}

void save_canonical(const Topology& topo, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("cannot write " + path);
    out << canonical_string(topo);
    if (!out) throw internal_error("short write to " + path);
}

Topology load_canonical(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return topology_from_canonical_string(text, path);
}

} // namespace latbgp
