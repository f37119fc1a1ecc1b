#include <charconv>
#include <fstream>
#include <set>
#include <unordered_map>

#include "latbgp/error.hpp"
#include "latbgp/topology.hpp"

// Adapter for the CAIDA ITDK text conventions:
//   <prefix>.nodes      node N<id>: <ip> <ip> ...
//   <prefix>.nodes.geo  node.geo N<id>: <continent> <country> ... <lat> <lon> ...
//   <prefix>.nodes.as   node.AS N<id> <asn> <method>
//   <prefix>.links      link L<id>: N<a>[:ip] N<b>[:ip] ...
// Link lines may list more than two nodes (multi-access link); those are
// expanded pairwise.

namespace latbgp {

namespace {

std::vector<std::string_view> split_ws(std::string_view v) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < v.size()) {
        while (i < v.size() && (v[i] == ' ' || v[i] == '\t' || v[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < v.size() && v[j] != ' ' && v[j] != '\t' && v[j] != '\r') ++j;
        if (j > i) out.push_back(v.substr(i, j - i));
        i = j;
    }
    return out;
}

bool parse_double(std::string_view s, double& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

bool parse_asn(std::string_view s, Asn& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size() && out > 0;
}

// "N123:" or "N123" -> "N123"
std::string_view strip_colon(std::string_view tok) {
    auto c = tok.find(':');
    return c == std::string_view::npos ? tok : tok.substr(0, c);
}

bool looks_like_node_id(std::string_view tok) {
    if (tok.size() < 2 || tok[0] != 'N') return false;
    for (char ch : tok.substr(1))
        if (ch < '0' || ch > '9') return false;
    return true;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("itdk: cannot open " + path);
    return in;
}

} // namespace

RawTopology ingest_itdk(const std::string& nodes_path, const std::string& geo_path,
                        const std::string& as_path, const std::string& links_path) {
    RawTopology raw;
    std::unordered_map<std::string, std::size_t> by_id;

    auto router_of = [&](std::string_view id) -> RawRouter& {
        auto it = by_id.find(std::string(id));
        if (it == by_id.end()) {
            it = by_id.emplace(std::string(id), raw.routers.size()).first;
            raw.routers.push_back(RawRouter{std::string(id), std::nullopt, std::nullopt, false});
        }
        return raw.routers[it->second];
    };

    std::string line;

    {
        auto in = open_or_throw(nodes_path);
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            auto toks = split_ws(line);
            if (toks.size() < 2 || toks[0] != "node" || !looks_like_node_id(strip_colon(toks[1]))) {
                ++raw.stats.malformed_lines;
                continue;
            }
            router_of(strip_colon(toks[1]));
            ++raw.stats.nodes;
        }
    }
    if (raw.routers.empty())
        throw data_error("itdk: no parseable nodes in " + nodes_path);

    {
        auto in = open_or_throw(geo_path);
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            auto toks = split_ws(line);
            if (toks.size() < 4 || toks[0] != "node.geo" || !looks_like_node_id(strip_colon(toks[1]))) {
                ++raw.stats.malformed_lines;
                continue;
            }
            // fields between the node id and the coordinates are free-form
            // (continent, country, region, city); take the first adjacent
            // token pair that parses as an in-range (lat, lon)
            GeoPoint geo;
            bool found = false;
            for (std::size_t i = 2; i + 1 < toks.size(); ++i) {
                double la, lo;
                if (parse_double(toks[i], la) && parse_double(toks[i + 1], lo) &&
                    geo_valid(GeoPoint{la, lo})) {
                    geo = GeoPoint{la, lo};
                    found = true;
                    break;
                }
            }
            if (!found) { ++raw.stats.malformed_lines; continue; }
            router_of(strip_colon(toks[1])).geo = geo;
        }
    }

    {
        auto in = open_or_throw(as_path);
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            auto toks = split_ws(line);
            Asn asn;
            if (toks.size() < 3 || toks[0] != "node.AS" || !looks_like_node_id(strip_colon(toks[1])) ||
                !parse_asn(toks[2], asn)) {
                ++raw.stats.malformed_lines;
                continue;
            }
            RawRouter& r = router_of(strip_colon(toks[1]));
            if (r.asn && *r.asn != asn) {
                r.asn_conflict = true;
                ++raw.stats.asn_conflicts;
            } else {
                r.asn = asn;
            }
        }
    }

    {
        auto in = open_or_throw(links_path);
        std::set<std::pair<std::string, std::string>> seen;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            auto toks = split_ws(line);
            if (toks.size() < 4 || toks[0] != "link") {
                ++raw.stats.malformed_lines;
                continue;
            }
            std::vector<std::string> ends;
            bool ok = true;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                auto id = strip_colon(toks[i]);
                if (!looks_like_node_id(id)) { ok = false; break; }
                ends.emplace_back(id);
            }
            if (!ok || ends.size() < 2) { ++raw.stats.malformed_lines; continue; }
            if (ends.size() > 2) ++raw.stats.multi_endpoint_links;
            for (std::size_t i = 0; i < ends.size(); ++i)
                for (std::size_t j = i + 1; j < ends.size(); ++j) {
                    if (ends[i] == ends[j]) { ++raw.stats.malformed_lines; continue; }
                    auto key = ends[i] < ends[j] ? std::make_pair(ends[i], ends[j])
                                                 : std::make_pair(ends[j], ends[i]);
                    if (!seen.insert(key).second) { ++raw.stats.duplicate_links; continue; }
                    router_of(ends[i]);
                    router_of(ends[j]);
                    raw.links.push_back(RawLink{ends[i], ends[j]});
                    ++raw.stats.links;
                }
        }
    }

    for (const RawRouter& r : raw.routers) {
        if (!r.geo) ++raw.stats.geo_missing;
        if (!r.asn) ++raw.stats.asn_missing;
    }
    return raw;
}

} // namespace latbgp
