#include "latbgp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "latbgp/error.hpp"

namespace latbgp {

namespace {

constexpr Asn kAsnBase = 64512; // private-use range

struct RelEdge {
    Asn a, b;
    AsRel rel; // a is <rel> of b
};

GeoPoint offset_km(const GeoPoint& center, double km, double bearing_rad) {
    constexpr double kKmPerDegree = 111.19;
    double dlat = km * std::cos(bearing_rad) / kKmPerDegree;
    double lat = std::clamp(center.lat + dlat, -89.0, 89.0);
    double coslat = std::max(0.2, std::cos(lat * std::numbers::pi / 180.0));
    double dlon = km * std::sin(bearing_rad) / (kKmPerDegree * coslat);
    double lon = std::fmod(center.lon + dlon + 540.0, 360.0) - 180.0;
    return GeoPoint{lat, lon};
}

bool connected(const Topology& t) {
    if (t.router_count() == 0) return false;
    std::vector<bool> seen(t.router_count(), false);
    std::queue<RouterIndex> q;
    q.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!q.empty()) {
        RouterIndex u = q.front();
        q.pop();
        for (std::uint32_t li : t.links_of(u)) {
            RouterIndex v = t.link(li).other(u);
            if (!seen[v]) {
                seen[v] = true;
                ++reached;
                q.push(v);
            }
        }
    }
    return reached == t.router_count();
}

SynthTopology generate_once(const SynthParams& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int n = p.num_ases;
    const int k = p.routers_per_as;

    // tier assignment: a small tier-1 clique, ~30% tier-2, the rest tier-3
    const int t1 = std::clamp(n / 8, 1, 4);
    const int t2_end = std::min(n, t1 + std::max(1, (n * 3) / 10));
    auto tier = [&](int i) { return i < t1 ? 1 : i < t2_end ? 2 : 3; };

    std::vector<RelEdge> rels;
    std::set<std::pair<Asn, Asn>> related;
    auto relate = [&](Asn a, Asn b, AsRel rel) {
        auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        if (!related.insert(key).second) return false;
        rels.push_back(RelEdge{a, b, rel});
        return true;
    };

    for (int i = 0; i < t1; ++i)
        for (int j = i + 1; j < t1; ++j)
            relate(kAsnBase + i, kAsnBase + j, AsRel::Peer);

    std::vector<std::vector<int>> by_tier(4);
    for (int i = 0; i < n; ++i) by_tier[tier(i)].push_back(i);

    for (int i = t1; i < n; ++i) {
        const auto& pool = tier(i) == 2 || by_tier[2].empty() ? by_tier[1] : by_tier[2];
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        int providers = 1 + (unit(rng) < 0.4 ? 1 : 0);
        for (int c = 0; c < providers; ++c) {
            int prov = pool[pick(rng)];
            relate(kAsnBase + prov, kAsnBase + i, AsRel::ProviderOf);
        }
    }

    for (int t = 2; t <= 3; ++t)
        for (std::size_t i = 0; i < by_tier[t].size(); ++i)
            for (std::size_t j = i + 1; j < by_tier[t].size(); ++j)
                if (unit(rng) < p.extra_peer_prob)
                    relate(kAsnBase + by_tier[t][i], kAsnBase + by_tier[t][j], AsRel::Peer);

    // router placement
    std::uniform_real_distribution<double> lat_dist(-55.0, 65.0);
    std::uniform_real_distribution<double> lon_dist(-175.0, 175.0);
    std::uniform_real_distribution<double> radius(30.0, 900.0);
    std::uniform_real_distribution<double> bearing(0.0, 2.0 * std::numbers::pi);

    RawTopology raw;
    std::vector<std::vector<std::size_t>> members(n); // indices into raw.routers
    int counter = 0;
    for (int i = 0; i < n; ++i) {
        GeoPoint center{lat_dist(rng), lon_dist(rng)};
        for (int r = 0; r < k; ++r) {
            char id[16];
            std::snprintf(id, sizeof id, "N%06d", counter++);
            GeoPoint geo = p.geo_model == SynthParams::GeoModel::Uniform
                               ? GeoPoint{lat_dist(rng), lon_dist(rng)}
                               : offset_km(center, radius(rng), bearing(rng));
            members[i].push_back(raw.routers.size());
            raw.routers.push_back(RawRouter{id, kAsnBase + i, geo, false});
        }
    }

    // one link between the closest router pair of each related AS pair,
    // sometimes a second one elsewhere
    std::set<std::pair<std::string, std::string>> linked;
    auto add_link = [&](std::size_t ra, std::size_t rb) {
        auto ids = raw.routers[ra].id < raw.routers[rb].id
                       ? std::make_pair(raw.routers[ra].id, raw.routers[rb].id)
                       : std::make_pair(raw.routers[rb].id, raw.routers[ra].id);
        if (!linked.insert(ids).second) return;
        raw.links.push_back(RawLink{ids.first, ids.second});
    };
    for (const RelEdge& e : rels) {
        const auto& ma = members[e.a - kAsnBase];
        const auto& mb = members[e.b - kAsnBase];
        std::size_t best_a = ma[0], best_b = mb[0];
        double best_km = std::numeric_limits<double>::infinity();
        for (std::size_t ra : ma)
            for (std::size_t rb : mb) {
                double km = geodesic_km(*raw.routers[ra].geo, *raw.routers[rb].geo);
                if (km < best_km) {
                    best_km = km;
                    best_a = ra;
                    best_b = rb;
                }
            }
        add_link(best_a, best_b);
        if (k > 1 && unit(rng) < p.second_link_prob) {
            std::uniform_int_distribution<std::size_t> pa(0, ma.size() - 1);
            std::uniform_int_distribution<std::size_t> pb(0, mb.size() - 1);
            add_link(ma[pa(rng)], mb[pb(rng)]);
        }
    }
    raw.stats.nodes = raw.routers.size();
    raw.stats.links = raw.links.size();

    SynthTopology out{Topology::build({}, {}), AsRelationshipDb{}, "", RefineReport{}};
    auto [topo, report] = refine(raw);
    out.topology = std::move(topo);
    out.report = report;

    std::sort(rels.begin(), rels.end(), [](const RelEdge& x, const RelEdge& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    std::ostringstream text;
    text << "# synthetic hierarchy: ases=" << n << " routers_per_as=" << k
         << " seed=" << p.seed << "\n";
    for (const RelEdge& e : rels) {
        out.rel_db.add(e.a, e.b, e.rel);
        text << e.a << "|" << e.b << "|" << (e.rel == AsRel::Peer ? "0" : "-1") << "\n";
    }
    out.as_rel_text = text.str();
    return out;
}

} // namespace

SynthTopology synth_topology(const SynthParams& params) {
    if (params.num_ases < 1 || params.routers_per_as < 1)
        throw usage_error("synth: need at least one AS and one router per AS");
    if (params.num_ases > 100000 || params.routers_per_as > 1000)
        throw usage_error("synth: parameters out of range");

    for (int attempt = 0; attempt < params.max_retries; ++attempt) {
        std::uint64_t seed = params.seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt);
        SynthTopology t = generate_once(params, seed);
        if (connected(t.topology)) return t;
    }
    throw data_error("synth: could not generate a connected topology");
}

} // namespace latbgp
