#include "latbgp/fixtures.hpp"

#include <sstream>

#include "latbgp/error.hpp"

namespace latbgp {

namespace {

// city coordinates used by the scenarios
constexpr GeoPoint kFortaleza{-3.7319, -38.5267};
constexpr GeoPoint kSaoPaulo{-23.5505, -46.6333};
constexpr GeoPoint kJohannesburg{-26.2041, 28.0473};
constexpr GeoPoint kPerth{-31.9523, 115.8613};
constexpr GeoPoint kSydney{-33.8688, 151.2093};
constexpr GeoPoint kSingapore{1.3521, 103.8198};
constexpr GeoPoint kMumbai{19.0760, 72.8777};
constexpr GeoPoint kWashingtonDc{38.9072, -77.0369};

constexpr Asn kAzure = 8075;
constexpr Asn kAngolaCables = 37468;
constexpr Asn kGoogle = 15169;
constexpr Asn kAarnet = 7575;
constexpr Asn kNtt = 2914;
constexpr Asn kTata = 6453;
constexpr Asn kImperva = 19551;
constexpr Asn kZayo = 6461;
constexpr Asn kSingtel = 7473;
constexpr Asn kLevel3 = 3356;

struct Builder {
    RawTopology raw;
    std::vector<std::tuple<Asn, Asn, AsRel>> rels;

    void router(const std::string& id, Asn asn, GeoPoint geo) {
        raw.routers.push_back(RawRouter{id, asn, geo, false});
    }
    void link(const std::string& a, const std::string& b) {
        raw.links.push_back(RawLink{a, b});
    }
    void peer(Asn a, Asn b) { rels.emplace_back(a, b, AsRel::Peer); }
    void provider(Asn prov, Asn cust) { rels.emplace_back(prov, cust, AsRel::ProviderOf); }

    void finish(CaseFixture& f) {
        raw.stats.nodes = raw.routers.size();
        raw.stats.links = raw.links.size();
        auto [topo, report] = refine(raw);
        f.topology = std::move(topo);
        std::ostringstream text;
        text << "# case " << f.id << ": " << f.name << "\n";
        for (auto& [a, b, rel] : rels) {
            f.rel_db.add(a, b, rel);
            text << a << "|" << b << "|" << (rel == AsRel::Peer ? "0" : "-1") << "\n";
        }
        f.rel_text = text.str();
    }
};

std::optional<std::pair<std::string, Asn>> cell(const std::string& entry, Asn first_hop) {
    return std::make_pair(entry, first_hop);
}

CaseFixture build_case1() {
    // A probe behind Angola Cables in Fortaleza reaches a prefix homed in
    // Azure's Johannesburg region. Azure peers with Angola Cables in both
    // Sao Paulo and Johannesburg; Angola Cables owns the direct
    // South-Atlantic span. Observed RTTs for the scenario: ~254 ms when the
    // probe's traffic enters Azure early at Sao Paulo, ~115 ms when it stays
    // on Angola Cables all the way to Johannesburg.
    CaseFixture f;
    f.id = 1;
    f.name = "early exit into a long private WAN segment";
    Builder b;
    b.router("ac-for", kAngolaCables, kFortaleza);
    b.router("ac-gru", kAngolaCables, kSaoPaulo);
    b.router("ac-jnb", kAngolaCables, kJohannesburg);
    b.router("az-gru", kAzure, kSaoPaulo);
    b.router("az-jnb", kAzure, kJohannesburg);
    b.link("ac-gru", "az-gru");
    b.link("ac-jnb", "az-jnb");
    b.peer(kAzure, kAngolaCables);
    b.finish(f);
    f.probe_id = "ac-for";
    f.origin_id = "az-jnb";
    f.probe_as = kAngolaCables;
    f.origin_as = kAzure;
    // hot-potato picks the nearby Sao Paulo peering; latency-proportional
    // prepending makes the Johannesburg route shorter in AS-path terms with
    // no change to preferences
    f.cells = {
        {Protocol::Baseline, 0.0, false, cell("az-gru", kAzure)},
        {Protocol::Baseline, 0.0, true, std::nullopt},
        {Protocol::AsPrep, 5.0, false, cell("az-jnb", kAzure)},
        {Protocol::AsPrep, 5.0, true, std::nullopt},
    };
    return f;
}

CaseFixture build_case2() {
    // A Perth probe behind AARNet reaches a prefix homed in Mumbai. AARNet
    // peers with the origin's network in Sydney and buys transit from NTT,
    // which peers with TATA, the origin's transit provider. Observed RTTs:
    // ~196 ms via the Sydney peering, ~149 ms via Singapore/NTT/TATA.
    CaseFixture f;
    f.id = 2;
    f.name = "peer route preferred over a shorter provider route";
    Builder b;
    b.router("aar-per", kAarnet, kPerth);
    b.router("aar-sin", kAarnet, kSingapore);
    b.router("aar-syd", kAarnet, kSydney);
    b.router("goo-bom", kGoogle, kMumbai);
    b.router("goo-syd", kGoogle, kSydney);
    b.router("ntt-sin", kNtt, kSingapore);
    b.router("tat-bom", kTata, kMumbai);
    b.router("tat-sin", kTata, kSingapore);
    b.link("aar-syd", "goo-syd");
    b.link("aar-sin", "ntt-sin");
    b.link("ntt-sin", "tat-sin");
    b.link("tat-bom", "goo-bom");
    b.peer(kGoogle, kAarnet);
    b.provider(kNtt, kAarnet);
    b.peer(kNtt, kTata);
    b.provider(kTata, kGoogle);
    b.finish(f);
    f.probe_id = "aar-per";
    f.origin_id = "goo-bom";
    f.probe_as = kAarnet;
    f.origin_as = kGoogle;
    f.cells = {
        {Protocol::Baseline, 0.0, false, cell("goo-syd", kGoogle)},
        {Protocol::Baseline, 0.0, true, std::nullopt},
        {Protocol::AsPrep, 5.0, false, std::nullopt},
        {Protocol::AsPrep, 5.0, true, cell("goo-bom", kNtt)},
    };
    return f;
}

CaseFixture build_case3() {
    // A Washington DC probe behind Zayo reaches an anycast-style prefix
    // served from Singapore (transit: SingTel, a Zayo customer) and from
    // Washington DC (transit: Level3, a Zayo peer). Observed RTTs: ~250 ms
    // to the Singapore site, ~2 ms to the local one.
    CaseFixture f;
    f.id = 3;
    f.name = "prefer-customer pulls anycast traffic across the world";
    Builder b;
    b.router("zay-dc", kZayo, kWashingtonDc);
    b.router("zay-sin", kZayo, kSingapore);
    b.router("stl-sin", kSingtel, kSingapore);
    b.router("lv3-dc", kLevel3, kWashingtonDc);
    b.router("imp-dc", kImperva, kWashingtonDc);
    b.router("imp-sin", kImperva, kSingapore);
    b.link("zay-sin", "stl-sin");
    b.link("zay-dc", "lv3-dc");
    b.link("stl-sin", "imp-sin");
    b.link("lv3-dc", "imp-dc");
    b.provider(kZayo, kSingtel);
    b.peer(kZayo, kLevel3);
    b.provider(kSingtel, kImperva);
    b.provider(kLevel3, kImperva);
    b.finish(f);
    f.probe_id = "zay-dc";
    f.origin_id = "imp-dc";
    f.probe_as = kZayo;
    f.origin_as = kImperva;
    f.cells = {
        {Protocol::Baseline, 0.0, false, cell("imp-sin", kSingtel)},
        {Protocol::Baseline, 0.0, true, std::nullopt},
        {Protocol::AsPrep, 5.0, false, std::nullopt},
        {Protocol::AsPrep, 5.0, true, cell("imp-dc", kLevel3)},
    };
    return f;
}

} // namespace

CaseFixture case_fixture(int id) {
    switch (id) {
    case 1: return build_case1();
    case 2: return build_case2();
    case 3: return build_case3();
    default: throw usage_error("unknown case id " + std::to_string(id));
    }
}

std::pair<std::string, Asn> case_outcome(const CaseFixture& fixture, const ForwardingPath& path,
                                         const Topology& topo) {
    std::string entry;
    Asn first_hop = 0;
    for (RouterIndex i : path.hops) {
        const RouterNode& r = topo.router(i);
        if (first_hop == 0 && r.asn != fixture.probe_as) first_hop = r.asn;
        if (entry.empty() && r.asn == fixture.origin_as) entry = r.id;
    }
    if (entry.empty())
        throw internal_error("case outcome: path never enters the origin AS");
    return {entry, first_hop};
}

} // namespace latbgp
