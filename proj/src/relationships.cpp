#include "latbgp/relationships.hpp"

#include <charconv>
#include <fstream>

#include "latbgp/error.hpp"

namespace latbgp {

const char* to_string(NeighborKind k) {
    switch (k) {
    case NeighborKind::Customer: return "customer";
    case NeighborKind::Peer: return "peer";
    case NeighborKind::Provider: return "provider";
    case NeighborKind::Origin: return "origin";
    }
    return "?";
}

void AsRelationshipDb::add(Asn a, Asn b, AsRel rel) {
    if (a == b)
        throw usage_error("as-rel: self relation for AS " + std::to_string(a));
    AsRel mirror = rel == AsRel::Peer ? AsRel::Peer
                 : rel == AsRel::CustomerOf ? AsRel::ProviderOf
                                            : AsRel::CustomerOf;
    auto it = rel_.find(key(a, b));
    if (it != rel_.end()) {
        if (it->second != rel)
            throw usage_error("as-rel: conflicting relation for pair " +
                              std::to_string(a) + "|" + std::to_string(b));
        return; // exact duplicate
    }
    rel_.emplace(key(a, b), rel);
    rel_.emplace(key(b, a), mirror);
}

std::optional<AsRel> AsRelationshipDb::relation(Asn a, Asn b) const {
    auto it = rel_.find(key(a, b));
    if (it == rel_.end()) return std::nullopt;
    return it->second;
}

NeighborKind AsRelationshipDb::classify(Asn self, Asn neighbor) const {
    auto r = relation(neighbor, self);
    if (!r) return NeighborKind::Peer;
    switch (*r) {
    case AsRel::CustomerOf: return NeighborKind::Customer; // neighbor is our customer
    case AsRel::ProviderOf: return NeighborKind::Provider;
    case AsRel::Peer: return NeighborKind::Peer;
    }
    return NeighborKind::Peer;
}

namespace {
bool parse_u32(std::string_view s, std::uint32_t& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}
} // namespace

AsRelationshipDb parse_as_rel(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw usage_error("as-rel: cannot open " + path);

    AsRelationshipDb db;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::string_view v(line);
        auto bad = [&](const std::string& why) {
            return usage_error("as-rel: " + path + ":" + std::to_string(lineno) + ": " + why);
        };
        auto p1 = v.find('|');
        auto p2 = p1 == std::string_view::npos ? p1 : v.find('|', p1 + 1);
        if (p2 == std::string_view::npos) throw bad("expected as1|as2|rel");
        // serial-2 files append a |source field; ignore anything past rel
        auto p3 = v.find('|', p2 + 1);
        std::string_view f1 = v.substr(0, p1);
        std::string_view f2 = v.substr(p1 + 1, p2 - p1 - 1);
        std::string_view f3 = p3 == std::string_view::npos ? v.substr(p2 + 1)
                                                           : v.substr(p2 + 1, p3 - p2 - 1);
        Asn a, b;
        if (!parse_u32(f1, a) || !parse_u32(f2, b)) throw bad("bad AS number");
        if (f3 == "-1")
            db.add(a, b, AsRel::ProviderOf);
        else if (f3 == "0")
            db.add(a, b, AsRel::Peer);
        else
            throw bad("relation must be -1 or 0, got '" + std::string(f3) + "'");
    }
    return db;
}

bool export_allowed(NeighborKind learned_from, NeighborKind export_to) {
    if (learned_from == NeighborKind::Customer || learned_from == NeighborKind::Origin)
        return true;
    return export_to == NeighborKind::Customer;
}

LocalPrefPolicy LocalPrefPolicy::gao_rexford(int customer, int peer, int provider) {
    LocalPrefPolicy p{PrefMode::GaoRexford, customer, peer, provider};
    p.validate();
    return p;
}

LocalPrefPolicy LocalPrefPolicy::neutralized(int value) {
    LocalPrefPolicy p{PrefMode::Neutralized, value, value, value};
    return p;
}

int LocalPrefPolicy::local_pref(NeighborKind learned_from) const {
    switch (learned_from) {
    case NeighborKind::Customer:
    case NeighborKind::Origin: return customer_pref;
    case NeighborKind::Peer: return peer_pref;
    case NeighborKind::Provider: return provider_pref;
    }
    return peer_pref;
}

void LocalPrefPolicy::validate() const {
    if (mode == PrefMode::GaoRexford) {
        if (!(customer_pref > peer_pref && peer_pref > provider_pref))
            throw usage_error("local-pref: GaoRexford mode requires customer > peer > provider");
    } else {
        if (customer_pref != peer_pref || peer_pref != provider_pref)
            throw usage_error("local-pref: Neutralized mode requires one shared value");
    }
}

} // namespace latbgp
