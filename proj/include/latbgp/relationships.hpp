#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>

namespace latbgp {

using Asn = std::uint32_t;

/// Pairwise business relation, read as "a is <rel> of b".
enum class AsRel { CustomerOf, ProviderOf, Peer };

/// Session/route classification from one AS's point of view: what the
/// neighbor (or the neighbor a route was learned from) is to us.
enum class NeighborKind { Customer, Peer, Provider, Origin };

const char* to_string(NeighborKind k);

class AsRelationshipDb {
public:
    /// Records relation(a,b)=rel and its mirror. Throws on self-relations
    /// and on conflicts with previously recorded pairs.
    void add(Asn a, Asn b, AsRel rel);

    std::optional<AsRel> relation(Asn a, Asn b) const;

    /// How `neighbor` looks from `self`'s side. Pairs absent from the
    /// database are treated as peers (the conservative export default);
    /// callers that care can probe relation() for absence.
    NeighborKind classify(Asn self, Asn neighbor) const;

    bool known(Asn a, Asn b) const { return relation(a, b).has_value(); }
    std::size_t pair_count() const { return rel_.size() / 2; }

private:
    static std::uint64_t key(Asn a, Asn b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }
    std::unordered_map<std::uint64_t, AsRel> rel_;
};

/// Parses the CAIDA serial-1 relationship format: `as1|as2|rel` per line,
/// rel -1 meaning as1 is a provider of as2 and 0 meaning peers; `#` starts
/// a comment line.
AsRelationshipDb parse_as_rel(const std::string& path);

/// Gao-Rexford export rule: a route may be exported iff it was learned from
/// a customer (or originated locally) or the target session is a customer.
bool export_allowed(NeighborKind learned_from, NeighborKind export_to);

enum class PrefMode { GaoRexford, Neutralized };

/// Import-policy preferences. GaoRexford mode requires
/// customer > peer > provider; Neutralized mode holds one shared value.
struct LocalPrefPolicy {
    PrefMode mode = PrefMode::GaoRexford;
    int customer_pref = 200;
    int peer_pref = 100;
    int provider_pref = 50;

    static LocalPrefPolicy gao_rexford(int customer = 200, int peer = 100, int provider = 50);
    static LocalPrefPolicy neutralized(int value = 100);

    int local_pref(NeighborKind learned_from) const;
    void validate() const;

    bool operator==(const LocalPrefPolicy&) const = default;
};

} // namespace latbgp
