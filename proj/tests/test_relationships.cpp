#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "latbgp/error.hpp"
#include "latbgp/relationships.hpp"

using namespace latbgp;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

} // namespace

TEST_CASE("parse_as_rel understands the serial-1 format") {
    auto path = write_temp("asrel_basic.txt", "# comment\n1|2|-1\n1|3|0\n");
    AsRelationshipDb db = parse_as_rel(path);
    CHECK(db.relation(1, 2) == AsRel::ProviderOf);
    CHECK(db.relation(2, 1) == AsRel::CustomerOf);
    CHECK(db.relation(1, 3) == AsRel::Peer);
    CHECK(db.relation(3, 1) == AsRel::Peer);
    CHECK_FALSE(db.relation(2, 3).has_value());
    CHECK(db.pair_count() == 2);
}

TEST_CASE("parse_as_rel rejects conflicts and malformed lines") {
    CHECK_THROWS_AS(parse_as_rel(write_temp("asrel_conflict.txt", "1|2|-1\n2|1|-1\n")), Error);
    CHECK_THROWS_AS(parse_as_rel(write_temp("asrel_badrel.txt", "1|2|7\n")), Error);
    CHECK_THROWS_AS(parse_as_rel(write_temp("asrel_short.txt", "1|2\n")), Error);
    CHECK_THROWS_AS(parse_as_rel("/nonexistent/asrel.txt"), Error);
    // exact duplicates are tolerated
    CHECK(parse_as_rel(write_temp("asrel_dup.txt", "1|2|-1\n1|2|-1\n")).pair_count() == 1);
}

TEST_CASE("classify is the receiver-side view") {
    AsRelationshipDb db;
    db.add(1, 2, AsRel::ProviderOf); // 1 provides transit to 2
    CHECK(db.classify(2, 1) == NeighborKind::Provider);
    CHECK(db.classify(1, 2) == NeighborKind::Customer);
    CHECK(db.classify(1, 99) == NeighborKind::Peer); // unknown pairs default to peer
    CHECK_FALSE(db.known(1, 99));
}

TEST_CASE("export_allowed is the full Gao-Rexford truth table") {
    using NK = NeighborKind;
    const NK learned[] = {NK::Customer, NK::Peer, NK::Provider, NK::Origin};
    const NK target[] = {NK::Customer, NK::Peer, NK::Provider};
    for (NK lf : learned)
        for (NK to : target) {
            bool expect = (lf == NK::Customer || lf == NK::Origin) || to == NK::Customer;
            CHECK(export_allowed(lf, to) == expect);
        }
    // spot checks straight from the rule
    CHECK(export_allowed(NK::Customer, NK::Provider));
    CHECK_FALSE(export_allowed(NK::Peer, NK::Peer));
    CHECK(export_allowed(NK::Provider, NK::Customer));
}

TEST_CASE("local_pref tables") {
    auto gr = LocalPrefPolicy::gao_rexford(200, 100, 50);
    CHECK(gr.local_pref(NeighborKind::Customer) == 200);
    CHECK(gr.local_pref(NeighborKind::Origin) == 200);
    CHECK(gr.local_pref(NeighborKind::Peer) == 100);
    CHECK(gr.local_pref(NeighborKind::Provider) == 50);

    auto neutral = LocalPrefPolicy::neutralized(100);
    for (auto k : {NeighborKind::Customer, NeighborKind::Peer, NeighborKind::Provider,
                   NeighborKind::Origin})
        CHECK(neutral.local_pref(k) == 100);

    // a customer route outranks a peer route under Gao-Rexford; this is the
    // case-3 selection before neutralization
    CHECK(gr.local_pref(NeighborKind::Customer) > gr.local_pref(NeighborKind::Peer));

    CHECK_THROWS_AS(LocalPrefPolicy::gao_rexford(100, 100, 50), Error);
}
