#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latbgp/metrics.hpp"
#include "latbgp/topology.hpp"

namespace latbgp {

/// Expected selection for one (protocol, neutralization) cell of a case
/// study: the border where the forwarding path enters the origin AS, and
/// the first AS after the probe's own. Cells without a documented outcome
/// carry no expectation.
struct CaseCell {
    Protocol protocol;
    double q_ms; // 0 unless asprep
    bool neutralize;
    std::optional<std::pair<std::string, Asn>> expected; // (entry router id, first-hop ASN)
};

/// A reconstructed real-world path-inflation scenario: a small topology with
/// real city coordinates and operator ASNs, a probe, and the prefix origin.
struct CaseFixture {
    int id = 0;
    std::string name;
    Topology topology;
    AsRelationshipDb rel_db;
    std::string rel_text;
    std::string probe_id;
    std::string origin_id;
    Asn probe_as = 0;
    Asn origin_as = 0;
    std::vector<CaseCell> cells;
};

/// Builds case 1, 2 or 3.
CaseFixture case_fixture(int id);

/// (entry router into the origin AS, first AS after the probe's AS) of a
/// probe-to-origin forwarding path.
std::pair<std::string, Asn> case_outcome(const CaseFixture& fixture, const ForwardingPath& path,
                                         const Topology& topo);

} // namespace latbgp
