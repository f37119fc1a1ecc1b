#pragma once

#include <cstdint>
#include <string>

#include "latbgp/topology.hpp"

namespace latbgp {

/// Seeded generator of desk-scale topologies with a planted Gao-Rexford
/// hierarchy: a tier-1 peer clique, lower tiers buying transit from the tier
/// above, plus random same-tier peerings. Routers are placed geographically
/// and the result is run through the standard refinement, so it carries
/// meshes, reflectors and geodesic latencies like any ingested topology.
struct SynthParams {
    int num_ases = 10;
    int routers_per_as = 2; // exact member count per AS
    std::uint64_t seed = 0;
    enum class GeoModel { Clustered, Uniform };
    GeoModel geo_model = GeoModel::Clustered;
    double extra_peer_prob = 0.15;
    double second_link_prob = 0.35;
    int max_retries = 16;
};

struct SynthTopology {
    Topology topology;
    AsRelationshipDb rel_db;
    std::string as_rel_text; // CAIDA serial-1 form of rel_db
    RefineReport report;
};

SynthTopology synth_topology(const SynthParams& params);

} // namespace latbgp
