#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latbgp/metrics.hpp"
#include "latbgp/simulator.hpp"

namespace latbgp {

/// One protocol variant inside an experiment.
struct ConfigSpec {
    std::string label; // derived from protocol/q when empty
    Protocol protocol = Protocol::Baseline;
    double q_ms = 0.0;
    bool neutralize = true;
    std::optional<std::set<Asn>> deploying_ases;

    std::string effective_label() const;
    SimulationConfig to_config(const OriginSpec& origin, std::uint64_t max_messages) const;
};

struct ExperimentSpec {
    std::string topology_path;
    std::string asrel_path;
    OriginSpec origin;
    std::vector<ConfigSpec> configs;
    std::uint64_t max_messages = 10'000'000;
    std::optional<std::uint64_t> seed; // echoed into outputs for provenance
};

ExperimentSpec load_experiment(const std::string& path);

struct CompareRun {
    ConfigSpec spec;
    SimulationResult result;
    LatencyReport latency;
};

struct CompareOutput {
    std::vector<CompareRun> runs;
    std::string comparison_csv; // label,protocol,q_ms,p50,p90,p99,ibgp,ebgp,total
    std::string merged_cdf_csv; // label,latency_ms,cumulative_fraction
};

/// Runs every config of the experiment against the same topology and
/// origin. When out_dir is non-empty, writes per-config result/latency/cdf
/// files plus the combined tables there, in spec order.
CompareOutput run_experiment(const ExperimentSpec& spec, const Topology& topo,
                             const AsRelationshipDb& rel_db, const std::string& out_dir);

} // namespace latbgp
