#pragma once

#include <json.hpp>
#include <string>

#include "latbgp/metrics.hpp"
#include "latbgp/simulator.hpp"

namespace latbgp {

using ordered_json = nlohmann::ordered_json;

std::string format_ms(double v); // %.9g

ordered_json config_json(const SimulationConfig& config);
ordered_json refine_report_json(const RefineReport& report);

/// Full run record: config echo, counters, convergence, per-border best
/// route summaries with forwarding latencies.
ordered_json simulation_result_json(const SimulationResult& result, const Topology& topo,
                                    const LatencyReport& latency);

ordered_json latency_summary_json(const LatencyReport& report);

std::string latency_csv(const LatencyReport& report);  // node_id,latency_ms
std::string cdf_csv(const LatencyReport& report);      // latency_ms,cumulative_fraction

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace latbgp
