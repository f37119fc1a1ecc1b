#include "latbgp/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "latbgp/error.hpp"

namespace latbgp {

std::string format_ms(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

ordered_json config_json(const SimulationConfig& config) {
    ordered_json origin;
    if (config.origin.router_id) {
        origin["router_id"] = *config.origin.router_id;
    } else {
        origin["asn"] = *config.origin.asn;
        origin["near"] = ordered_json{{"lat", config.origin.near->lat},
                                      {"lon", config.origin.near->lon}};
    }
    ordered_json j{
        {"protocol", to_string(config.policy.protocol)},
        {"pref_mode", config.pref_policy.mode == PrefMode::Neutralized ? "neutralized" : "gao_rexford"},
        {"local_pref", ordered_json{{"customer", config.pref_policy.customer_pref},
                                    {"peer", config.pref_policy.peer_pref},
                                    {"provider", config.pref_policy.provider_pref}}},
        {"origin", origin},
        {"max_messages", config.max_messages},
    };
    if (config.policy.protocol == Protocol::AsPrep) {
        j["q_ms"] = config.policy.q_ms;
        if (config.deploying_ases)
            j["deploying_ases"] = *config.deploying_ases;
    }
    return j;
}

ordered_json refine_report_json(const RefineReport& r) {
    return ordered_json{
        {"routers_in", r.routers_in},
        {"routers_kept", r.routers_kept},
        {"dropped_no_geo", r.dropped_no_geo},
        {"dropped_no_asn", r.dropped_no_asn},
        {"dropped_asn_conflict", r.dropped_asn_conflict},
        {"links_in", r.links_in},
        {"inter_as_links_kept", r.inter_as_links_kept},
        {"links_dropped_endpoint", r.links_dropped_endpoint},
        {"intra_as_links_replaced", r.intra_as_links_replaced},
        {"intra_as_links_synthesized", r.intra_as_links_synthesized},
        {"control_links_synthesized", r.control_links_synthesized},
        {"ases", r.ases},
        {"border_retention_fraction", r.border_retention_fraction},
        {"ingest", ordered_json{{"nodes", r.ingest.nodes},
                                {"links", r.ingest.links},
                                {"malformed_lines", r.ingest.malformed_lines},
                                {"duplicate_links", r.ingest.duplicate_links},
                                {"multi_endpoint_links", r.ingest.multi_endpoint_links},
                                {"geo_missing", r.ingest.geo_missing},
                                {"asn_missing", r.ingest.asn_missing},
                                {"asn_conflicts", r.ingest.asn_conflicts}}},
    };
}

ordered_json simulation_result_json(const SimulationResult& result, const Topology& topo,
                                    const LatencyReport& latency) {
    ordered_json routes = ordered_json::array();
    std::size_t li = 0;
    for (RouterIndex i = 0; i < topo.router_count(); ++i) {
        const RouterNode& node = topo.router(i);
        if (node.kind != NodeKind::Border) continue;
        const Route* best = result.ribs[i].best();
        if (!best) continue;
        ordered_json entry{
            {"router", node.id},
            {"asn", node.asn},
            {"as_path", best->as_path},
            {"next_hop", topo.router(best->learned_via == LearnedVia::Ebgp ? best->advertiser
                                                                           : best->next_hop).id},
        };
        // latency report rows are in the same border order
        if (li < latency.node_latency.size() && latency.node_latency[li].first == node.id)
            entry["latency_ms"] = latency.node_latency[li++].second;
        routes.push_back(std::move(entry));
    }

    ordered_json unreachable = ordered_json::array();
    for (RouterIndex i : result.unreachable) unreachable.push_back(topo.router(i).id);

    return ordered_json{
        {"config", config_json(result.config)},
        {"origin", topo.router(result.origin).id},
        {"converged", result.converged},
        {"messages", ordered_json{{"ibgp", result.counters.ibgp},
                                  {"ebgp", result.counters.ebgp},
                                  {"total", result.counters.total()}}},
        {"unreachable", unreachable},
        {"routes", routes},
    };
}

ordered_json latency_summary_json(const LatencyReport& report) {
    ordered_json j{
        {"protocol", report.protocol_label},
        {"reachable", report.reachable},
        {"unreachable", report.unreachable},
    };
    if (!report.q_label.empty()) j["q_ms"] = report.q_label;
    if (report.reachable > 0) {
        j["p50_ms"] = report.percentile(50);
        j["p90_ms"] = report.percentile(90);
        j["p99_ms"] = report.percentile(99);
        j["max_ms"] = report.sorted_latencies.back();
    }
    return j;
}

std::string latency_csv(const LatencyReport& report) {
    std::ostringstream os;
    os << "node_id,latency_ms\n";
    for (const auto& [id, ms] : report.node_latency)
        os << id << "," << format_ms(ms) << "\n";
    return os.str();
}

std::string cdf_csv(const LatencyReport& report) {
    std::ostringstream os;
    os << "latency_ms,cumulative_fraction\n";
    for (const auto& [ms, frac] : report.cdf)
        os << format_ms(ms) << "," << format_ms(frac) << "\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("cannot write " + path);
    out << content;
    if (!out) throw internal_error("short write to " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot open " + path);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

} // namespace latbgp
