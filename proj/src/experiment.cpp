#include "latbgp/experiment.hpp"

#include <filesystem>
#include <sstream>

#include "latbgp/error.hpp"
#include "latbgp/report.hpp"

namespace latbgp {

std::string ConfigSpec::effective_label() const {
    if (!label.empty()) return label;
    std::string l = to_string(protocol);
    if (protocol == Protocol::AsPrep) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "-%g", q_ms);
        l += buf;
        if (deploying_ases) l += "-partial";
    }
    if (!neutralize) l += "-gaorexford";
    return l;
}

SimulationConfig ConfigSpec::to_config(const OriginSpec& origin,
                                       std::uint64_t max_messages) const {
    SimulationConfig cfg;
    cfg.policy = PrependPolicy{protocol, protocol == Protocol::AsPrep ? q_ms : 0.0};
    cfg.pref_policy = neutralize ? LocalPrefPolicy::neutralized() : LocalPrefPolicy::gao_rexford();
    cfg.origin = origin;
    cfg.deploying_ases = deploying_ases;
    cfg.max_messages = max_messages;
    cfg.validate();
    return cfg;
}

namespace {

OriginSpec origin_from_json(const ordered_json& j, const std::string& where) {
    if (j.contains("router_id"))
        return OriginSpec::by_id(j.at("router_id").get<std::string>());
    if (j.contains("asn") && j.contains("near")) {
        const auto& near = j.at("near");
        return OriginSpec::nearest(j.at("asn").get<Asn>(),
                                   GeoPoint{near.at("lat").get<double>(),
                                            near.at("lon").get<double>()});
    }
    throw usage_error(where + ": origin needs router_id or asn+near");
}

} // namespace

ExperimentSpec load_experiment(const std::string& path) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw usage_error(path + ": " + e.what());
    }

    ExperimentSpec spec;
    try {
        spec.topology_path = doc.at("topology").get<std::string>();
        spec.asrel_path = doc.at("asrel").get<std::string>();
        spec.origin = origin_from_json(doc.at("origin"), path);
        if (doc.contains("max_messages"))
            spec.max_messages = doc.at("max_messages").get<std::uint64_t>();
        if (doc.contains("seed"))
            spec.seed = doc.at("seed").get<std::uint64_t>();
        for (const auto& jc : doc.at("configs")) {
            ConfigSpec c;
            c.protocol = protocol_from(jc.at("protocol").get<std::string>());
            if (jc.contains("q_ms")) c.q_ms = jc.at("q_ms").get<double>();
            if (jc.contains("neutralize")) c.neutralize = jc.at("neutralize").get<bool>();
            if (jc.contains("label")) c.label = jc.at("label").get<std::string>();
            if (jc.contains("deploying_ases"))
                c.deploying_ases = jc.at("deploying_ases").get<std::set<Asn>>();
            spec.configs.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        throw usage_error(path + ": " + e.what());
    }
    if (spec.configs.empty())
        throw usage_error(path + ": experiment needs at least one config");
    return spec;
}

CompareOutput run_experiment(const ExperimentSpec& spec, const Topology& topo,
                             const AsRelationshipDb& rel_db, const std::string& out_dir) {
    CompareOutput out;

    std::ostringstream table;
    table << "label,protocol,q_ms,p50_ms,p90_ms,p99_ms,ibgp,ebgp,total\n";
    std::ostringstream cdf;
    cdf << "label,latency_ms,cumulative_fraction\n";

    if (!out_dir.empty())
        std::filesystem::create_directories(out_dir);

    for (const ConfigSpec& cs : spec.configs) {
        CompareRun run;
        run.spec = cs;
        run.result = latbgp::run(topo, rel_db, cs.to_config(spec.origin, spec.max_messages));
        run.latency = latency_report(run.result, topo);

        const std::string label = cs.effective_label();
        table << label << "," << to_string(cs.protocol) << ","
              << (cs.protocol == Protocol::AsPrep ? format_ms(cs.q_ms) : "") << ","
              << format_ms(run.latency.percentile(50)) << ","
              << format_ms(run.latency.percentile(90)) << ","
              << format_ms(run.latency.percentile(99)) << ","
              << run.result.counters.ibgp << "," << run.result.counters.ebgp << ","
              << run.result.counters.total() << "\n";
        for (const auto& [ms, frac] : run.latency.cdf)
            cdf << label << "," << format_ms(ms) << "," << format_ms(frac) << "\n";

        if (!out_dir.empty()) {
            const std::string base = out_dir + "/" + label;
            ordered_json rj = simulation_result_json(run.result, topo, run.latency);
            if (spec.seed) rj["seed"] = *spec.seed;
            write_file(base + ".result.json", rj.dump(2) + "\n");
            write_file(base + ".latency.csv", latency_csv(run.latency));
            write_file(base + ".cdf.csv", cdf_csv(run.latency));
        }
        out.runs.push_back(std::move(run));
    }

    out.comparison_csv = table.str();
    out.merged_cdf_csv = cdf.str();
    if (!out_dir.empty()) {
        write_file(out_dir + "/comparison.csv", out.comparison_csv);
        write_file(out_dir + "/cdf.csv", out.merged_cdf_csv);
    }
    return out;
}

} // namespace latbgp
