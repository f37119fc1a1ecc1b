#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "latbgp/error.hpp"
#include "latbgp/experiment.hpp"
#include "latbgp/fixtures.hpp"
#include "latbgp/report.hpp"
#include "latbgp/synth.hpp"

namespace fs = std::filesystem;
using namespace latbgp;

namespace {

std::string find_one(const std::string& dir, const std::string& suffix) {
    std::vector<std::string> hits;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().string().ends_with(suffix))
            hits.push_back(e.path().string());
    if (hits.size() != 1)
        throw usage_error("expected exactly one *" + suffix + " in " + dir + ", found " +
                          std::to_string(hits.size()));
    return hits[0];
}

int cmd_ingest(const std::string& itdk_dir, const std::string& asrel,
               const std::string& out) {
    RawTopology raw = ingest_itdk(find_one(itdk_dir, ".nodes"), find_one(itdk_dir, ".nodes.geo"),
                                  find_one(itdk_dir, ".nodes.as"), find_one(itdk_dir, ".links"));
    auto [topo, report] = refine(raw);
    AsRelationshipDb rel = parse_as_rel(asrel);

    std::size_t unknown = 0;
    for (const Link& l : topo.links())
        if (l.kind == LinkKind::InterAs &&
            !rel.known(topo.router(l.a).asn, topo.router(l.b).asn))
            ++unknown;

    save_canonical(topo, out);
    ordered_json rj = refine_report_json(report);
    rj["inter_as_links_without_relationship"] = unknown;
    write_file(out + ".report.json", rj.dump(2) + "\n");

    std::cout << report.summary();
    if (unknown)
        std::cout << "inter-AS links with no known relationship (treated as peer): "
                  << unknown << "\n";
    std::cout << "canonical topology written to " << out << "\n";
    return 0;
}

struct SimArgs {
    std::string topology, asrel, protocol = "baseline", out;
    double q = 0.0;
    bool neutralize = false;
    std::string origin_id;
    Asn origin_as = 0;
    std::string origin_near; // "lat,lon"
    std::vector<Asn> deploying;
    bool deploying_set = false;
    std::uint64_t max_messages = 10'000'000;
};

OriginSpec origin_from_args(const SimArgs& a) {
    if (!a.origin_id.empty()) {
        if (a.origin_as || !a.origin_near.empty())
            throw usage_error("--origin-id excludes --origin-as/--origin-near");
        return OriginSpec::by_id(a.origin_id);
    }
    if (!a.origin_as || a.origin_near.empty())
        throw usage_error("origin requires --origin-id or both --origin-as and --origin-near");
    double lat, lon;
    if (std::sscanf(a.origin_near.c_str(), "%lf,%lf", &lat, &lon) != 2)
        throw usage_error("--origin-near expects LAT,LON");
    return OriginSpec::nearest(a.origin_as, GeoPoint{lat, lon});
}

SimulationConfig config_from_args(const SimArgs& a) {
    Protocol proto = protocol_from(a.protocol);
    if (proto == Protocol::AsPrep && !(a.q > 0.0))
        throw usage_error("--protocol asprep requires --q > 0");
    if (proto != Protocol::AsPrep && a.q != 0.0)
        throw usage_error("--q only applies to --protocol asprep");
    if (a.deploying_set && proto != Protocol::AsPrep)
        throw usage_error("--deploying-ases only applies to --protocol asprep");

    SimulationConfig cfg;
    cfg.policy = PrependPolicy{proto, a.q};
    cfg.pref_policy = a.neutralize ? LocalPrefPolicy::neutralized()
                                   : LocalPrefPolicy::gao_rexford();
    cfg.origin = origin_from_args(a);
    if (a.deploying_set)
        cfg.deploying_ases = std::set<Asn>(a.deploying.begin(), a.deploying.end());
    cfg.max_messages = a.max_messages;
    cfg.validate();
    return cfg;
}

int cmd_simulate(const SimArgs& a) {
    Topology topo = load_canonical(a.topology);
    AsRelationshipDb rel = parse_as_rel(a.asrel);
    SimulationConfig cfg = config_from_args(a);

    SimulationResult result = run(topo, rel, cfg);
    LatencyReport latency = latency_report(result, topo);

    fs::create_directories(a.out);
    write_file(a.out + "/result.json",
               simulation_result_json(result, topo, latency).dump(2) + "\n");
    write_file(a.out + "/latency.csv", latency_csv(latency));
    write_file(a.out + "/latency_summary.json", latency_summary_json(latency).dump(2) + "\n");
    write_file(a.out + "/cdf.csv", cdf_csv(latency));

    std::cout << "converged: " << (result.converged ? "yes" : "no")
              << ", messages: " << result.counters.total() << " (ibgp "
              << result.counters.ibgp << ", ebgp " << result.counters.ebgp << ")\n";
    if (latency.reachable)
        std::cout << "latency p50/p90/p99: " << format_ms(latency.percentile(50)) << "/"
                  << format_ms(latency.percentile(90)) << "/"
                  << format_ms(latency.percentile(99)) << " ms over " << latency.reachable
                  << " nodes (" << latency.unreachable << " unreachable)\n";
    if (!result.converged) {
        std::cout << "run hit the message bound before converging\n";
        return 1;
    }
    return 0;
}

int cmd_compare(const std::string& spec_path, const std::string& out_dir) {
    ExperimentSpec spec = load_experiment(spec_path);
    Topology topo = load_canonical(spec.topology_path);
    AsRelationshipDb rel = parse_as_rel(spec.asrel_path);
    CompareOutput out = run_experiment(spec, topo, rel, out_dir);
    std::cout << out.comparison_csv;
    for (const CompareRun& r : out.runs)
        if (!r.result.converged) {
            std::cout << "run " << r.spec.effective_label()
                      << " hit the message bound; outputs are partial\n";
            return 1;
        }
    return 0;
}

int cmd_case(int case_id, const SimArgs& a, const std::string& emit_dir) {
    CaseFixture fixture = case_fixture(case_id);
    if (!emit_dir.empty()) {
        fs::create_directories(emit_dir);
        std::string base = emit_dir + "/case" + std::to_string(case_id);
        save_canonical(fixture.topology, base + ".topology.json");
        write_file(base + ".as-rel.txt", fixture.rel_text);
        std::cout << "fixture written to " << base << ".*\n";
    }

    Protocol proto = protocol_from(a.protocol);
    if (proto == Protocol::AsPrep && !(a.q > 0.0))
        throw usage_error("--protocol asprep requires --q > 0");

    SimulationConfig cfg;
    cfg.policy = PrependPolicy{proto, a.q};
    cfg.pref_policy = a.neutralize ? LocalPrefPolicy::neutralized()
                                   : LocalPrefPolicy::gao_rexford();
    cfg.origin = OriginSpec::by_id(fixture.origin_id);
    cfg.validate();

    SimulationResult result = run(fixture.topology, fixture.rel_db, cfg);
    RouterIndex probe = *fixture.topology.index_of(fixture.probe_id);
    ForwardingPath path = forwarding_path(probe, result, fixture.topology);
    auto [entry, first_hop] = case_outcome(fixture, path, fixture.topology);

    std::cout << "case " << case_id << " (" << fixture.name << ")\n";
    std::cout << "path:";
    for (RouterIndex i : path.hops) std::cout << " " << fixture.topology.router(i).id;
    std::cout << "\nas sequence:";
    PathAudit audit = path_audit(path, fixture.topology, fixture.rel_db);
    for (Asn asn : audit.as_sequence) std::cout << " " << asn;
    std::cout << "\nlatency: " << format_ms(path.total_latency_ms)
              << " ms, entry " << entry << ", first hop AS " << first_hop << "\n";

    for (const CaseCell& c : fixture.cells) {
        if (c.protocol != proto || c.neutralize != a.neutralize) continue;
        if (proto == Protocol::AsPrep && c.q_ms != a.q) continue;
        if (!c.expected) {
            std::cout << "expectation: none recorded for this configuration\n";
            return 0;
        }
        bool match = c.expected->first == entry && c.expected->second == first_hop;
        std::cout << "expectation: entry " << c.expected->first << ", first hop AS "
                  << c.expected->second << " -> " << (match ? "match" : "MISMATCH") << "\n";
        return match ? 0 : 1;
    }
    std::cout << "expectation: none recorded for this configuration\n";
    return 0;
}

int cmd_synth(int ases, int routers_per_as, std::uint64_t seed, const std::string& geo_model,
              const std::string& out_dir) {
    SynthParams p;
    p.num_ases = ases;
    p.routers_per_as = routers_per_as;
    p.seed = seed;
    if (geo_model == "uniform")
        p.geo_model = SynthParams::GeoModel::Uniform;
    else if (geo_model == "clustered")
        p.geo_model = SynthParams::GeoModel::Clustered;
    else
        throw usage_error("--geo-model must be clustered or uniform");

    SynthTopology t = synth_topology(p);
    fs::create_directories(out_dir);
    save_canonical(t.topology, out_dir + "/topology.json");
    write_file(out_dir + "/as-rel.txt", t.as_rel_text);
    write_file(out_dir + "/report.json", refine_report_json(t.report).dump(2) + "\n");
    std::cout << "generated " << t.topology.router_count() << " routers, "
              << t.topology.link_count() << " links into " << out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"BGP route propagation simulator with latency-proportional prepending"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "refine an ITDK snapshot into canonical form");
    std::string itdk_dir, asrel, out;
    ingest->add_option("--itdk-dir", itdk_dir, "directory holding *.nodes, *.nodes.geo, *.nodes.as, *.links")
        ->required();
    ingest->add_option("--asrel", asrel, "CAIDA AS relationship file")->required();
    ingest->add_option("--out", out, "canonical topology output path")->required();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run one protocol to convergence");
    SimArgs sa;
    simulate->add_option("--topology", sa.topology, "canonical topology")->required();
    simulate->add_option("--asrel", sa.asrel, "AS relationship file")->required();
    simulate->add_option("--protocol", sa.protocol, "baseline|asprep|minlatency")->required();
    simulate->add_option("--q", sa.q, "quantization factor in ms (asprep)");
    simulate->add_flag("--neutralize", sa.neutralize, "neutralize local preferences");
    simulate->add_option("--origin-id", sa.origin_id, "origin router id");
    simulate->add_option("--origin-as", sa.origin_as, "origin ASN (with --origin-near)");
    simulate->add_option("--origin-near", sa.origin_near, "LAT,LON resolved to the nearest border");
    auto* dep = simulate->add_option("--deploying-ases", sa.deploying,
                                     "ASes deploying asprep (default: all; pass with no values for none)");
    dep->expected(0, -1);
    simulate->add_option("--max-messages", sa.max_messages, "safety bound");
    simulate->add_option("--out", sa.out, "output directory")->required();

    // compare
    auto* compare = app.add_subcommand("compare", "run an experiment spec across protocols");
    std::string spec_path, compare_out;
    compare->add_option("--spec", spec_path, "experiment spec (json)")->required();
    compare->add_option("--out", compare_out, "output directory")->required();

    // case
    auto* casecmd = app.add_subcommand("case", "replay one of the bundled inflation scenarios");
    int case_id = 0;
    SimArgs ca;
    std::string emit_dir;
    casecmd->add_option("--case", case_id, "1, 2 or 3")->required();
    casecmd->add_option("--protocol", ca.protocol, "baseline|asprep|minlatency")->required();
    casecmd->add_option("--q", ca.q, "quantization factor in ms (asprep)");
    casecmd->add_flag("--neutralize", ca.neutralize, "neutralize local preferences");
    casecmd->add_option("--emit", emit_dir, "also write the fixture files to this directory");

    // synth
    auto* synth = app.add_subcommand("synth", "generate a seeded synthetic topology");
    int ases = 10, routers_per_as = 2;
    std::uint64_t seed = 0;
    std::string geo_model = "clustered", synth_out;
    synth->add_option("--ases", ases, "number of ASes")->required();
    synth->add_option("--routers-per-as", routers_per_as, "border routers per AS")->required();
    synth->add_option("--seed", seed, "generation seed")->required();
    synth->add_option("--geo-model", geo_model, "clustered|uniform");
    synth->add_option("--out", synth_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(ingest)) return cmd_ingest(itdk_dir, asrel, out);
        if (app.got_subcommand(simulate)) {
            sa.deploying_set = dep->count() > 0;
            return cmd_simulate(sa);
        }
        if (app.got_subcommand(compare)) return cmd_compare(spec_path, compare_out);
        if (app.got_subcommand(casecmd)) return cmd_case(case_id, ca, emit_dir);
        if (app.got_subcommand(synth))
            return cmd_synth(ases, routers_per_as, seed, geo_model, synth_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
