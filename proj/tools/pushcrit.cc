/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <pushcrit/canonical.hh>
#include <pushcrit/criticality.hh>
#include <pushcrit/enumeration.hh>
#include <pushcrit/errors.hh>
#include <pushcrit/fixtures.hh>
#include <pushcrit/graph_io.hh>
#include <pushcrit/homomorphism.hh>
#include <pushcrit/structure.hh>
#include <pushcrit/verifier.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace pushcrit;
using nlohmann::ordered_json;

namespace
{
    struct RunConfig
    {
        std::string graph;
        std::string target = "c3";
        int k = 3;
        int k_max = 6;
        int max_n = 6;
        bool json = false;
        int jobs = 1;
        std::uint64_t budget_nodes = 0;
        double max_seconds = 0;
        std::string shards;
        bool resume = false;
        std::string suite = "all";
        std::string evidence_dir = "evidence";
        bool timings = false;
        int p = 2, q = 1;
        std::string variant = "oriented";
        bool explicit_labelling = false;
    };

    constexpr int exit_ok = 0, exit_fails = 1, exit_usage = 2, exit_budget = 3;

    auto load_graph(const std::string & source) -> OrientedGraph
    {
        if (source.starts_with("@"))
            return builtin_graph(source.substr(1));
        return load_graph_file(source);
    }

    auto load_target(const std::string & source) -> OrientedGraph
    {
        if (source == "c2")
            return OrientedGraph{ 2, { Arc{ 0, 1 } }, "c2" };
        for (int k = 3 ; k <= 6 ; ++k)
            if (source == "c" + std::to_string(k))
                return directed_cycle(k, source);
        if (source == "atc3")
            return fixture_at_c3();
        return load_graph(source);
    }

    auto limits(const RunConfig & c) -> SearchLimits
    {
        return SearchLimits{ c.budget_nodes, nullptr };
    }

    auto emit(const RunConfig & c, const ordered_json & j, const std::string & text) -> void
    {
        if (c.json)
            std::cout << j.dump(2) << '\n';
        else
            std::cout << text;
    }

    auto join(const std::vector<int> & xs) -> std::string
    {
        std::string s;
        for (auto x : xs)
            s += (s.empty() ? "" : " ") + std::to_string(x);
        return s;
    }

    auto certificate_text(const ColoringCertificate & cert) -> std::string
    {
        return "pushed: " + join(cert.push_set.members()) + "\nmap: " + join(cert.mapping) + "\n";
    }

    auto girth_json(const OrientedGraph & g) -> ordered_json
    {
        auto gi = girth(g);
        return gi ? ordered_json(*gi) : ordered_json(nullptr);
    }

    auto run_info(const RunConfig & c) -> int
    {
        auto g = load_graph(c.graph);
        ordered_json j;
        j["name"] = g.name() ? ordered_json(*g.name()) : ordered_json(nullptr);
        j["vertices"] = g.vertex_count();
        j["arcs"] = g.arc_count();
        j["potential"] = potential(g);
        j["girth"] = girth_json(g);
        j["mad"] = g.vertex_count() > 0 ? ordered_json(mad_exact(g).to_string()) : ordered_json(nullptr);
        j["components"] = connected_components(g).size();
        j["density_bound"] = satisfies_density_bound(g.vertex_count(), g.arc_count());
        j["canonical_code"] = to_hex(canonical_form(g));

        std::string text;
        for (auto & [key, value] : j.items())
            text += key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
        emit(c, j, text);
        return exit_ok;
    }

    auto run_color(const RunConfig & c) -> int
    {
        auto g = load_graph(c.graph);
        auto h = load_target(c.target);
        SearchStats stats;
        auto cert = find_pushable_homomorphism(g, h, limits(c), &stats);
        if (! cert) {
            emit(c, { { "result", "none" }, { "nodes_explored", stats.nodes } }, "none\nnodes explored: " + std::to_string(stats.nodes) + "\n");
            return exit_fails;
        }
        if (! verify_certificate(g, h, *cert))
            throw Error("certificate failed verification");
        ordered_json j{ { "result", "found" }, { "target", c.target } };
        auto cj = to_json(*cert);
        j["pushed"] = cj["pushed"];
        j["map"] = cj["map"];
        j["nodes_explored"] = stats.nodes;
        emit(c, j, "found\ntarget: " + c.target + "\n" + certificate_text(*cert) + "nodes explored: " + std::to_string(stats.nodes) + "\n");
        return exit_ok;
    }

    auto run_chromatic(const RunConfig & c) -> int
    {
        auto g = load_graph(c.graph);
        int k_max = c.k_max;
        auto pushable = pushable_chromatic_number(g, k_max, limits(c));
        auto oriented = oriented_chromatic_number(g, k_max, limits(c));
        auto value = [] (std::optional<int> x) { return x ? ordered_json(*x) : ordered_json(nullptr); };
        auto show = [&] (std::optional<int> x) { return x ? std::to_string(*x) : "> " + std::to_string(k_max); };
        ordered_json j{ { "k_max", k_max }, { "pushable", value(pushable) }, { "oriented", value(oriented) } };
        emit(c, j, "pushable: " + show(pushable) + "\noriented: " + show(oriented) + "\n");
        return pushable && oriented ? exit_ok : exit_fails;
    }

    auto run_critical(const RunConfig & c) -> int
    {
        auto g = load_graph(c.graph);
        auto report = is_pushably_k_critical(g, c.k, limits(c));
        auto j = criticality_json(g, report);
        j["k"] = c.k;
        if (report.failing_arc)
            j["failing_arc"] = { report.failing_arc->tail, report.failing_arc->head };
        std::string text = std::string("verdict: ") + verdict_name(report.verdict) + "\n";
        if (report.verdict == Verdict::critical)
            text += "arc witnesses: " + std::to_string(report.arc_witnesses.size()) + " verified\n";
        if (report.failing_arc)
            text += "failing arc: " + std::to_string(report.failing_arc->tail) + " " + std::to_string(report.failing_arc->head) + "\n";
        if (report.global_certificate)
            text += certificate_text(report.global_certificate->certificate);
        emit(c, j, text);
        return report.verdict == Verdict::critical ? exit_ok : exit_fails;
    }

    auto run_extract(const RunConfig & c) -> int
    {
        auto g = load_graph(c.graph);
        auto sub = extract_critical_subgraph(g, c.k, limits(c));
        if (! sub) {
            emit(c, { { "result", "none" } }, "none\n");
            return exit_fails;
        }
        emit(c, { { "result", "found" }, { "k", c.k }, { "graph", graph_json(*sub) } }, serialize_graph(*sub));
        return exit_ok;
    }

    auto enumeration_options(const RunConfig & c) -> EnumerationOptions
    {
        EnumerationOptions options;
        options.jobs = c.jobs;
        options.resume = c.resume;
        if (! c.shards.empty())
            options.shard_dir = c.shards;
        else if (auto env = std::getenv("PUSHCRIT_SHARDS") ; env && *env)
            options.shard_dir = env;
        if (c.resume && ! options.shard_dir)
            throw ConfigurationError("--resume needs a shard directory");
        if (c.max_seconds > 0)
            options.max_seconds = c.max_seconds;
        return options;
    }

    auto levels_json(const EnumerationResult & r) -> ordered_json
    {
        auto levels = ordered_json::array();
        for (auto & l : r.levels)
            levels.push_back({ { "n", l.n }, { "underlying", l.underlying }, { "pruned_deletion", l.pruned_deletion },
                    { "pruned_chain", l.pruned_chain }, { "orientations", l.orientations }, { "critical", l.critical } });
        return levels;
    }

    auto record_text(const EnumerationRecord & r) -> std::string
    {
        return r.canonical_code + " n=" + std::to_string(r.n) + " m=" + std::to_string(r.m) + " potential=" + std::to_string(r.potential)
            + (r.satisfies_bound ? " bound" : " below-bound") + (r.exception ? " " + *r.exception : "") + "\n";
    }

    auto run_enumerate(const RunConfig & c) -> int
    {
        auto result = find_critical(c.max_n, enumeration_options(c));
        auto records = ordered_json::array();
        std::string text;
        for (auto & l : result.levels)
            text += "n=" + std::to_string(l.n) + " underlying=" + std::to_string(l.underlying) + " orientations="
                + std::to_string(l.orientations) + " critical=" + std::to_string(l.critical) + "\n";
        for (auto & r : result.records) {
            records.push_back(to_json(r));
            text += record_text(r);
        }
        emit(c, { { "max_n", c.max_n }, { "levels", levels_json(result) }, { "records", records } }, text);
        return exit_ok;
    }

    auto run_verify_bound(const RunConfig & c) -> int
    {
        auto result = find_critical(c.max_n, enumeration_options(c));
        auto report = verify_density_bound(result.records);
        auto violators = ordered_json::array();
        std::string text = std::string("bound: ") + (report.pass ? "pass" : "fail") + "\ncritical classes: "
            + std::to_string(result.records.size()) + "\nexceptions: " + std::to_string(report.via_exception) + "\n";
        for (auto & r : report.violators) {
            violators.push_back(to_json(r));
            text += "violator: " + record_text(r);
        }
        auto exceptions = ordered_json::array();
        for (auto & r : result.records)
            if (r.exception)
                exceptions.push_back(*r.exception);
        emit(c, { { "max_n", c.max_n }, { "pass", report.pass }, { "critical_classes", result.records.size() },
                { "exceptions", exceptions }, { "violators", violators }, { "levels", levels_json(result) } }, text);
        return report.pass ? exit_ok : exit_fails;
    }

    auto run_verify_paper(const RunConfig & c) -> int
    {
        std::vector<std::string> suites;
        if (c.suite == "all")
            suites = suite_names();
        else
            suites = { c.suite };
        for (auto & s : suites)
            if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
                throw ConfigurationError("unknown suite '" + s + "'");

        std::vector<std::vector<Claim>> claims(suites.size());
        std::vector<long> wall_ms(suites.size());
        parallel_for(suites.size(), unsigned(c.jobs), [&] (std::size_t i) {
            auto started = std::chrono::steady_clock::now();
            claims[i] = run_suite(suites[i], unsigned(c.jobs));
            wall_ms[i] = long(std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count());
        });

        auto report = ordered_json::array();
        std::string text;
        bool pass = true;
        for (std::size_t i = 0 ; i < suites.size() ; ++i)
            for (auto & claim : claims[i]) {
                auto dir = std::filesystem::path(c.evidence_dir) / claim.claim;
                std::filesystem::create_directories(dir);
                auto path = (dir / "evidence.json").string();
                std::ofstream out(path);
                out << ordered_json{ { "claim", claim.claim }, { "suite", suites[i] }, { "status", claim.status }, { "evidence", claim.evidence } }.dump(2) << '\n';
                if (! out)
                    throw Error("could not write " + path);

                ordered_json entry{ { "claim", claim.claim }, { "status", claim.status }, { "evidence_path", path } };
                if (c.timings)
                    entry["wall_time_ms"] = wall_ms[i];
                report.push_back(entry);
                text += claim.claim + " " + claim.status + " " + path + (c.timings ? " " + std::to_string(wall_ms[i]) + "ms" : "") + "\n";
                pass = pass && claim.status != "fail";
            }
        emit(c, report, text);
        return pass ? exit_ok : exit_fails;
    }

    auto run_mad(const RunConfig & c) -> int
    {
        auto value = mad_exact(load_graph(c.graph)).to_string();
        emit(c, { { "mad", value } }, value + "\n");
        return exit_ok;
    }

    auto run_girth(const RunConfig & c) -> int
    {
        auto g = girth_json(load_graph(c.graph));
        emit(c, { { "girth", g } }, (g.is_null() ? std::string("none") : g.dump()) + "\n");
        return exit_ok;
    }

    auto run_discharge(const RunConfig & c) -> int
    {
        auto g = load_graph(c.graph);
        auto r = discharging_audit(g);
        auto j = to_json(r);
        bool balanced = two_vertices_balanced(g, r);
        j["two_vertices_balanced"] = balanced;
        bool pass = j["identity_holds"].get<bool>() && j["conserved"].get<bool>() && balanced;
        std::string text = "initial total: " + std::to_string(r.total_initial) + "\nfinal total: " + std::to_string(r.total_final)
            + "\npotential: " + std::to_string(r.potential) + "\nidentity: " + (pass ? "holds" : "fails") + "\n";
        for (auto & b : r.lower_bound_checks)
            text += "vertex " + std::to_string(b.vertex) + " class " + b.vertex_class + " charge " + std::to_string(b.charge)
                + " bound " + std::to_string(b.bound) + (b.holds ? "" : " below") + "\n";
        emit(c, j, text);
        return pass ? exit_ok : exit_fails;
    }

    auto run_lpq(const RunConfig & c) -> int
    {
        auto variant = c.variant == "dipath" ? LpqVariant::two_dipath : LpqVariant::oriented;
        auto g = load_graph(c.graph.empty() ? "@atc3" : c.graph);
        std::optional<LpqLabeling> lab;
        if (c.explicit_labelling) {
            if (g.vertex_count() != 6 || g.sorted_arcs() != fixture_at_c3().sorted_arcs())
                throw PreconditionError("the explicit labelling is defined for AT(C3) only");
            lab = at_c3_labeling(c.p, c.q);
            lab->variant = variant;
        }
        else
            lab = lpq_span_search(g, c.p, c.q, variant);

        if (! lab) {
            emit(c, { { "result", "none" }, { "p", c.p }, { "q", c.q }, { "variant", lpq_variant_name(variant) } }, "none\n");
            return exit_fails;
        }
        auto check = check_lpq_labeling(g, *lab);
        ordered_json j{ { "result", "found" }, { "p", c.p }, { "q", c.q }, { "variant", lpq_variant_name(variant) },
            { "span", lab->span }, { "labels", lab->labels }, { "valid", check.valid } };
        std::string text = "span: " + std::to_string(lab->span) + "\nlabels: " + join(lab->labels) + "\nvalid: " + (check.valid ? "yes" : "no") + "\n";
        if (! check.valid) {
            j["reason"] = check.reason;
            text += "reason: " + check.reason + "\n";
        }
        emit(c, j, text);
        return check.valid ? exit_ok : exit_fails;
    }

    auto run_canon(const RunConfig & c) -> int
    {
        auto code = to_hex(canonical_form(load_graph(c.graph)));
        emit(c, { { "canonical_code", code } }, code + "\n");
        return exit_ok;
    }
}

auto main(int argc, char * argv[]) -> int
{
    RunConfig c;
    CLI::App app{ "Pushable homomorphisms and pushably critical oriented graphs" };
    app.require_subcommand(1);
    app.add_flag("--json", c.json, "Emit JSON");
    app.add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1, 1024));
    app.add_option("--budget-nodes", c.budget_nodes, "Search node budget, 0 for none");

    auto graph_arg = [&] (CLI::App * sub, bool required = true) {
        auto opt = sub->add_option("graph", c.graph, "Graph file, or @name for a built-in fixture");
        if (required)
            opt->required();
    };

    std::vector<std::pair<CLI::App *, int (*)(const RunConfig &)>> commands;
    auto command = [&] (const std::string & name, const std::string & help, int (*run)(const RunConfig &)) {
        auto sub = app.add_subcommand(name, help);
        sub->add_flag("--json", c.json, "Emit JSON");
        sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1, 1024));
        sub->add_option("--budget-nodes", c.budget_nodes, "Search node budget, 0 for none");
        commands.emplace_back(sub, run);
        return sub;
    };

    graph_arg(command("info", "Size, potential, girth, mad and canonical code", run_info));
    {
        auto sub = command("color", "Pushable homomorphism to a target", run_color);
        graph_arg(sub);
        sub->add_option("--target", c.target, "c2..c6, atc3, a graph file or @name");
    }
    {
        auto sub = command("chromatic", "Pushable and oriented chromatic numbers", run_chromatic);
        graph_arg(sub);
        sub->add_option("--k", c.k_max, "Largest number of colours tried")->check(CLI::Range(1, 6));
    }
    for (auto [name, help, run] : { std::tuple{ "critical", "Decide pushable k-criticality", run_critical },
                { "extract-critical", "Arc-minimal uncolourable subgraph", run_extract } }) {
        auto sub = command(name, help, run);
        graph_arg(sub);
        sub->add_option("--k", c.k, "Number of colours")->check(CLI::Range(1, 6));
    }
    for (auto [name, help, run] : { std::tuple{ "enumerate", "Pushably 3-critical graphs up to --max-n vertices", run_enumerate },
                { "verify-bound", "Check 13m >= 15n + 2 over the enumeration", run_verify_bound } }) {
        auto sub = command(name, help, run);
        sub->add_option("--max-n", c.max_n, "Largest vertex count")->check(CLI::Range(3, 12));
        sub->add_option("--shards", c.shards, "Checkpoint directory");
        sub->add_flag("--resume", c.resume, "Continue from the checkpoint directory");
        sub->add_option("--max-seconds", c.max_seconds, "Wall-clock budget")->check(CLI::NonNegativeNumber);
    }
    {
        auto sub = command("verify-paper", "Run verification suites and write evidence", run_verify_paper);
        std::vector<std::string> choices = suite_names();
        choices.push_back("all");
        sub->add_option("--suite", c.suite, "Suite to run")->check(CLI::IsMember(choices));
        sub->add_option("--evidence-dir", c.evidence_dir, "Where evidence files go");
        sub->add_flag("--timings", c.timings, "Report wall time per claim");
    }
    graph_arg(command("mad", "Exact maximum average degree", run_mad));
    graph_arg(command("girth", "Length of a shortest cycle", run_girth));
    graph_arg(command("discharge", "Charge audit of the discharging rules", run_discharge));
    {
        auto sub = command("lpq", "Oriented L(p,q) labelling of smallest span", run_lpq);
        graph_arg(sub, false);
        sub->add_option("--p", c.p, "Gap between adjacent labels")->check(CLI::Range(1, 20));
        sub->add_option("--q", c.q, "Gap across directed 2-paths")->check(CLI::Range(1, 20));
        sub->add_option("--variant", c.variant, "dipath or oriented")->check(CLI::IsMember({ "dipath", "oriented" }));
        sub->add_flag("--explicit", c.explicit_labelling, "Check the fixed labelling of AT(C3) instead of searching");
    }
    graph_arg(command("canon", "Canonical code up to push and isomorphism", run_canon));

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        for (auto & [sub, run] : commands)
            if (sub->parsed())
                return run(c);
    }
    catch (const BudgetExhausted & e) {
        std::cerr << "pushcrit: " << e.what() << '\n';
        return exit_budget;
    }
    catch (const Error & e) {
        std::cerr << "pushcrit: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::filesystem::filesystem_error & e) {
        std::cerr << "pushcrit: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
