/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef PUSHCRIT_GUARD_ENUMERATION_HH
#define PUSHCRIT_GUARD_ENUMERATION_HH 1

#include <pushcrit/canonical.hh>
#include <pushcrit/errors.hh>
#include <pushcrit/fixtures.hh>
#include <pushcrit/homomorphism.hh>
#include <pushcrit/oriented_graph.hh>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace pushcrit
{
    namespace detail
    {
        /// Vertices whose removal keeps g connected.
        inline auto non_cut_vertices(const SimpleGraph & g) -> std::uint64_t
        {
            std::uint64_t result = 0;
            for (int v = 0 ; v < g.n ; ++v) {
                SimpleGraph rest(g.n - 1);
                for (int a = 0, ia = 0 ; a < g.n ; ++a) {
                    if (a == v)
                        continue;
                    for (int b = a + 1, ib = ia + 1 ; b < g.n ; ++b) {
                        if (b == v)
                            continue;
                        if (g.has_edge(a, b))
                            rest.add_edge(ia, ib);
                        ++ib;
                    }
                    ++ia;
                }
                if (is_connected(rest))
                    result |= std::uint64_t{ 1 } << v;
            }
            return result;
        }

        /**
         * Canonical augmentation: the child is kept only if its newest vertex lies in the same
         * automorphism orbit as the non-cut vertex with the largest canonical position.
         */
        inline auto accept_child(const SimpleGraph & child, const CanonicalLabelling & canon) -> bool
        {
            int newest = child.n - 1;
            auto candidates = non_cut_vertices(child);
            int chosen = -1;
            while (candidates) {
                int v = std::countr_zero(candidates);
                candidates &= candidates - 1;
                if (chosen == -1 || canon.labelling[v] > canon.labelling[chosen])
                    chosen = v;
            }
            return chosen != -1 && canon.orbit[chosen] == canon.orbit[newest];
        }

        inline auto grow(const SimpleGraph & g, int n, int min_degree, const std::function<void (const SimpleGraph &)> & emit) -> void
        {
            if (g.n == n) {
                for (int v = 0 ; v < n ; ++v)
                    if (g.degree(v) < min_degree)
                        return;
                emit(g);
                return;
            }

            std::set<std::vector<std::uint64_t>> children_seen;
            for (std::uint64_t nbrs = 1 ; nbrs < (std::uint64_t{ 1 } << g.n) ; ++nbrs) {
                SimpleGraph child(g.n + 1);
                for (int v = 0 ; v < g.n ; ++v)
                    child.rows[v] = g.rows[v];
                for (int v = 0 ; v < g.n ; ++v)
                    if ((nbrs >> v) & 1)
                        child.add_edge(v, g.n);

                auto canon = canonical_labelling(child);
                if (! children_seen.insert(canon.code).second)
                    continue;
                if (! accept_child(child, canon))
                    continue;
                grow(child, n, min_degree, emit);
            }
        }
    }

    /// Every connected simple graph on n vertices with the given minimum degree, once per isomorphism class.
    inline auto enumerate_underlying(int n, int min_degree, const std::function<void (const SimpleGraph &)> & emit) -> void
    {
        if (n < 1)
            return;
        if (n > 12)
            throw ConfigurationError("underlying graphs are enumerated for at most 12 vertices");
        detail::grow(SimpleGraph(1), n, min_degree, emit);
    }

    inline auto enumerate_underlying(int n, int min_degree) -> std::vector<SimpleGraph>
    {
        std::vector<SimpleGraph> result;
        enumerate_underlying(n, min_degree, [&] (const SimpleGraph & g) { result.push_back(g); });
        return result;
    }

    /**
     * One orientation per push-equivalence class: arcs of a BFS forest point from parent to
     * child, and the co-tree arcs take every direction pattern.
     */
    inline auto enumerate_orientations_mod_push(const SimpleGraph & u, const std::function<void (const OrientedGraph &)> & emit) -> void
    {
        std::vector<int> parent(u.n, -2);
        std::vector<Arc> tree;
        for (int root = 0 ; root < u.n ; ++root) {
            if (parent[root] != -2)
                continue;
            parent[root] = -1;
            std::deque<int> queue{ root };
            while (! queue.empty()) {
                int x = queue.front();
                queue.pop_front();
                for (int y = 0 ; y < u.n ; ++y)
                    if (u.has_edge(x, y) && parent[y] == -2) {
                        parent[y] = x;
                        tree.push_back(Arc{ x, y });
                        queue.push_back(y);
                    }
            }
        }

        std::vector<std::pair<int, int>> cotree;
        for (auto & [a, b] : u.edges())
            if (parent[a] != b && parent[b] != a)
                cotree.emplace_back(a, b);
        if (cotree.size() > 40)
            throw ConfigurationError("too many independent cycles to enumerate orientations");

        for (std::uint64_t bits = 0 ; bits < (std::uint64_t{ 1 } << cotree.size()) ; ++bits) {
            auto arcs = tree;
            for (std::size_t i = 0 ; i < cotree.size() ; ++i) {
                auto [a, b] = cotree[i];
                arcs.push_back((bits >> i) & 1 ? Arc{ a, b } : Arc{ b, a });
            }
            emit(OrientedGraph{ u.n, std::move(arcs) });
        }
    }

    /// Orientations of u up to pushing and isomorphism, one per canonical form.
    inline auto orientation_classes(const SimpleGraph & u) -> std::vector<OrientedGraph>
    {
        std::set<CanonicalCode> seen;
        std::vector<OrientedGraph> result;
        enumerate_orientations_mod_push(u, [&] (const OrientedGraph & g) {
                if (seen.insert(canonical_form(g)).second)
                    result.push_back(g);
            });
        return result;
    }

    struct EnumerationRecord
    {
        std::string canonical_code;     // lowercase hex
        int n = 0, m = 0;
        bool critical = false;
        std::int64_t potential = 0;
        bool satisfies_bound = false;
        std::optional<std::string> exception;
        std::vector<Arc> arcs;          // a representative

        auto operator== (const EnumerationRecord &) const -> bool = default;
    };

    inline auto to_json(const EnumerationRecord & r) -> nlohmann::ordered_json
    {
        nlohmann::ordered_json j;
        j["canonical_code"] = r.canonical_code;
        j["n"] = r.n;
        j["m"] = r.m;
        j["critical"] = r.critical;
        j["potential"] = r.potential;
        j["satisfies_bound"] = r.satisfies_bound;
        j["exception"] = r.exception ? nlohmann::ordered_json(*r.exception) : nlohmann::ordered_json(nullptr);
        auto arcs = nlohmann::ordered_json::array();
        for (auto & a : r.arcs)
            arcs.push_back({ a.tail, a.head });
        j["arcs"] = arcs;
        return j;
    }

    inline auto record_from_json(const nlohmann::json & j) -> EnumerationRecord
    {
        EnumerationRecord r;
        r.canonical_code = j.at("canonical_code").get<std::string>();
        r.n = j.at("n").get<int>();
        r.m = j.at("m").get<int>();
        r.critical = j.at("critical").get<bool>();
        r.potential = j.at("potential").get<std::int64_t>();
        r.satisfies_bound = j.at("satisfies_bound").get<bool>();
        if (! j.at("exception").is_null())
            r.exception = j.at("exception").get<std::string>();
        for (auto & a : j.at("arcs"))
            r.arcs.push_back(Arc{ a.at(0).get<int>(), a.at(1).get<int>() });
        return r;
    }

    /// 13m >= 15n + 2, the arc-density bound for critical graphs.
    inline auto satisfies_density_bound(int n, int m) -> bool
    {
        return 13 * std::int64_t(m) >= 15 * std::int64_t(n) + 2;
    }

    /// Which of the four named exceptions a canonical code belongs to, if any.
    inline auto exception_name(const std::string & hex_code) -> std::optional<std::string>
    {
        static const std::vector<std::pair<std::string, std::string>> known = [] {
            std::vector<std::pair<std::string, std::string>> result;
            for (auto [fixture, label] : { std::pair{ "c_minus4", "C-4" }, { "e1", "E1" }, { "e2", "E2" }, { "e3", "E3" } })
                result.emplace_back(to_hex(canonical_form(builtin_graph(fixture))), label);
            return result;
        }();
        for (auto & [code, label] : known)
            if (code == hex_code)
                return label;
        return std::nullopt;
    }

    inline auto make_record(const OrientedGraph & g, bool critical) -> EnumerationRecord
    {
        EnumerationRecord r;
        r.canonical_code = to_hex(canonical_form(g));
        r.n = g.vertex_count();
        r.m = g.arc_count();
        r.critical = critical;
        r.potential = potential(g);
        r.satisfies_bound = satisfies_density_bound(r.n, r.m);
        r.exception = exception_name(r.canonical_code);
        r.arcs = g.sorted_arcs();
        return r;
    }

    /// Proper vertex colouring of an undirected graph with k colours, by backtracking.
    inline auto properly_colorable(const SimpleGraph & g, int k) -> bool
    {
        std::vector<int> colour(g.n, -1);
        std::function<bool (int)> go = [&] (int v) -> bool {
            if (v == g.n)
                return true;
            // the first vertex only ever needs colour 0
            int limit = v == 0 ? 1 : k;
            for (int c = 0 ; c < limit ; ++c) {
                bool ok = true;
                for (int w = 0 ; w < v && ok ; ++w)
                    if (g.has_edge(v, w) && colour[w] == c)
                        ok = false;
                if (ok) {
                    colour[v] = c;
                    if (go(v + 1))
                        return true;
                }
            }
            colour[v] = -1;
            return false;
        };
        return go(0);
    }

    /// Some single edge deletion leaves a graph that has no proper 3-colouring.
    inline auto edge_deletion_not_3_colorable(const SimpleGraph & g) -> bool
    {
        for (auto & [a, b] : g.edges()) {
            auto h = g;
            h.rows[a] &= ~(std::uint64_t{ 1 } << b);
            h.rows[b] &= ~(std::uint64_t{ 1 } << a);
            if (! properly_colorable(h, 3))
                return true;
        }
        return false;
    }

    /// Longest run of degree-2 vertices between vertices of degree three or more; -1 for a cycle.
    inline auto longest_chain(const SimpleGraph & g) -> int
    {
        int longest = 0;
        bool any_branch = false;
        for (int v = 0 ; v < g.n ; ++v) {
            if (g.degree(v) < 3)
                continue;
            any_branch = true;
            auto r = g.rows[v];
            while (r) {
                int prev = v, cur = std::countr_zero(r);
                r &= r - 1;
                int run = 0;
                while (g.degree(cur) == 2) {
                    ++run;
                    auto next_mask = g.rows[cur] & ~(std::uint64_t{ 1 } << prev);
                    prev = cur;
                    cur = std::countr_zero(next_mask);
                }
                longest = std::max(longest, run);
            }
        }
        return any_branch ? longest : -1;
    }

    enum class PruneReason
    {
        none,
        deletion_not_3_colorable,
        long_chain
    };

    /**
     * Why no orientation of u can be pushably 3-critical: a proper subgraph without a proper
     * 3-colouring, or a chain of four or more 2-vertices, which always extends.
     */
    inline auto prune_reason(const SimpleGraph & u) -> PruneReason
    {
        if (edge_deletion_not_3_colorable(u))
            return PruneReason::deletion_not_3_colorable;
        if (longest_chain(u) >= 4)
            return PruneReason::long_chain;
        return PruneReason::none;
    }

    /// Whether an orientation is pushably 3-critical, using only C3 colourings.
    inline auto is_3_critical_fast(const OrientedGraph & g) -> bool
    {
        if (pushable_3_coloring(g))
            return false;
        for (int i = 0 ; i < g.arc_count() ; ++i)
            if (! pushable_3_coloring(remove_arc(g, i)))
                return false;
        return true;
    }

    struct UnderlyingOutcome
    {
        PruneReason pruned = PruneReason::none;
        long orientations = 0;
        std::vector<EnumerationRecord> critical;
    };

    /// All pushably 3-critical orientations of one underlying graph, deduplicated and sorted by code.
    inline auto critical_orientations(const SimpleGraph & u, bool apply_prunes = true) -> UnderlyingOutcome
    {
        UnderlyingOutcome outcome;
        if (apply_prunes) {
            outcome.pruned = prune_reason(u);
            if (outcome.pruned != PruneReason::none)
                return outcome;
        }
        std::set<std::string> seen;
        enumerate_orientations_mod_push(u, [&] (const OrientedGraph & g) {
                ++outcome.orientations;
                if (is_3_critical_fast(g)) {
                    auto r = make_record(g, true);
                    if (seen.insert(r.canonical_code).second)
                        outcome.critical.push_back(std::move(r));
                }
            });
        std::sort(outcome.critical.begin(), outcome.critical.end(),
                [] (const auto & a, const auto & b) { return a.canonical_code < b.canonical_code; });
        return outcome;
    }

    struct EnumerationOptions
    {
        int jobs = 1;
        std::optional<std::filesystem::path> shard_dir;
        bool resume = false;
        std::optional<double> max_seconds;
        std::size_t checkpoint_every = 500;
        std::function<void (const std::string &)> progress;
    };

    struct LevelSummary
    {
        int n = 0;
        std::size_t underlying = 0, pruned_deletion = 0, pruned_chain = 0;
        long orientations = 0;
        std::size_t critical = 0;
        bool resumed = false;
    };

    struct EnumerationResult
    {
        std::vector<EnumerationRecord> records;
        std::vector<LevelSummary> levels;
    };

    namespace detail
    {
        /// First adjacency byte of the canonical code, which names the shard file.
        inline auto shard_prefix(const std::string & hex_code) -> std::string
        {
            return hex_code.size() >= 6 ? hex_code.substr(4, 2) : "00";
        }

        inline auto write_atomically(const std::filesystem::path & path, const std::string & content) -> void
        {
            auto tmp = path;
            tmp += ".tmp";
            {
                std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                if (! out)
                    throw Error("cannot write " + tmp.string());
                out << content;
            }
            std::filesystem::rename(tmp, path);
        }

        struct Cursor
        {
            std::size_t completed = 0;
            std::string last_code;
            bool complete = false;
            LevelSummary summary;
        };

        inline auto read_cursor(const std::filesystem::path & dir) -> std::optional<Cursor>
        {
            std::ifstream in(dir / "CURSOR");
            if (! in)
                return std::nullopt;
            nlohmann::json j;
            try {
                in >> j;
            }
            catch (const nlohmann::json::exception &) {
                return std::nullopt;
            }
            Cursor c;
            c.completed = j.at("completed").get<std::size_t>();
            c.last_code = j.at("last_underlying_code").get<std::string>();
            c.complete = j.at("complete").get<bool>();
            c.summary.pruned_deletion = j.at("pruned_deletion").get<std::size_t>();
            c.summary.pruned_chain = j.at("pruned_chain").get<std::size_t>();
            c.summary.orientations = j.at("orientations").get<long>();
            return c;
        }

        inline auto read_shards(const std::filesystem::path & dir) -> std::vector<EnumerationRecord>
        {
            std::vector<EnumerationRecord> result;
            if (! std::filesystem::exists(dir))
                return result;
            std::vector<std::filesystem::path> files;
            for (auto & entry : std::filesystem::directory_iterator(dir))
                if (entry.path().extension() == ".ndjson")
                    files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            for (auto & f : files) {
                std::ifstream in(f);
                std::string line;
                while (std::getline(in, line))
                    if (! line.empty())
                        result.push_back(record_from_json(nlohmann::json::parse(line)));
            }
            return result;
        }

        inline auto write_level(const std::filesystem::path & dir, const std::vector<EnumerationRecord> & records,
                const Cursor & cursor) -> void
        {
            std::filesystem::create_directories(dir);
            std::map<std::string, std::string> shards;
            auto sorted = records;
            std::sort(sorted.begin(), sorted.end(), [] (const auto & a, const auto & b) { return a.canonical_code < b.canonical_code; });
            for (auto & r : sorted)
                shards[shard_prefix(r.canonical_code)] += to_json(r).dump() + "\n";

            for (auto & entry : std::filesystem::directory_iterator(dir))
                if (entry.path().extension() == ".ndjson" && ! shards.contains(entry.path().stem().string()))
                    std::filesystem::remove(entry.path());
            for (auto & [prefix, content] : shards)
                write_atomically(dir / (prefix + ".ndjson"), content);

            nlohmann::ordered_json j;
            j["completed"] = cursor.completed;
            j["last_underlying_code"] = cursor.last_code;
            j["complete"] = cursor.complete;
            j["pruned_deletion"] = cursor.summary.pruned_deletion;
            j["pruned_chain"] = cursor.summary.pruned_chain;
            j["orientations"] = cursor.summary.orientations;
            write_atomically(dir / "CURSOR", j.dump(2) + "\n");
        }

        inline auto underlying_hex(const SimpleGraph & g) -> std::string
        {
            CanonicalCode bytes;
            for (auto r : canonical_labelling(g).code)
                for (int i = 0 ; i < 8 ; ++i)
                    bytes.push_back(std::uint8_t(r >> (8 * i)));
            return to_hex(bytes);
        }
    }

    /**
     * Every pushably 3-critical oriented graph on at most n_max vertices, once per pushable
     * isomorphism class. Work is split by underlying graph; with a shard directory, progress is
     * saved after each checkpoint and a resumed run skips the completed prefix.
     */
    inline auto find_critical(int n_max, const EnumerationOptions & options = { }) -> EnumerationResult
    {
        EnumerationResult result;
        auto started = std::chrono::steady_clock::now();
        auto out_of_time = [&] {
            return options.max_seconds
                && std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count() > *options.max_seconds;
        };

        for (int n = 3 ; n <= n_max ; ++n) {
            LevelSummary summary;
            summary.n = n;
            auto items = enumerate_underlying(n, 2);
            summary.underlying = items.size();

            std::optional<std::filesystem::path> dir;
            if (options.shard_dir)
                dir = *options.shard_dir / std::to_string(n);

            std::vector<EnumerationRecord> level_records;
            std::size_t start = 0;
            if (dir && options.resume) {
                if (auto cursor = detail::read_cursor(*dir)) {
                    bool matches = cursor->completed <= items.size()
                        && (cursor->completed == 0 || detail::underlying_hex(items[cursor->completed - 1]) == cursor->last_code);
                    if (matches) {
                        start = cursor->completed;
                        level_records = detail::read_shards(*dir);
                        summary.pruned_deletion = cursor->summary.pruned_deletion;
                        summary.pruned_chain = cursor->summary.pruned_chain;
                        summary.orientations = cursor->summary.orientations;
                        summary.resumed = start > 0;
                    }
                }
            }

            std::vector<std::optional<UnderlyingOutcome>> outcomes(items.size());
            std::vector<std::atomic<bool>> done(items.size());
            std::atomic<std::size_t> next{ start };
            std::atomic<bool> stop{ false };

            auto worker = [&] {
                while (! stop.load()) {
                    auto i = next.fetch_add(1);
                    if (i >= items.size())
                        return;
                    outcomes[i] = critical_orientations(items[i]);
                    done[i].store(true, std::memory_order_release);
                }
            };

            std::vector<std::thread> threads;
            int jobs = std::max(1, options.jobs);
            for (int t = 1 ; t < jobs ; ++t)
                threads.emplace_back(worker);

            // the calling thread merges the completed prefix in order, and works when single-threaded
            std::size_t merged = start, since_checkpoint = 0;
            bool timed_out = false;
            auto checkpoint = [&] (bool complete) {
                if (! dir)
                    return;
                detail::Cursor c;
                c.completed = merged;
                c.last_code = merged > 0 ? detail::underlying_hex(items[merged - 1]) : "";
                c.complete = complete;
                c.summary = summary;
                detail::write_level(*dir, level_records, c);
            };

            while (merged < items.size()) {
                if (jobs == 1) {
                    auto i = next.fetch_add(1);
                    outcomes[i] = critical_orientations(items[i]);
                    done[i].store(true, std::memory_order_release);
                }
                else if (! done[merged].load(std::memory_order_acquire)) {
                    std::this_thread::sleep_for(std::chrono::milliseconds(2));
                    if (out_of_time()) {
                        timed_out = true;
                        break;
                    }
                    continue;
                }

                while (merged < items.size() && done[merged].load(std::memory_order_acquire)) {
                    auto & o = *outcomes[merged];
                    summary.pruned_deletion += o.pruned == PruneReason::deletion_not_3_colorable;
                    summary.pruned_chain += o.pruned == PruneReason::long_chain;
                    summary.orientations += o.orientations;
                    for (auto & r : o.critical)
                        level_records.push_back(r);
                    outcomes[merged].reset();
                    ++merged;
                    if (++since_checkpoint >= options.checkpoint_every) {
                        checkpoint(false);
                        since_checkpoint = 0;
                    }
                }
                if (merged < items.size() && out_of_time()) {
                    timed_out = true;
                    break;
                }
                if (options.progress && since_checkpoint == 0)
                    options.progress("n=" + std::to_string(n) + " " + std::to_string(merged) + "/" + std::to_string(items.size()));
            }

            stop.store(true);
            for (auto & t : threads)
                t.join();

            if (timed_out) {
                checkpoint(false);
                throw BudgetExhausted("enumeration stopped at n = " + std::to_string(n) + " after "
                        + std::to_string(merged) + " of " + std::to_string(items.size()) + " underlying graphs");
            }

            std::sort(level_records.begin(), level_records.end(),
                    [] (const auto & a, const auto & b) { return a.canonical_code < b.canonical_code; });
            checkpoint(true);
            summary.critical = level_records.size();
            result.levels.push_back(summary);
            for (auto & r : level_records)
                result.records.push_back(std::move(r));
        }
        return result;
    }

    struct DensityReport
    {
        bool pass = true;
        std::vector<EnumerationRecord> violators;
        std::size_t via_exception = 0;
    };

    /// Every record meets 13m >= 15n + 2 or is one of the named exceptions.
    inline auto verify_density_bound(const std::vector<EnumerationRecord> & records) -> DensityReport
    {
        DensityReport report;
        for (auto & r : records) {
            if (r.satisfies_bound)
                continue;
            if (r.exception) {
                ++report.via_exception;
                continue;
            }
            report.pass = false;
            report.violators.push_back(r);
        }
        return report;
    }
}

#endif
