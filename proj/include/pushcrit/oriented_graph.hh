/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef PUSHCRIT_GUARD_ORIENTED_GRAPH_HH
#define PUSHCRIT_GUARD_ORIENTED_GRAPH_HH 1

#include <pushcrit/errors.hh>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pushcrit
{
    struct Arc
    {
        int tail = 0;
        int head = 0;

        constexpr auto operator<=> (const Arc &) const = default;
    };

    struct Neighbour
    {
        int vertex;
        bool out;   // true if the arc is (this, vertex)
    };

    /**
     * A loop-free, digon-free, simple directed graph on vertices 0..n-1.
     *
     * Arc order is preserved as given; equality compares arc sets.
     */
    class OrientedGraph
    {
        private:
            int _n = 0;
            std::vector<Arc> _arcs;
            std::optional<std::string> _name;
            std::vector<std::vector<Neighbour>> _adj;

        public:
            OrientedGraph() = default;

            explicit OrientedGraph(int n, std::vector<Arc> arcs = { }, std::optional<std::string> name = std::nullopt) :
                _n(n),
                _arcs(std::move(arcs)),
                _name(std::move(name))
            {
                if (_n < 0)
                    throw InvalidGraph("negative vertex count");

                std::set<std::pair<int, int>> seen;
                for (auto & a : _arcs) {
                    if (a.tail < 0 || a.head < 0 || a.tail >= _n || a.head >= _n)
                        throw InvalidGraph("arc (" + std::to_string(a.tail) + ", " + std::to_string(a.head) + ") has an endpoint outside 0.." + std::to_string(_n - 1));
                    if (a.tail == a.head)
                        throw InvalidGraph("loop at vertex " + std::to_string(a.tail));
                    if (seen.contains({ a.tail, a.head }))
                        throw InvalidGraph("parallel arc (" + std::to_string(a.tail) + ", " + std::to_string(a.head) + ")");
                    if (seen.contains({ a.head, a.tail }))
                        throw InvalidGraph("digon between " + std::to_string(a.tail) + " and " + std::to_string(a.head));
                    seen.emplace(a.tail, a.head);
                }

                _adj.resize(_n);
                for (auto & a : _arcs) {
                    _adj[a.tail].push_back(Neighbour{ a.head, true });
                    _adj[a.head].push_back(Neighbour{ a.tail, false });
                }
            }

            [[nodiscard]] auto vertex_count() const -> int { return _n; }
            [[nodiscard]] auto arc_count() const -> int { return int(_arcs.size()); }
            [[nodiscard]] auto arcs() const -> const std::vector<Arc> & { return _arcs; }
            [[nodiscard]] auto name() const -> const std::optional<std::string> & { return _name; }

            [[nodiscard]] auto neighbours(int v) const -> std::span<const Neighbour> { return _adj.at(v); }
            [[nodiscard]] auto degree(int v) const -> int { return int(_adj.at(v).size()); }

            [[nodiscard]] auto out_degree(int v) const -> int
            {
                return int(std::count_if(_adj.at(v).begin(), _adj.at(v).end(), [] (const Neighbour & x) { return x.out; }));
            }

            [[nodiscard]] auto in_degree(int v) const -> int { return degree(v) - out_degree(v); }

            [[nodiscard]] auto has_arc(int tail, int head) const -> bool
            {
                for (auto & x : _adj.at(tail))
                    if (x.out && x.vertex == head)
                        return true;
                return false;
            }

            [[nodiscard]] auto adjacent(int u, int v) const -> bool
            {
                for (auto & x : _adj.at(u))
                    if (x.vertex == v)
                        return true;
                return false;
            }

            [[nodiscard]] auto sorted_arcs() const -> std::vector<Arc>
            {
                auto result = _arcs;
                std::sort(result.begin(), result.end());
                return result;
            }

            [[nodiscard]] auto with_name(std::optional<std::string> name) const -> OrientedGraph
            {
                return OrientedGraph{ _n, _arcs, std::move(name) };
            }

            auto operator== (const OrientedGraph & other) const -> bool
            {
                return _n == other._n && sorted_arcs() == other.sorted_arcs();
            }
    };

    /// A set of vertices, kept sorted and duplicate free.
    class PushSet
    {
        private:
            std::vector<int> _members;

        public:
            PushSet() = default;

            PushSet(std::vector<int> members) :
                _members(std::move(members))
            {
                std::sort(_members.begin(), _members.end());
                _members.erase(std::unique(_members.begin(), _members.end()), _members.end());
            }

            PushSet(std::initializer_list<int> members) : PushSet(std::vector<int>(members)) { }

            [[nodiscard]] auto members() const -> const std::vector<int> & { return _members; }
            [[nodiscard]] auto contains(int v) const -> bool { return std::binary_search(_members.begin(), _members.end(), v); }
            [[nodiscard]] auto size() const -> std::size_t { return _members.size(); }
            [[nodiscard]] auto empty() const -> bool { return _members.empty(); }

            [[nodiscard]] auto as_mask(int n) const -> std::vector<bool>
            {
                std::vector<bool> result(n, false);
                for (auto v : _members) {
                    if (v < 0 || v >= n)
                        throw InvalidPushSet("vertex " + std::to_string(v) + " is not in 0.." + std::to_string(n - 1));
                    result[v] = true;
                }
                return result;
            }

            static auto from_mask(const std::vector<bool> & mask) -> PushSet
            {
                std::vector<int> members;
                for (int v = 0 ; v < int(mask.size()) ; ++v)
                    if (mask[v])
                        members.push_back(v);
                return PushSet{ std::move(members) };
            }

            auto operator== (const PushSet &) const -> bool = default;
    };

    /// Reverses every arc with exactly one endpoint in s.
    inline auto push_vertices(const OrientedGraph & g, const PushSet & s) -> OrientedGraph
    {
        auto mask = s.as_mask(g.vertex_count());
        std::vector<Arc> arcs;
        arcs.reserve(g.arcs().size());
        for (auto & a : g.arcs())
            arcs.push_back(mask[a.tail] != mask[a.head] ? Arc{ a.head, a.tail } : a);
        return OrientedGraph{ g.vertex_count(), std::move(arcs), g.name() };
    }

    inline auto push_vertices(const OrientedGraph & g, const std::vector<bool> & mask) -> OrientedGraph
    {
        if (int(mask.size()) != g.vertex_count())
            throw InvalidPushSet("mask length does not match vertex count");
        std::vector<Arc> arcs;
        arcs.reserve(g.arcs().size());
        for (auto & a : g.arcs())
            arcs.push_back(mask[a.tail] != mask[a.head] ? Arc{ a.head, a.tail } : a);
        return OrientedGraph{ g.vertex_count(), std::move(arcs), g.name() };
    }

    /**
     * Two copies of g, the second pushed, with corresponding vertices made twins.
     * Vertex i of g appears as i and n + i.
     */
    inline auto anti_twin(const OrientedGraph & g) -> OrientedGraph
    {
        int n = g.vertex_count();
        std::vector<Arc> arcs;
        arcs.reserve(4 * g.arcs().size());
        for (auto & a : g.arcs()) {
            arcs.push_back(Arc{ a.tail, a.head });
            arcs.push_back(Arc{ n + a.tail, n + a.head });
            arcs.push_back(Arc{ n + a.head, a.tail });
            arcs.push_back(Arc{ a.head, n + a.tail });
        }
        return OrientedGraph{ 2 * n, std::move(arcs), g.name() ? std::optional<std::string>{ "AT(" + *g.name() + ")" } : std::nullopt };
    }

    /// The underlying simple graph as (min, max) pairs, sorted.
    inline auto underlying_edges(const OrientedGraph & g) -> std::vector<std::pair<int, int>>
    {
        std::vector<std::pair<int, int>> result;
        result.reserve(g.arcs().size());
        for (auto & a : g.arcs())
            result.emplace_back(std::min(a.tail, a.head), std::max(a.tail, a.head));
        std::sort(result.begin(), result.end());
        return result;
    }

    /**
     * Finds S with push(g, S) = h, if one exists. Solves x(u) xor x(v) = [directions differ]
     * over GF(2) along a spanning forest, then checks the remaining edges.
     */
    inline auto is_push_equivalent(const OrientedGraph & g, const OrientedGraph & h) -> std::optional<PushSet>
    {
        if (g.vertex_count() != h.vertex_count() || underlying_edges(g) != underlying_edges(h))
            throw IncompatibleInput("graphs do not share a labelled underlying graph");

        int n = g.vertex_count();
        std::vector<int> x(n, -1);
        auto differs = [&] (int u, int v, bool out_in_g) {
            // out_in_g: g has u -> v
            return out_in_g != h.has_arc(u, v);
        };

        for (int root = 0 ; root < n ; ++root) {
            if (x[root] != -1)
                continue;
            x[root] = 0;
            std::deque<int> queue{ root };
            while (! queue.empty()) {
                int u = queue.front();
                queue.pop_front();
                for (auto & nb : g.neighbours(u)) {
                    int want = x[u] ^ int(differs(u, nb.vertex, nb.out));
                    if (x[nb.vertex] == -1) {
                        x[nb.vertex] = want;
                        queue.push_back(nb.vertex);
                    }
                    else if (x[nb.vertex] != want)
                        return std::nullopt;
                }
            }
        }

        std::vector<bool> mask(n);
        for (int v = 0 ; v < n ; ++v)
            mask[v] = x[v] == 1;
        return PushSet::from_mask(mask);
    }

    /// Relabels vertex v as perm[v].
    inline auto relabel(const OrientedGraph & g, std::span<const int> perm) -> OrientedGraph
    {
        if (int(perm.size()) != g.vertex_count())
            throw PreconditionError("permutation length does not match vertex count");
        std::vector<Arc> arcs;
        arcs.reserve(g.arcs().size());
        for (auto & a : g.arcs())
            arcs.push_back(Arc{ perm[a.tail], perm[a.head] });
        return OrientedGraph{ g.vertex_count(), std::move(arcs), g.name() };
    }

    inline auto remove_arc(const OrientedGraph & g, int arc_index) -> OrientedGraph
    {
        auto arcs = g.arcs();
        arcs.erase(arcs.begin() + arc_index);
        return OrientedGraph{ g.vertex_count(), std::move(arcs), g.name() };
    }

    inline auto isolated_vertices(const OrientedGraph & g) -> std::vector<int>
    {
        std::vector<int> result;
        for (int v = 0 ; v < g.vertex_count() ; ++v)
            if (g.degree(v) == 0)
                result.push_back(v);
        return result;
    }

    /// The subgraph induced by keep, with vertices renumbered in increasing order.
    inline auto induced_subgraph(const OrientedGraph & g, const std::vector<int> & keep) -> OrientedGraph
    {
        std::vector<int> index(g.vertex_count(), -1);
        int next = 0;
        auto sorted = keep;
        std::sort(sorted.begin(), sorted.end());
        for (auto v : sorted)
            index.at(v) = next++;
        std::vector<Arc> arcs;
        for (auto & a : g.arcs())
            if (index[a.tail] != -1 && index[a.head] != -1)
                arcs.push_back(Arc{ index[a.tail], index[a.head] });
        return OrientedGraph{ next, std::move(arcs), g.name() };
    }

    inline auto strip_isolated(const OrientedGraph & g) -> OrientedGraph
    {
        std::vector<int> keep;
        for (int v = 0 ; v < g.vertex_count() ; ++v)
            if (g.degree(v) > 0)
                keep.push_back(v);
        return induced_subgraph(g, keep);
    }

    inline auto disjoint_union(const OrientedGraph & a, const OrientedGraph & b) -> OrientedGraph
    {
        auto arcs = a.arcs();
        for (auto & x : b.arcs())
            arcs.push_back(Arc{ x.tail + a.vertex_count(), x.head + a.vertex_count() });
        return OrientedGraph{ a.vertex_count() + b.vertex_count(), std::move(arcs) };
    }

    inline auto connected_components(const OrientedGraph & g) -> std::vector<std::vector<int>>
    {
        std::vector<int> seen(g.vertex_count(), 0);
        std::vector<std::vector<int>> result;
        for (int r = 0 ; r < g.vertex_count() ; ++r) {
            if (seen[r])
                continue;
            result.emplace_back();
            std::vector<int> stack{ r };
            seen[r] = 1;
            while (! stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                result.back().push_back(u);
                for (auto & nb : g.neighbours(u))
                    if (! seen[nb.vertex]) {
                        seen[nb.vertex] = 1;
                        stack.push_back(nb.vertex);
                    }
            }
            std::sort(result.back().begin(), result.back().end());
        }
        return result;
    }

    inline auto is_connected(const OrientedGraph & g) -> bool
    {
        return g.vertex_count() <= 1 || connected_components(g).size() == 1;
    }

    /**
     * Adds an oriented path with k arcs from x to y through k - 1 new vertices.
     * orientation[i] is true if the i-th arc points away from x along the path.
     */
    inline auto attach_path(const OrientedGraph & g, int x, int y, int k, const std::vector<bool> & orientation) -> OrientedGraph
    {
        int n = g.vertex_count();
        if (k < 1)
            throw PreconditionError("path length must be positive");
        if (int(orientation.size()) != k)
            throw PreconditionError("orientation must have exactly k bits");
        if (x < 0 || x >= n || y < 0 || y >= n)
            throw PreconditionError("path endpoints must be existing vertices");

        std::vector<int> path;
        path.push_back(x);
        for (int i = 1 ; i < k ; ++i)
            path.push_back(n + i - 1);
        path.push_back(y);

        auto arcs = g.arcs();
        for (int i = 0 ; i < k ; ++i)
            arcs.push_back(orientation[i] ? Arc{ path[i], path[i + 1] } : Arc{ path[i + 1], path[i] });

        try {
            return OrientedGraph{ n + k - 1, std::move(arcs), g.name() };
        }
        catch (const InvalidGraph & e) {
            throw StructuralViolation(std::string("attach_path: ") + e.what());
        }
    }

    /// 15|V| - 13|A|.
    inline auto potential(const OrientedGraph & g) -> std::int64_t
    {
        return 15 * std::int64_t(g.vertex_count()) - 13 * std::int64_t(g.arc_count());
    }

    /// Shortest cycle length in the underlying graph, or nullopt for a forest.
    inline auto girth(const OrientedGraph & g) -> std::optional<int>
    {
        int n = g.vertex_count();
        std::optional<int> best;
        std::vector<int> dist(n), parent(n);
        for (int s = 0 ; s < n ; ++s) {
            std::fill(dist.begin(), dist.end(), -1);
            std::fill(parent.begin(), parent.end(), -1);
            dist[s] = 0;
            std::deque<int> queue{ s };
            while (! queue.empty()) {
                int u = queue.front();
                queue.pop_front();
                for (auto & nb : g.neighbours(u)) {
                    int w = nb.vertex;
                    if (dist[w] == -1) {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    }
                    else if (parent[u] != w) {
                        int len = dist[u] + dist[w] + 1;
                        if (! best || len < *best)
                            best = len;
                    }
                }
            }
        }
        return best;
    }
}

#endif
