/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef PUSHCRIT_GUARD_STRUCTURE_HH
#define PUSHCRIT_GUARD_STRUCTURE_HH 1

#include <pushcrit/errors.hh>
#include <pushcrit/oriented_graph.hh>
#include <pushcrit/rational.hh>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <vector>

namespace pushcrit
{
    namespace detail
    {
        /// Dinic max flow on int64 capacities; only what densest-subgraph needs.
        class FlowNetwork
        {
            private:
                struct Edge
                {
                    int to;
                    std::int64_t cap;
                };

                std::vector<Edge> _edges;
                std::vector<std::vector<int>> _out;
                std::vector<int> _level, _next;

                auto bfs(int s, int t) -> bool
                {
                    std::fill(_level.begin(), _level.end(), -1);
                    _level[s] = 0;
                    std::deque<int> queue{ s };
                    while (! queue.empty()) {
                        int u = queue.front();
                        queue.pop_front();
                        for (int id : _out[u])
                            if (_edges[id].cap > 0 && _level[_edges[id].to] == -1) {
                                _level[_edges[id].to] = _level[u] + 1;
                                queue.push_back(_edges[id].to);
                            }
                    }
                    return _level[t] != -1;
                }

                auto dfs(int u, int t, std::int64_t pushed) -> std::int64_t
                {
                    if (u == t)
                        return pushed;
                    for (int & i = _next[u] ; i < int(_out[u].size()) ; ++i) {
                        int id = _out[u][i];
                        auto & e = _edges[id];
                        if (e.cap <= 0 || _level[e.to] != _level[u] + 1)
                            continue;
                        auto got = dfs(e.to, t, std::min(pushed, e.cap));
                        if (got > 0) {
                            e.cap -= got;
                            _edges[id ^ 1].cap += got;
                            return got;
                        }
                    }
                    return 0;
                }

            public:
                explicit FlowNetwork(int n) : _out(n), _level(n), _next(n) { }

                auto add_edge(int u, int v, std::int64_t cap, std::int64_t reverse_cap = 0) -> void
                {
                    _out[u].push_back(int(_edges.size()));
                    _edges.push_back(Edge{ v, cap });
                    _out[v].push_back(int(_edges.size()));
                    _edges.push_back(Edge{ u, reverse_cap });
                }

                auto max_flow(int s, int t) -> std::int64_t
                {
                    std::int64_t total = 0;
                    while (bfs(s, t)) {
                        std::fill(_next.begin(), _next.end(), 0);
                        while (auto f = dfs(s, t, std::numeric_limits<std::int64_t>::max()))
                            total += f;
                    }
                    return total;
                }

                /// Vertices reachable from s in the residual graph, after max_flow.
                auto source_side(int s) -> std::vector<bool>
                {
                    std::vector<bool> seen(_out.size(), false);
                    seen[s] = true;
                    std::vector<int> stack{ s };
                    while (! stack.empty()) {
                        int u = stack.back();
                        stack.pop_back();
                        for (int id : _out[u])
                            if (_edges[id].cap > 0 && ! seen[_edges[id].to]) {
                                seen[_edges[id].to] = true;
                                stack.push_back(_edges[id].to);
                            }
                    }
                    return seen;
                }
        };

        inline auto mad_by_subsets(const OrientedGraph & g) -> Rational
        {
            int n = g.vertex_count();
            std::vector<std::uint32_t> rows(n, 0);
            for (auto & a : g.arcs()) {
                rows[a.tail] |= 1u << a.head;
                rows[a.head] |= 1u << a.tail;
            }

            // edges[S] = edges[S minus lowest] + neighbours of lowest inside S
            std::vector<int> edges(std::size_t{ 1 } << n, 0);
            Rational best{ 0 };
            for (std::uint32_t s = 1 ; s < (std::uint32_t{ 1 } << n) ; ++s) {
                int low = std::countr_zero(s);
                std::uint32_t rest = s & (s - 1);
                edges[s] = edges[rest] + std::popcount(rows[low] & rest);
                Rational density{ 2 * edges[s], std::popcount(s) };
                if (density > best)
                    best = density;
            }
            return best;
        }

        inline auto mad_by_flow(const OrientedGraph & g) -> Rational
        {
            int n = g.vertex_count();
            std::int64_t m = g.arc_count();
            if (m == 0)
                return Rational{ 0 };

            // Dinkelbach iteration on e(S)/|S|, starting from the whole graph
            std::int64_t a = m, b = n;
            while (true) {
                int s = n, t = n + 1;
                FlowNetwork net(n + 2);
                for (int v = 0 ; v < n ; ++v) {
                    net.add_edge(s, v, b * m);
                    net.add_edge(v, t, b * m + 2 * a - b * g.degree(v));
                }
                for (auto & arc : g.arcs())
                    net.add_edge(arc.tail, arc.head, b, b);
                net.max_flow(s, t);
                auto side = net.source_side(s);

                std::int64_t size = 0, inside = 0;
                for (int v = 0 ; v < n ; ++v)
                    size += side[v];
                for (auto & arc : g.arcs())
                    inside += side[arc.tail] && side[arc.head];
                if (size == 0 || b * inside - a * size <= 0)
                    return Rational{ 2 * a, b };
                a = inside;
                b = size;
            }
        }
    }

    /**
     * Maximum over nonempty induced subgraphs of 2|E|/|V|. Exhaustive over vertex subsets
     * up to brute_force_limit vertices, otherwise by parametric min cut.
     */
    inline auto mad_exact(const OrientedGraph & g, int brute_force_limit = 20) -> Rational
    {
        if (g.vertex_count() == 0)
            throw UndefinedInput("maximum average degree of the empty graph");
        if (g.vertex_count() <= std::min(brute_force_limit, 25))
            return detail::mad_by_subsets(g);
        return detail::mad_by_flow(g);
    }

    struct Chain
    {
        int start, end;                 // 3+-vertices, possibly equal
        std::vector<int> internal;      // 2-vertices in order from start to end
    };

    struct VertexClass
    {
        int vertex;
        int degree;
        std::vector<int> chain_internal_counts;     // one per incident chain, largest first
        int total;
    };

    struct Classification
    {
        std::vector<VertexClass> classes;
        std::vector<Chain> chains;
    };

    /**
     * Splits the graph into chains between vertices of degree at least three. Every 2-vertex
     * must lie on such a chain; isolated vertices are ignored.
     */
    inline auto classify_vertices(const OrientedGraph & g) -> Classification
    {
        int n = g.vertex_count();
        Classification result;
        std::vector<bool> on_chain(n, false);

        for (int v = 0 ; v < n ; ++v) {
            if (g.degree(v) < 3)
                continue;
            VertexClass cls{ v, g.degree(v), { }, 0 };
            for (auto & first : g.neighbours(v)) {
                Chain chain{ v, -1, { } };
                int prev = v, cur = first.vertex;
                while (g.degree(cur) == 2) {
                    chain.internal.push_back(cur);
                    auto nbs = g.neighbours(cur);
                    int next = nbs[0].vertex == prev ? nbs[1].vertex : nbs[0].vertex;
                    prev = cur;
                    cur = next;
                }
                if (g.degree(cur) < 2)
                    throw Unclassifiable("vertex " + std::to_string(cur) + " of degree " + std::to_string(g.degree(cur)) + " ends a chain from vertex " + std::to_string(v));
                chain.end = cur;
                for (auto w : chain.internal)
                    on_chain[w] = true;

                cls.chain_internal_counts.push_back(int(chain.internal.size()));
                cls.total += int(chain.internal.size());

                // record each chain once, from the end with the smaller (endpoint, first step) pair
                int first_step = first.vertex;
                int last_step = chain.internal.empty() ? v : chain.internal.back();
                if (std::pair{ v, first_step } < std::pair{ cur, last_step })
                    result.chains.push_back(std::move(chain));
            }
            std::sort(cls.chain_internal_counts.begin(), cls.chain_internal_counts.end(), std::greater<>{ });
            result.classes.push_back(std::move(cls));
        }

        for (int v = 0 ; v < n ; ++v) {
            if (g.degree(v) == 1)
                throw Unclassifiable("vertex " + std::to_string(v) + " has degree 1");
            if (g.degree(v) == 2 && ! on_chain[v]) {
                auto comps = connected_components(g);
                for (auto & c : comps)
                    if (std::find(c.begin(), c.end(), v) != c.end()) {
                        std::string names;
                        for (auto w : c)
                            names += (names.empty() ? "" : " ") + std::to_string(w);
                        throw Unclassifiable("2-regular component {" + names + "}");
                    }
            }
        }
        return result;
    }

    /// The class of one vertex of degree at least three, or null.
    inline auto vertex_class(const Classification & c, int v) -> const VertexClass *
    {
        for (auto & cls : c.classes)
            if (cls.vertex == v)
                return &cls;
        return nullptr;
    }
}

#endif
