/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef PUSHCRIT_GUARD_CANONICAL_HH
#define PUSHCRIT_GUARD_CANONICAL_HH 1

#include <pushcrit/errors.hh>
#include <pushcrit/oriented_graph.hh>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace pushcrit
{
    /// Undirected simple graph on at most 64 vertices, one neighbour bitmask per vertex.
    struct SimpleGraph
    {
        int n = 0;
        std::vector<std::uint64_t> rows;

        SimpleGraph() = default;

        explicit SimpleGraph(int n_) : n(n_), rows(n_, 0)
        {
            if (n_ > 64)
                throw ConfigurationError("simple graphs are limited to 64 vertices");
        }

        auto add_edge(int u, int v) -> void
        {
            rows[u] |= std::uint64_t{ 1 } << v;
            rows[v] |= std::uint64_t{ 1 } << u;
        }

        [[nodiscard]] auto has_edge(int u, int v) const -> bool { return (rows[u] >> v) & 1; }
        [[nodiscard]] auto degree(int v) const -> int { return std::popcount(rows[v]); }

        [[nodiscard]] auto edge_count() const -> int
        {
            int total = 0;
            for (auto r : rows)
                total += std::popcount(r);
            return total / 2;
        }

        [[nodiscard]] auto edges() const -> std::vector<std::pair<int, int>>
        {
            std::vector<std::pair<int, int>> result;
            for (int u = 0 ; u < n ; ++u)
                for (int v = u + 1 ; v < n ; ++v)
                    if (has_edge(u, v))
                        result.emplace_back(u, v);
            return result;
        }

        auto operator== (const SimpleGraph &) const -> bool = default;
    };

    inline auto underlying_simple_graph(const OrientedGraph & g) -> SimpleGraph
    {
        SimpleGraph result(g.vertex_count());
        for (auto & a : g.arcs())
            result.add_edge(a.tail, a.head);
        return result;
    }

    /// Graph with vertex v renamed perm[v].
    inline auto permute(const SimpleGraph & g, const std::vector<int> & perm) -> SimpleGraph
    {
        SimpleGraph result(g.n);
        for (int u = 0 ; u < g.n ; ++u) {
            auto r = g.rows[u];
            while (r) {
                int v = std::countr_zero(r);
                r &= r - 1;
                result.rows[perm[u]] |= std::uint64_t{ 1 } << perm[v];
            }
        }
        return result;
    }

    inline auto is_connected(const SimpleGraph & g) -> bool
    {
        if (g.n <= 1)
            return true;
        std::uint64_t seen = 1, frontier = 1;
        while (frontier) {
            std::uint64_t next = 0;
            while (frontier) {
                int v = std::countr_zero(frontier);
                frontier &= frontier - 1;
                next |= g.rows[v];
            }
            frontier = next & ~seen;
            seen |= next;
        }
        return std::popcount(seen) == g.n;
    }

    struct CanonicalLabelling
    {
        std::vector<int> labelling;                 // vertex -> canonical position
        std::vector<std::uint64_t> code;            // rows of the canonically relabelled graph
        std::vector<std::vector<int>> generators;   // automorphisms, vertex -> vertex
        std::vector<int> orbit;                     // smallest vertex in each vertex's orbit
        long leaves_explored = 0;
    };

    namespace detail
    {
        using Partition = std::vector<std::vector<int>>;

        struct UnionFind
        {
            std::vector<int> parent;

            explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

            auto find(int x) -> int
            {
                while (parent[x] != x)
                    x = parent[x] = parent[parent[x]];
                return x;
            }

            auto unite(int a, int b) -> void
            {
                a = find(a);
                b = find(b);
                if (a != b)
                    parent[std::max(a, b)] = std::min(a, b);
            }
        };

        inline auto refine(const SimpleGraph & g, Partition & cells) -> void
        {
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t s = 0 ; s < cells.size() && ! changed ; ++s) {
                    std::uint64_t splitter = 0;
                    for (auto v : cells[s])
                        splitter |= std::uint64_t{ 1 } << v;

                    for (std::size_t c = 0 ; c < cells.size() ; ++c) {
                        if (cells[c].size() == 1)
                            continue;
                        std::vector<std::pair<int, int>> counted;
                        counted.reserve(cells[c].size());
                        for (auto v : cells[c])
                            counted.emplace_back(std::popcount(g.rows[v] & splitter), v);
                        std::stable_sort(counted.begin(), counted.end(),
                                [] (const auto & a, const auto & b) { return a.first < b.first; });
                        if (counted.front().first == counted.back().first)
                            continue;

                        Partition pieces;
                        for (std::size_t i = 0 ; i < counted.size() ; ++i) {
                            if (i == 0 || counted[i].first != counted[i - 1].first)
                                pieces.emplace_back();
                            pieces.back().push_back(counted[i].second);
                        }
                        cells.erase(cells.begin() + c);
                        cells.insert(cells.begin() + c, pieces.begin(), pieces.end());
                        changed = true;
                        break;
                    }
                }
            }
        }

        class LabellingSearch
        {
            private:
                const SimpleGraph & _g;
                CanonicalLabelling & _result;
                std::map<std::vector<std::uint64_t>, std::vector<int>> _seen_codes;
                bool _have_best = false;

                auto orbits_fixing(const std::vector<int> & prefix) -> UnionFind
                {
                    UnionFind uf(_g.n);
                    for (auto & gen : _result.generators) {
                        bool fixes = std::all_of(prefix.begin(), prefix.end(), [&] (int v) { return gen[v] == v; });
                        if (fixes)
                            for (int v = 0 ; v < _g.n ; ++v)
                                uf.unite(v, gen[v]);
                    }
                    return uf;
                }

                auto leaf(const Partition & cells) -> void
                {
                    ++_result.leaves_explored;
                    std::vector<int> lab(_g.n);
                    for (int i = 0 ; i < _g.n ; ++i)
                        lab[cells[i][0]] = i;
                    auto code = permute(_g, lab).rows;

                    auto [it, inserted] = _seen_codes.try_emplace(code, lab);
                    if (! inserted) {
                        // same relabelled graph from a different leaf: lab0^-1 . lab is an automorphism
                        std::vector<int> inverse0(_g.n);
                        for (int v = 0 ; v < _g.n ; ++v)
                            inverse0[it->second[v]] = v;
                        std::vector<int> gen(_g.n);
                        bool identity = true;
                        for (int v = 0 ; v < _g.n ; ++v) {
                            gen[v] = inverse0[lab[v]];
                            identity = identity && gen[v] == v;
                        }
                        if (! identity)
                            _result.generators.push_back(std::move(gen));
                    }

                    if (! _have_best || code < _result.code) {
                        _have_best = true;
                        _result.code = std::move(code);
                        _result.labelling = std::move(lab);
                    }
                }

            public:
                LabellingSearch(const SimpleGraph & g, CanonicalLabelling & result) :
                    _g(g),
                    _result(result)
                {
                }

                auto search(Partition cells, std::vector<int> & prefix) -> void
                {
                    refine(_g, cells);
                    if (int(cells.size()) == _g.n) {
                        leaf(cells);
                        return;
                    }

                    std::size_t target = 0;
                    while (cells[target].size() == 1)
                        ++target;

                    auto candidates = cells[target];
                    std::sort(candidates.begin(), candidates.end());
                    std::vector<int> explored;
                    for (auto v : candidates) {
                        if (! explored.empty()) {
                            auto uf = orbits_fixing(prefix);
                            bool redundant = std::any_of(explored.begin(), explored.end(),
                                    [&] (int w) { return uf.find(w) == uf.find(v); });
                            if (redundant)
                                continue;
                        }

                        Partition child;
                        child.reserve(cells.size() + 1);
                        for (std::size_t c = 0 ; c < cells.size() ; ++c) {
                            if (c == target) {
                                child.push_back({ v });
                                std::vector<int> rest;
                                for (auto w : cells[c])
                                    if (w != v)
                                        rest.push_back(w);
                                child.push_back(std::move(rest));
                            }
                            else
                                child.push_back(cells[c]);
                        }
                        prefix.push_back(v);
                        search(std::move(child), prefix);
                        prefix.pop_back();
                        explored.push_back(v);
                    }
                }
        };
    }

    /**
     * Canonical labelling of an undirected graph by individualisation and refinement.
     * The returned generators generate the full automorphism group.
     */
    inline auto canonical_labelling(const SimpleGraph & g) -> CanonicalLabelling
    {
        CanonicalLabelling result;
        if (g.n == 0)
            return result;

        detail::Partition cells(1);
        for (int v = 0 ; v < g.n ; ++v)
            cells[0].push_back(v);

        detail::LabellingSearch search{ g, result };
        std::vector<int> prefix;
        search.search(std::move(cells), prefix);

        detail::UnionFind uf(g.n);
        for (auto & gen : result.generators)
            for (int v = 0 ; v < g.n ; ++v)
                uf.unite(v, gen[v]);
        result.orbit.resize(g.n);
        for (int v = 0 ; v < g.n ; ++v)
            result.orbit[v] = uf.find(v);
        return result;
    }

    /// Every element of the group generated by gens; throws if it exceeds cap elements.
    inline auto group_elements(int n, const std::vector<std::vector<int>> & gens, std::size_t cap = 5'000'000) -> std::vector<std::vector<int>>
    {
        std::vector<int> identity(n);
        std::iota(identity.begin(), identity.end(), 0);
        std::set<std::vector<int>> seen{ identity };
        std::vector<std::vector<int>> result{ identity };
        for (std::size_t i = 0 ; i < result.size() ; ++i) {
            for (auto & gen : gens) {
                std::vector<int> next(n);
                for (int v = 0 ; v < n ; ++v)
                    next[v] = gen[result[i][v]];
                if (seen.insert(next).second) {
                    result.push_back(std::move(next));
                    if (result.size() > cap)
                        throw BudgetExhausted("automorphism group larger than " + std::to_string(cap));
                }
            }
        }
        return result;
    }

    using CanonicalCode = std::vector<std::uint8_t>;

    namespace detail
    {
        /// Orientation bits after pushing so that every BFS-forest arc points parent to child.
        inline auto normalised_orientation_bits(int n, const std::vector<Arc> & arcs) -> std::vector<bool>
        {
            // arcs are already relabelled; directions looked up by endpoint pair
            std::vector<std::vector<std::pair<int, bool>>> adj(n);
            for (auto & a : arcs) {
                adj[a.tail].emplace_back(a.head, true);
                adj[a.head].emplace_back(a.tail, false);
            }
            for (auto & l : adj)
                std::sort(l.begin(), l.end());

            std::vector<int> push(n, -1), parent(n, -1);
            for (int root = 0 ; root < n ; ++root) {
                if (push[root] != -1)
                    continue;
                push[root] = 0;
                std::deque<int> queue{ root };
                while (! queue.empty()) {
                    int u = queue.front();
                    queue.pop_front();
                    for (auto & [w, out] : adj[u])
                        if (push[w] == -1) {
                            // want u -> w after pushing
                            push[w] = push[u] ^ int(! out);
                            parent[w] = u;
                            queue.push_back(w);
                        }
                }
            }

            std::vector<std::tuple<int, int, bool>> cotree;
            for (auto & a : arcs) {
                if (parent[a.head] == a.tail || parent[a.tail] == a.head)
                    continue;
                bool forward = (a.tail < a.head);
                if (push[a.tail] != push[a.head])
                    forward = ! forward;
                cotree.emplace_back(std::min(a.tail, a.head), std::max(a.tail, a.head), forward);
            }
            std::sort(cotree.begin(), cotree.end());
            std::vector<bool> bits;
            bits.reserve(cotree.size());
            for (auto & [a, b, f] : cotree)
                bits.push_back(f);
            return bits;
        }

        inline auto pack_bits(const std::vector<bool> & bits, CanonicalCode & out) -> void
        {
            std::uint8_t cur = 0;
            int used = 0;
            for (bool b : bits) {
                cur = std::uint8_t((cur << 1) | (b ? 1 : 0));
                if (++used == 8) {
                    out.push_back(cur);
                    cur = 0;
                    used = 0;
                }
            }
            if (used)
                out.push_back(std::uint8_t(cur << (8 - used)));
        }
    }

    /**
     * Byte string that is equal for two oriented graphs exactly when one is isomorphic
     * to a push of the other. Layout: two bytes of vertex count, packed upper-triangle
     * adjacency of the canonical underlying graph, packed co-tree orientation bits.
     */
    inline auto canonical_form(const OrientedGraph & g) -> CanonicalCode
    {
        int n = g.vertex_count();
        auto underlying = underlying_simple_graph(g);
        auto canon = canonical_labelling(underlying);

        CanonicalCode result;
        result.push_back(std::uint8_t(n >> 8));
        result.push_back(std::uint8_t(n & 0xff));
        std::vector<bool> adjacency;
        for (int i = 0 ; i < n ; ++i)
            for (int j = i + 1 ; j < n ; ++j)
                adjacency.push_back(n > 0 && ((canon.code[i] >> j) & 1));
        detail::pack_bits(adjacency, result);

        std::optional<std::vector<bool>> best;
        std::vector<Arc> relabelled(g.arcs().size());
        for (auto & gamma : group_elements(n, canon.generators)) {
            for (std::size_t i = 0 ; i < g.arcs().size() ; ++i) {
                auto & a = g.arcs()[i];
                relabelled[i] = Arc{ canon.labelling[gamma[a.tail]], canon.labelling[gamma[a.head]] };
            }
            auto bits = detail::normalised_orientation_bits(n, relabelled);
            if (! best || bits < *best)
                best = std::move(bits);
        }
        if (best)
            detail::pack_bits(*best, result);
        return result;
    }

    inline auto to_hex(const CanonicalCode & code) -> std::string
    {
        static const char * digits = "0123456789abcdef";
        std::string result;
        result.reserve(2 * code.size());
        for (auto b : code) {
            result.push_back(digits[b >> 4]);
            result.push_back(digits[b & 15]);
        }
        return result;
    }

    inline auto pushably_isomorphic(const OrientedGraph & a, const OrientedGraph & b) -> bool
    {
        return a.vertex_count() == b.vertex_count() && a.arc_count() == b.arc_count()
            && canonical_form(a) == canonical_form(b);
    }
}

#endif
