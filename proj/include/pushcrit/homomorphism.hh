/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef PUSHCRIT_GUARD_HOMOMORPHISM_HH
#define PUSHCRIT_GUARD_HOMOMORPHISM_HH 1

#include <pushcrit/canonical.hh>
#include <pushcrit/errors.hh>
#include <pushcrit/oriented_graph.hh>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pushcrit
{
    /// Node budget and cooperative cancellation for long searches. Zero means no budget.
    struct SearchLimits
    {
        std::uint64_t max_nodes = 0;
        const std::atomic<bool> * cancel = nullptr;
    };

    struct SearchStats
    {
        std::uint64_t nodes = 0;
    };

    struct ColoringCertificate
    {
        PushSet push_set;
        std::vector<int> mapping;
    };

    /// One-pass check that mapping is a homomorphism from push(g, push_set) to h.
    inline auto verify_certificate(const OrientedGraph & g, const OrientedGraph & h, const ColoringCertificate & cert) -> bool
    {
        if (int(cert.mapping.size()) != g.vertex_count())
            return false;
        for (auto v : cert.push_set.members())
            if (v < 0 || v >= g.vertex_count())
                return false;
        for (auto c : cert.mapping)
            if (c < 0 || c >= h.vertex_count())
                return false;

        std::vector<std::vector<bool>> arc(h.vertex_count(), std::vector<bool>(h.vertex_count(), false));
        for (auto & a : h.arcs())
            arc[a.tail][a.head] = true;

        auto mask = cert.push_set.as_mask(g.vertex_count());
        for (auto & a : g.arcs()) {
            int t = a.tail, hd = a.head;
            if (mask[t] != mask[hd])
                std::swap(t, hd);
            if (! arc[cert.mapping[t]][cert.mapping[hd]])
                return false;
        }
        return true;
    }

    namespace detail
    {
        /**
         * Backtracking homomorphism search into a target of at most 64 vertices, with
         * candidate sets as bitmasks and forward checking along arcs.
         */
        class HomomorphismSearch
        {
            private:
                const OrientedGraph & _g;
                int _n, _targets;
                std::vector<std::uint64_t> _out_mask, _in_mask;
                std::vector<int> _component;
                std::vector<int> _assigned_in_component;
                std::uint64_t _symmetry_mask;
                SearchLimits _limits;
                SearchStats & _stats;
                std::vector<int> _assignment;

                auto tick() -> void
                {
                    ++_stats.nodes;
                    if (_limits.max_nodes && _stats.nodes > _limits.max_nodes)
                        throw BudgetExhausted("homomorphism search exceeded " + std::to_string(_limits.max_nodes) + " nodes");
                    if (_limits.cancel && (_stats.nodes & 1023) == 1 && _limits.cancel->load(std::memory_order_relaxed))
                        throw BudgetExhausted("homomorphism search cancelled");
                }

                auto choose(const std::vector<std::uint64_t> & domains) -> int
                {
                    int best = -1, best_size = 0, best_degree = 0;
                    for (int v = 0 ; v < _n ; ++v) {
                        if (_assignment[v] != -1)
                            continue;
                        int size = std::popcount(domains[v]), degree = _g.degree(v);
                        if (best == -1 || size < best_size || (size == best_size && degree > best_degree)) {
                            best = v;
                            best_size = size;
                            best_degree = degree;
                        }
                    }
                    return best;
                }

                auto solve(std::vector<std::uint64_t> & domains, int remaining) -> bool
                {
                    if (remaining == 0)
                        return true;

                    int v = choose(domains);
                    auto candidates = domains[v];
                    if (_assigned_in_component[_component[v]] == 0)
                        candidates &= _symmetry_mask;

                    ++_assigned_in_component[_component[v]];
                    std::vector<std::uint64_t> saved;
                    while (candidates) {
                        int c = std::countr_zero(candidates);
                        candidates &= candidates - 1;
                        tick();

                        saved = domains;
                        bool ok = true;
                        for (auto & nb : _g.neighbours(v)) {
                            if (_assignment[nb.vertex] != -1)
                                continue;
                            domains[nb.vertex] &= nb.out ? _out_mask[c] : _in_mask[c];
                            if (! domains[nb.vertex]) {
                                ok = false;
                                break;
                            }
                        }
                        if (ok) {
                            _assignment[v] = c;
                            domains[v] = std::uint64_t{ 1 } << c;
                            if (solve(domains, remaining - 1))
                                return true;
                            _assignment[v] = -1;
                        }
                        domains = saved;
                    }
                    --_assigned_in_component[_component[v]];
                    return false;
                }

            public:
                HomomorphismSearch(const OrientedGraph & g, const OrientedGraph & h, std::uint64_t symmetry_mask,
                        SearchLimits limits, SearchStats & stats) :
                    _g(g),
                    _n(g.vertex_count()),
                    _targets(h.vertex_count()),
                    _out_mask(h.vertex_count(), 0),
                    _in_mask(h.vertex_count(), 0),
                    _component(g.vertex_count(), 0),
                    _symmetry_mask(symmetry_mask),
                    _limits(limits),
                    _stats(stats),
                    _assignment(g.vertex_count(), -1)
                {
                    if (_targets > 64)
                        throw ConfigurationError("homomorphism targets are limited to 64 vertices");
                    for (auto & a : h.arcs()) {
                        _out_mask[a.tail] |= std::uint64_t{ 1 } << a.head;
                        _in_mask[a.head] |= std::uint64_t{ 1 } << a.tail;
                    }
                    auto comps = connected_components(g);
                    for (std::size_t i = 0 ; i < comps.size() ; ++i)
                        for (auto v : comps[i])
                            _component[v] = int(i);
                    _assigned_in_component.assign(comps.size(), 0);
                }

                auto run(std::vector<std::uint64_t> domains) -> std::optional<std::vector<int>>
                {
                    for (auto d : domains)
                        if (! d)
                            return std::nullopt;
                    if (solve(domains, _n))
                        return _assignment;
                    return std::nullopt;
                }
        };

        inline auto full_mask(int k) -> std::uint64_t
        {
            return k >= 64 ? ~std::uint64_t{ 0 } : (std::uint64_t{ 1 } << k) - 1;
        }

        /// Searches for an automorphism of h sending u to v.
        inline auto automorphism_maps(const OrientedGraph & h, int u, int v) -> bool
        {
            int n = h.vertex_count();
            std::vector<std::vector<int>> rel(n, std::vector<int>(n, 0));
            for (auto & a : h.arcs()) {
                rel[a.tail][a.head] = 1;
                rel[a.head][a.tail] = -1;
            }
            std::vector<int> image(n, -1);
            std::vector<bool> used(n, false);
            std::function<bool (int)> extend = [&] (int x) -> bool {
                if (x == n)
                    return true;
                if (x == u)
                    return extend(x + 1);
                for (int c = 0 ; c < n ; ++c) {
                    if (used[c] || h.degree(c) != h.degree(x))
                        continue;
                    bool ok = true;
                    for (int y = 0 ; y < x && ok ; ++y)
                        if (image[y] != -1 && rel[x][y] != rel[c][image[y]])
                            ok = false;
                    if (ok && image[u] != -1 && rel[x][u] != rel[c][image[u]])
                        ok = false;
                    if (! ok)
                        continue;
                    image[x] = c;
                    used[c] = true;
                    if (extend(x + 1))
                        return true;
                    image[x] = -1;
                    used[c] = false;
                }
                return false;
            };
            if (h.degree(u) != h.degree(v))
                return false;
            image[u] = v;
            used[v] = true;
            return extend(0);
        }

        /// Mask holding one vertex from each automorphism orbit of h.
        inline auto compute_orbit_representatives(const OrientedGraph & h) -> std::uint64_t
        {
            int n = h.vertex_count();
            std::vector<int> rep(n, -1);
            std::uint64_t mask = 0;
            for (int v = 0 ; v < n ; ++v) {
                if (rep[v] != -1)
                    continue;
                rep[v] = v;
                mask |= std::uint64_t{ 1 } << v;
                for (int w = v + 1 ; w < n ; ++w)
                    if (rep[w] == -1 && automorphism_maps(h, v, w))
                        rep[w] = v;
            }
            return mask;
        }

        inline auto orbit_representatives(const OrientedGraph & h) -> std::uint64_t
        {
            thread_local std::map<std::pair<int, std::vector<Arc>>, std::uint64_t> cache;
            std::pair<int, std::vector<Arc>> key{ h.vertex_count(), h.sorted_arcs() };
            auto it = cache.find(key);
            if (it == cache.end())
                it = cache.emplace(std::move(key), compute_orbit_representatives(h)).first;
            return it->second;
        }

        inline auto cached_anti_twin(const OrientedGraph & h) -> const OrientedGraph &
        {
            thread_local std::map<std::pair<int, std::vector<Arc>>, OrientedGraph> cache;
            std::pair<int, std::vector<Arc>> key{ h.vertex_count(), h.sorted_arcs() };
            auto it = cache.find(key);
            if (it == cache.end())
                it = cache.emplace(std::move(key), anti_twin(h)).first;
            return it->second;
        }
    }

    /**
     * Arc-preserving map from g to h, or nullopt. If domains is given, vertex v may only
     * map into the set bits of domains[v].
     */
    inline auto find_homomorphism(const OrientedGraph & g, const OrientedGraph & h,
            const std::optional<std::vector<std::uint64_t>> & domains = std::nullopt,
            SearchLimits limits = { }, SearchStats * stats = nullptr) -> std::optional<std::vector<int>>
    {
        SearchStats local;
        auto & st = stats ? *stats : local;
        if (h.vertex_count() == 0)
            return g.vertex_count() == 0 ? std::optional<std::vector<int>>{ std::vector<int>{ } } : std::nullopt;

        auto everything = detail::full_mask(h.vertex_count());
        // symmetry breaking is only sound when nothing is pre-restricted
        std::uint64_t symmetry = domains ? everything : detail::orbit_representatives(h);
        detail::HomomorphismSearch search{ g, h, symmetry, limits, st };
        return search.run(domains ? *domains : std::vector<std::uint64_t>(g.vertex_count(), everything));
    }

    namespace detail
    {
        inline auto decode_anti_twin(int target_n, const std::vector<int> & map) -> ColoringCertificate
        {
            ColoringCertificate cert;
            std::vector<int> pushed;
            cert.mapping.resize(map.size());
            for (std::size_t v = 0 ; v < map.size() ; ++v) {
                if (map[v] >= target_n)
                    pushed.push_back(int(v));
                cert.mapping[v] = map[v] % target_n;
            }
            cert.push_set = PushSet{ std::move(pushed) };
            return cert;
        }
    }

    /// A push set and homomorphism from g to h, found as a homomorphism into anti_twin(h).
    inline auto find_pushable_homomorphism(const OrientedGraph & g, const OrientedGraph & h,
            SearchLimits limits = { }, SearchStats * stats = nullptr) -> std::optional<ColoringCertificate>
    {
        if (2 * h.vertex_count() > 64)
            throw ConfigurationError("pushable homomorphism targets are limited to 32 vertices");
        auto & at = detail::cached_anti_twin(h);
        auto map = find_homomorphism(g, at, std::nullopt, limits, stats);
        if (! map)
            return std::nullopt;
        return detail::decode_anti_twin(h.vertex_count(), *map);
    }

    inline auto directed_cycle(int k, std::optional<std::string> name = std::nullopt) -> OrientedGraph
    {
        std::vector<Arc> arcs;
        for (int i = 0 ; i < k ; ++i)
            arcs.push_back(Arc{ i, (i + 1) % k });
        return OrientedGraph{ k, std::move(arcs), std::move(name) };
    }

    /// Directed triangle with arcs i -> i + 1 mod 3: the colour target for pushable 3-colouring.
    inline auto c3() -> const OrientedGraph &
    {
        static const OrientedGraph graph = directed_cycle(3, "C3");
        return graph;
    }

    /// Colours are 0..2 for colored vertices and -1 for the uncoloured set X.
    struct PartialColoring
    {
        std::vector<int> color;

        [[nodiscard]] auto uncoloured() const -> std::vector<int>
        {
            std::vector<int> result;
            for (int v = 0 ; v < int(color.size()) ; ++v)
                if (color[v] == -1)
                    result.push_back(v);
            return result;
        }
    };

    enum class ExtensionRoute
    {
        anti_twin,
        direct
    };

    namespace detail
    {
        inline auto extend_via_anti_twin(const OrientedGraph & g, const PartialColoring & pc, SearchLimits limits, SearchStats * stats)
            -> std::optional<ColoringCertificate>
        {
            std::vector<std::uint64_t> domains(g.vertex_count(), full_mask(6));
            for (int v = 0 ; v < g.vertex_count() ; ++v)
                if (pc.color[v] != -1)
                    domains[v] = std::uint64_t{ 1 } << pc.color[v];
            static const OrientedGraph at = anti_twin(c3());
            auto map = find_homomorphism(g, at, domains, limits, stats);
            if (! map)
                return std::nullopt;
            return decode_anti_twin(3, *map);
        }

        /// Plain backtracking over (push bit, colour) for each uncoloured vertex.
        inline auto extend_directly(const OrientedGraph & g, const PartialColoring & pc, SearchLimits limits, SearchStats * stats)
            -> std::optional<ColoringCertificate>
        {
            int n = g.vertex_count();
            SearchStats local;
            auto & st = stats ? *stats : local;
            std::vector<int> colour = pc.color, push(n, 0);

            auto arc_ok = [&] (int t, int h) {
                if (push[t] != push[h])
                    std::swap(t, h);
                return (colour[t] + 1) % 3 == colour[h];
            };

            for (auto & a : g.arcs())
                if (colour[a.tail] != -1 && colour[a.head] != -1 && ! arc_ok(a.tail, a.head))
                    return std::nullopt;

            auto order = pc.uncoloured();
            std::function<bool (std::size_t)> go = [&] (std::size_t i) -> bool {
                if (i == order.size())
                    return true;
                int v = order[i];
                for (int p = 0 ; p < 2 ; ++p)
                    for (int c = 0 ; c < 3 ; ++c) {
                        ++st.nodes;
                        if (limits.max_nodes && st.nodes > limits.max_nodes)
                            throw BudgetExhausted("extension search exceeded " + std::to_string(limits.max_nodes) + " nodes");
                        push[v] = p;
                        colour[v] = c;
                        bool ok = true;
                        for (auto & nb : g.neighbours(v)) {
                            if (colour[nb.vertex] == -1)
                                continue;
                            if (! (nb.out ? arc_ok(v, nb.vertex) : arc_ok(nb.vertex, v))) {
                                ok = false;
                                break;
                            }
                        }
                        if (ok && go(i + 1))
                            return true;
                    }
                colour[v] = -1;
                push[v] = 0;
                return false;
            };

            if (! go(0))
                return std::nullopt;
            ColoringCertificate cert;
            std::vector<int> pushed;
            for (int v = 0 ; v < n ; ++v)
                if (push[v])
                    pushed.push_back(v);
            cert.push_set = PushSet{ std::move(pushed) };
            cert.mapping = colour;
            return cert;
        }
    }

    /**
     * Extends a partial colouring into C3 by pushing only uncoloured vertices. Colored
     * vertices are never pushed.
     */
    inline auto extend_partial(const OrientedGraph & g, const PartialColoring & pc,
            ExtensionRoute route = ExtensionRoute::anti_twin, SearchLimits limits = { }, SearchStats * stats = nullptr)
        -> std::optional<ColoringCertificate>
    {
        if (int(pc.color.size()) != g.vertex_count())
            throw PreconditionError("partial colouring does not cover the vertex set");
        for (auto c : pc.color)
            if (c < -1 || c > 2)
                throw PreconditionError("colours must be 0, 1, 2 or -1 for uncoloured");
        if (route == ExtensionRoute::direct)
            return detail::extend_directly(g, pc, limits, stats);
        return detail::extend_via_anti_twin(g, pc, limits, stats);
    }

    /// Pushable homomorphism to C3, the workhorse of every 3-colouring question.
    inline auto pushable_3_coloring(const OrientedGraph & g, SearchLimits limits = { }, SearchStats * stats = nullptr)
        -> std::optional<ColoringCertificate>
    {
        return find_pushable_homomorphism(g, c3(), limits, stats);
    }

    struct PathColorSets
    {
        std::vector<int> allowed;       // offsets from the colour at x
        std::vector<int> forbidden;
    };

    /// The path x = 0, 1, ..., k = y with k arcs, an even or odd number of them pointing towards y.
    inline auto parity_path(int k, bool odd) -> OrientedGraph
    {
        std::vector<Arc> arcs;
        for (int i = 0 ; i < k ; ++i)
            arcs.push_back(Arc{ i, i + 1 });
        if ((k % 2 == 1) != odd)
            arcs[0] = Arc{ 1, 0 };
        return OrientedGraph{ k + 1, std::move(arcs) };
    }

    /**
     * Which colours y can take, relative to colour 0 at x, on a path with k arcs of the given
     * forward-arc parity, after pushing internal vertices and extending.
     */
    inline auto path_color_sets(int k, bool odd) -> PathColorSets
    {
        if (k < 1)
            throw PreconditionError("path needs at least one arc");
        auto path = parity_path(k, odd);
        PathColorSets result;
        for (int c = 0 ; c < 3 ; ++c) {
            PartialColoring pc{ std::vector<int>(k + 1, -1) };
            pc.color[0] = 0;
            pc.color[k] = c;
            (extend_partial(path, pc) ? result.allowed : result.forbidden).push_back(c);
        }
        return result;
    }

    namespace detail
    {
        inline auto tournament_from_bits(int k, std::uint32_t bits) -> OrientedGraph
        {
            std::vector<Arc> arcs;
            int i = 0;
            for (int a = 0 ; a < k ; ++a)
                for (int b = a + 1 ; b < k ; ++b, ++i)
                    arcs.push_back((bits >> i) & 1 ? Arc{ b, a } : Arc{ a, b });
            return OrientedGraph{ k, std::move(arcs) };
        }

        /// Smallest arc bit string over all vertex permutations: a plain isomorphism invariant.
        inline auto tournament_iso_code(int k, std::uint32_t bits) -> std::uint32_t
        {
            std::vector<std::vector<int>> beats(k, std::vector<int>(k, 0));
            int i = 0;
            for (int a = 0 ; a < k ; ++a)
                for (int b = a + 1 ; b < k ; ++b, ++i) {
                    bool reversed = (bits >> i) & 1;
                    beats[reversed ? b : a][reversed ? a : b] = 1;
                }
            std::vector<int> perm(k);
            std::iota(perm.begin(), perm.end(), 0);
            std::uint32_t best = ~0u;
            do {
                std::uint32_t code = 0;
                int j = 0;
                for (int a = 0 ; a < k ; ++a)
                    for (int b = a + 1 ; b < k ; ++b, ++j)
                        if (beats[perm[b]][perm[a]])
                            code |= 1u << j;
                best = std::min(best, code);
            } while (std::next_permutation(perm.begin(), perm.end()));
            return best;
        }
    }

    /**
     * One tournament on k vertices per class, where classes are isomorphism classes or,
     * with up_to_push, pushable isomorphism classes. k is at most 6.
     */
    inline auto tournament_classes(int k, bool up_to_push) -> const std::vector<OrientedGraph> &
    {
        if (k < 1 || k > 6)
            throw ConfigurationError("tournament targets are supported for 1 to 6 vertices");
        static std::recursive_mutex lock;
        static std::map<std::pair<int, bool>, std::vector<OrientedGraph>> cache;
        std::lock_guard<std::recursive_mutex> guard(lock);
        auto it = cache.find({ k, up_to_push });
        if (it != cache.end())
            return it->second;

        std::vector<OrientedGraph> reps;
        std::uint32_t patterns = std::uint32_t{ 1 } << (k * (k - 1) / 2);
        if (up_to_push) {
            // isomorphic tournaments are pushably isomorphic, so refine the plain classes
            std::set<CanonicalCode> seen;
            for (auto & t : tournament_classes(k, false))
                if (seen.insert(canonical_form(t)).second)
                    reps.push_back(t);
        }
        else {
            std::set<std::uint32_t> seen;
            for (std::uint32_t bits = 0 ; bits < patterns ; ++bits) {
                auto code = detail::tournament_iso_code(k, bits);
                if (seen.insert(code).second)
                    reps.push_back(detail::tournament_from_bits(k, code));
            }
        }
        return cache.emplace(std::pair{ k, up_to_push }, std::move(reps)).first->second;
    }

    struct TargetedCertificate
    {
        OrientedGraph target;
        ColoringCertificate certificate;
    };

    /// A pushable homomorphism to some tournament on k vertices, if there is one.
    inline auto pushably_k_colorable(const OrientedGraph & g, int k, SearchLimits limits = { }, SearchStats * stats = nullptr)
        -> std::optional<TargetedCertificate>
    {
        for (auto & t : tournament_classes(k, true))
            if (auto cert = find_pushable_homomorphism(g, t, limits, stats))
                return TargetedCertificate{ t, *cert };
        return std::nullopt;
    }

    /// A homomorphism to some tournament on k vertices, if there is one.
    inline auto oriented_k_colorable(const OrientedGraph & g, int k, SearchLimits limits = { }, SearchStats * stats = nullptr)
        -> std::optional<TargetedCertificate>
    {
        for (auto & t : tournament_classes(k, false))
            if (auto map = find_homomorphism(g, t, std::nullopt, limits, stats))
                return TargetedCertificate{ t, ColoringCertificate{ PushSet{ }, *map } };
        return std::nullopt;
    }

    inline auto pushable_chromatic_number(const OrientedGraph & g, int k_max, SearchLimits limits = { }) -> std::optional<int>
    {
        if (k_max < 1 || k_max > 6)
            throw ConfigurationError("k_max must lie in 1..6");
        for (int k = 1 ; k <= k_max ; ++k)
            if (pushably_k_colorable(g, k, limits))
                return k;
        return std::nullopt;
    }

    inline auto oriented_chromatic_number(const OrientedGraph & g, int k_max, SearchLimits limits = { }) -> std::optional<int>
    {
        if (k_max < 1 || k_max > 6)
            throw ConfigurationError("k_max must lie in 1..6");
        for (int k = 1 ; k <= k_max ; ++k)
            if (oriented_k_colorable(g, k, limits))
                return k;
        return std::nullopt;
    }
}

#endif
