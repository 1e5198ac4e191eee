/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef PUSHCRIT_GUARD_TESTS_TEST_SUPPORT_HH
#define PUSHCRIT_GUARD_TESTS_TEST_SUPPORT_HH 1

#include <pushcrit/homomorphism.hh>
#include <pushcrit/oriented_graph.hh>

#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace pushcrit::testing
{
    inline auto random_oriented_graph(int n, double p, std::mt19937 & rng) -> OrientedGraph
    {
        std::bernoulli_distribution edge(p), coin(0.5);
        std::vector<Arc> arcs;
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                if (edge(rng))
                    arcs.push_back(coin(rng) ? Arc{ u, v } : Arc{ v, u });
        std::shuffle(arcs.begin(), arcs.end(), rng);
        return OrientedGraph{ n, std::move(arcs) };
    }

    inline auto random_mask(int n, std::mt19937 & rng) -> std::vector<bool>
    {
        std::bernoulli_distribution coin(0.5);
        std::vector<bool> mask(n);
        for (int v = 0 ; v < n ; ++v)
            mask[v] = coin(rng);
        return mask;
    }

    inline auto random_permutation(int n, std::mt19937 & rng) -> std::vector<int>
    {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        return perm;
    }

    inline auto mask_from_bits(int n, unsigned bits) -> std::vector<bool>
    {
        std::vector<bool> mask(n);
        for (int v = 0 ; v < n ; ++v)
            mask[v] = (bits >> v) & 1;
        return mask;
    }

    /// Plain homomorphism by trying every map; only for tiny inputs.
    inline auto brute_force_homomorphism(const OrientedGraph & g, const OrientedGraph & h) -> bool
    {
        int n = g.vertex_count(), k = h.vertex_count();
        std::vector<int> map(n, 0);
        while (true) {
            bool ok = true;
            for (auto & a : g.arcs())
                if (! h.has_arc(map[a.tail], map[a.head])) {
                    ok = false;
                    break;
                }
            if (ok)
                return true;
            int i = 0;
            while (i < n && ++map[i] == k)
                map[i++] = 0;
            if (i == n)
                return false;
        }
    }

    /// Some push set S makes push(g, S) homomorphic to h, by trying all 2^n sets.
    inline auto brute_force_pushable(const OrientedGraph & g, const OrientedGraph & h) -> bool
    {
        int n = g.vertex_count();
        for (unsigned bits = 0 ; bits < (1u << n) ; ++bits)
            if (find_homomorphism(push_vertices(g, mask_from_bits(n, bits)), h))
                return true;
        return false;
    }

    /**
     * For every orientation of a k-arc path with the given forward parity and every colour at
     * x, the offsets y can take, found by trying every push of the internal vertices and every
     * colouring of them. Empty if two such paths disagree.
     */
    inline auto table_row_oracle(int k, bool odd) -> std::optional<std::set<int>>
    {
        std::optional<std::set<int>> row;
        for (unsigned orient = 0 ; orient < (1u << k) ; ++orient) {
            if (std::popcount(orient) % 2 != int(odd))
                continue;
            for (int start = 0 ; start < 3 ; ++start) {
                std::set<int> offsets;
                for (unsigned pushed = 0 ; pushed < (1u << (k - 1)) ; ++pushed) {
                    int colourings = 1;
                    for (int i = 0 ; i < k - 1 ; ++i)
                        colourings *= 3;
                    for (int code = 0 ; code < colourings ; ++code) {
                        // vertex i on the path: 0 is x, k is y, 1..k-1 internal
                        std::vector<int> colour(k + 1), push(k + 1, 0);
                        colour[0] = start;
                        for (int i = 1, c = code ; i < k ; ++i, c /= 3) {
                            colour[i] = c % 3;
                            push[i] = (pushed >> (i - 1)) & 1;
                        }
                        for (int end = 0 ; end < 3 ; ++end) {
                            colour[k] = end;
                            bool ok = true;
                            for (int i = 0 ; i < k && ok ; ++i) {
                                bool forward = (orient >> i) & 1;
                                if (push[i] != push[i + 1])
                                    forward = ! forward;
                                int t = forward ? i : i + 1, h = forward ? i + 1 : i;
                                ok = (colour[t] + 1) % 3 == colour[h];
                            }
                            if (ok)
                                offsets.insert((end - start + 3) % 3);
                        }
                    }
                }
                if (! row)
                    row = offsets;
                else if (*row != offsets)
                    return std::nullopt;
            }
        }
        return row;
    }
}

#endif
