/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <pushcrit/criticality.hh>
#include <pushcrit/enumeration.hh>
#include <pushcrit/fixtures.hh>

#include "test_support.hh"

#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include <unistd.h>

using namespace pushcrit;

namespace
{
    /// Smallest upper-triangle bit string over all relabellings: a slow isomorphism invariant.
    auto brute_force_code(const SimpleGraph & g) -> std::uint64_t
    {
        std::vector<int> perm(g.n);
        std::iota(perm.begin(), perm.end(), 0);
        std::uint64_t best = ~std::uint64_t{ 0 };
        do {
            std::uint64_t code = 0;
            int bit = 0;
            for (int a = 0 ; a < g.n ; ++a)
                for (int b = a + 1 ; b < g.n ; ++b, ++bit)
                    if (g.has_edge(perm[a], perm[b]))
                        code |= std::uint64_t{ 1 } << bit;
            best = std::min(best, code);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    /// Isomorphism classes of connected graphs with the given minimum degree, from every edge set.
    auto brute_force_count(int n, int min_degree) -> std::size_t
    {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0 ; a < n ; ++a)
            for (int b = a + 1 ; b < n ; ++b)
                pairs.emplace_back(a, b);
        std::set<std::uint64_t> classes;
        for (std::uint64_t set = 0 ; set < (std::uint64_t{ 1 } << pairs.size()) ; ++set) {
            SimpleGraph g(n);
            for (std::size_t i = 0 ; i < pairs.size() ; ++i)
                if ((set >> i) & 1)
                    g.add_edge(pairs[i].first, pairs[i].second);
            bool ok = is_connected(g);
            for (int v = 0 ; v < n && ok ; ++v)
                ok = g.degree(v) >= min_degree;
            if (ok)
                classes.insert(brute_force_code(g));
        }
        return classes.size();
    }

    auto cycle(int n) -> SimpleGraph
    {
        SimpleGraph g(n);
        for (int i = 0 ; i < n ; ++i)
            g.add_edge(i, (i + 1) % n);
        return g;
    }

    auto complete(int n) -> SimpleGraph
    {
        SimpleGraph g(n);
        for (int a = 0 ; a < n ; ++a)
            for (int b = a + 1 ; b < n ; ++b)
                g.add_edge(a, b);
        return g;
    }

    auto orientations(const SimpleGraph & u) -> std::vector<OrientedGraph>
    {
        std::vector<OrientedGraph> result;
        enumerate_orientations_mod_push(u, [&] (const OrientedGraph & g) { result.push_back(g); });
        return result;
    }
}

TEST(Underlying, SmallCounts)
{
    auto three = enumerate_underlying(3, 2);
    ASSERT_EQ(three.size(), 1u);
    EXPECT_EQ(three[0].edge_count(), 3);

    auto four = enumerate_underlying(4, 2);
    std::multiset<int> edges;
    for (auto & g : four)
        edges.insert(g.edge_count());
    EXPECT_EQ(edges, (std::multiset<int>{ 4, 5, 6 }));
}

TEST(Underlying, MatchesEdgeSetBruteForce)
{
    for (int n = 1 ; n <= 6 ; ++n)
        for (int d : { 0, 1, 2 })
            EXPECT_EQ(enumerate_underlying(n, d).size(), brute_force_count(n, d)) << "n=" << n << " d=" << d;
}

TEST(Underlying, ConnectedGraphCounts)
{
    std::vector<std::size_t> expected{ 1, 1, 2, 6, 21, 112, 853 };
    for (int n = 1 ; n <= 7 ; ++n)
        EXPECT_EQ(enumerate_underlying(n, 0).size(), expected[n - 1]) << n;
}

TEST(Underlying, NoDuplicates)
{
    std::set<std::vector<std::uint64_t>> codes;
    auto all = enumerate_underlying(7, 2);
    for (auto & g : all)
        codes.insert(canonical_labelling(g).code);
    EXPECT_EQ(codes.size(), all.size());
}

TEST(Orientations, Examples)
{
    auto c4 = orientations(cycle(4));
    ASSERT_EQ(c4.size(), 2u);
    EXPECT_NE(canonical_form(c4[0]), canonical_form(c4[1]));

    SimpleGraph tree(5);
    tree.add_edge(0, 1);
    tree.add_edge(1, 2);
    tree.add_edge(1, 3);
    tree.add_edge(3, 4);
    EXPECT_EQ(orientations(tree).size(), 1u);
    // the two labelled classes of a triangle are mirror images of each other
    EXPECT_EQ(orientations(complete(3)).size(), 2u);
    EXPECT_EQ(orientation_classes(complete(3)).size(), 1u);
    EXPECT_EQ(orientation_classes(cycle(4)).size(), 2u);
}

TEST(Orientations, OnePerPushClass)
{
    std::mt19937 rng(51);
    for (int trial = 0 ; trial < 40 ; ++trial) {
        auto g = underlying_simple_graph(pushcrit::testing::random_oriented_graph(3 + trial % 5, 0.5, rng));
        if (! is_connected(g))
            continue;
        auto all = orientations(g);
        EXPECT_EQ(all.size(), std::size_t{ 1 } << (g.edge_count() - g.n + 1));
        for (std::size_t i = 0 ; i < all.size() ; ++i)
            for (std::size_t j = i + 1 ; j < all.size() ; ++j)
                EXPECT_FALSE(is_push_equivalent(all[i], all[j]));
    }
}

TEST(Orientations, ClassesCoverEveryOrientation)
{
    // every one of the 2^m orientations of K4 is pushably isomorphic to a listed class
    auto k4 = complete(4);
    auto classes = orientation_classes(k4);
    std::set<CanonicalCode> codes;
    for (auto & c : classes)
        codes.insert(canonical_form(c));
    auto edges = k4.edges();
    for (unsigned bits = 0 ; bits < 64 ; ++bits) {
        std::vector<Arc> arcs;
        for (std::size_t i = 0 ; i < edges.size() ; ++i)
            arcs.push_back((bits >> i) & 1 ? Arc{ edges[i].first, edges[i].second } : Arc{ edges[i].second, edges[i].first });
        EXPECT_TRUE(codes.contains(canonical_form(OrientedGraph{ 4, arcs })));
    }
}

TEST(FindCritical, UpToFour)
{
    auto result = find_critical(4);
    bool minus_four = false;
    for (auto & r : result.records) {
        if (r.exception == "C-4")
            minus_four = true;
        else
            EXPECT_TRUE(r.satisfies_bound) << r.canonical_code;
    }
    EXPECT_TRUE(minus_four);
    EXPECT_TRUE(verify_density_bound(result.records).pass);
}

TEST(FindCritical, UpToThreeHasNoViolations)
{
    auto result = find_critical(3);
    for (auto & r : result.records)
        EXPECT_TRUE(r.satisfies_bound);
}

TEST(FindCritical, RecordsAreUniqueAndReverify)
{
    auto result = find_critical(6);
    std::set<std::string> codes;
    for (auto & r : result.records) {
        EXPECT_TRUE(codes.insert(r.canonical_code).second);
        OrientedGraph g{ r.n, r.arcs };
        EXPECT_EQ(to_hex(canonical_form(g)), r.canonical_code);
        auto report = is_pushably_k_critical(g, 3);
        EXPECT_EQ(report.verdict, Verdict::critical);
        EXPECT_TRUE(report_verifies(g, report));
    }
}

TEST(FindCritical, PrunesLoseNothing)
{
    for (int n = 3 ; n <= 6 ; ++n)
        for (auto & u : enumerate_underlying(n, 2)) {
            auto with = critical_orientations(u, true);
            if (with.pruned == PruneReason::none)
                continue;
            EXPECT_TRUE(critical_orientations(u, false).critical.empty());
        }
}

TEST(FindCritical, LowDegreeVerticesNeverCritical)
{
    // graphs with a vertex of degree at most one are skipped by the enumerator
    for (int n = 3 ; n <= 6 ; ++n)
        for (auto & u : enumerate_underlying(n, 1)) {
            bool low = false;
            for (int v = 0 ; v < n ; ++v)
                low = low || u.degree(v) < 2;
            if (low) {
                EXPECT_TRUE(critical_orientations(u, false).critical.empty());
            }
        }
}

TEST(FindCritical, RandomPruneAudit)
{
    std::mt19937 rng(52);
    int audited = 0;
    auto sevens = enumerate_underlying(7, 2);
    std::shuffle(sevens.begin(), sevens.end(), rng);
    for (auto & u : sevens) {
        if (prune_reason(u) == PruneReason::none)
            continue;
        auto all = orientations(u);
        for (int pick = 0 ; pick < 3 ; ++pick) {
            auto & g = all[rng() % all.size()];
            EXPECT_NE(is_pushably_k_critical(g, 3).verdict, Verdict::critical);
        }
        if (++audited == 60)
            break;
    }
    EXPECT_EQ(audited, 60);
}

TEST(DensityBound, Violators)
{
    EnumerationRecord fake;
    fake.n = 4;
    fake.m = 4;
    fake.satisfies_bound = satisfies_density_bound(4, 4);
    auto report = verify_density_bound({ fake });
    EXPECT_FALSE(report.pass);
    EXPECT_EQ(report.violators.size(), 1u);

    auto e1 = make_record(fixture_e1(), true);
    EXPECT_EQ(e1.exception, "E1");
    EXPECT_FALSE(e1.satisfies_bound);
    auto ok = verify_density_bound({ e1 });
    EXPECT_TRUE(ok.pass);
    EXPECT_EQ(ok.via_exception, 1u);
}

TEST(Shards, ResumeGivesTheSameRecords)
{
    auto dir = std::filesystem::temp_directory_path() / ("pushcrit-shards-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);

    auto fresh = find_critical(6);

    EnumerationOptions interrupted;
    interrupted.shard_dir = dir;
    interrupted.checkpoint_every = 1;
    interrupted.max_seconds = 0.0;
    EXPECT_THROW(find_critical(6, interrupted), BudgetExhausted);
    EXPECT_TRUE(std::filesystem::exists(dir / "3" / "CURSOR"));

    EnumerationOptions resumed;
    resumed.shard_dir = dir;
    resumed.resume = true;
    resumed.jobs = 3;
    auto again = find_critical(6, resumed);
    EXPECT_EQ(again.records, fresh.records);

    auto reread = find_critical(6, resumed);
    EXPECT_EQ(reread.records, fresh.records);
    std::filesystem::remove_all(dir);
}
