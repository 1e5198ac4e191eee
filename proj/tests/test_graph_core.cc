/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <pushcrit/canonical.hh>
#include <pushcrit/fixtures.hh>
#include <pushcrit/graph_io.hh>
#include <pushcrit/oriented_graph.hh>
#include <pushcrit/structure.hh>

#include "test_support.hh"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace pushcrit;
using pushcrit::testing::mask_from_bits;
using pushcrit::testing::random_mask;
using pushcrit::testing::random_oriented_graph;
using pushcrit::testing::random_permutation;

namespace
{
    auto transitive_triangle() -> OrientedGraph
    {
        return OrientedGraph{ 3, { { 1, 0 }, { 1, 2 }, { 0, 2 } } };
    }

    /// Forward arcs along the cycle 0, 1, ..., n-1, 0, modulo 2.
    auto cycle_parity(const OrientedGraph & g) -> int
    {
        int n = g.vertex_count(), forward = 0;
        for (int i = 0 ; i < n ; ++i)
            forward += g.has_arc(i, (i + 1) % n);
        return forward % 2;
    }

    auto brute_force_push_equivalent(const OrientedGraph & g, const OrientedGraph & h) -> bool
    {
        int n = g.vertex_count();
        for (unsigned bits = 0 ; bits < (1u << n) ; ++bits)
            if (push_vertices(g, mask_from_bits(n, bits)) == h)
                return true;
        return false;
    }

    /// Isomorphic to a push of each other, trying every permutation and push set.
    auto brute_force_pushably_isomorphic(const OrientedGraph & g, const OrientedGraph & h) -> bool
    {
        int n = g.vertex_count();
        if (n != h.vertex_count() || g.arc_count() != h.arc_count())
            return false;
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            auto moved = relabel(g, perm);
            if (underlying_edges(moved) == underlying_edges(h) && brute_force_push_equivalent(moved, h))
                return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    }

    auto brute_force_mad(const OrientedGraph & g) -> Rational
    {
        int n = g.vertex_count();
        Rational best{ 0 };
        for (unsigned s = 1 ; s < (1u << n) ; ++s) {
            int inside = 0;
            for (auto & a : g.arcs())
                inside += ((s >> a.tail) & 1) && ((s >> a.head) & 1);
            best = std::max(best, Rational{ 2 * inside, std::popcount(s) });
        }
        return best;
    }
}

TEST(Push, DirectedTriangleBecomesTransitive)
{
    auto g = push_vertices(c3(), PushSet{ 0 });
    EXPECT_EQ(g.sorted_arcs(), (std::vector<Arc>{ { 0, 2 }, { 1, 0 }, { 1, 2 } }));
}

TEST(Push, EmptySetAndInvolution)
{
    std::mt19937 rng(11);
    for (int trial = 0 ; trial < 200 ; ++trial) {
        auto g = random_oriented_graph(1 + trial % 10, 0.4, rng);
        EXPECT_EQ(push_vertices(g, PushSet{ }), g);
        auto mask = random_mask(g.vertex_count(), rng);
        EXPECT_EQ(push_vertices(push_vertices(g, mask), mask), g);
    }
}

TEST(Push, PushingEverythingIsIdentity)
{
    std::mt19937 rng(12);
    for (int trial = 0 ; trial < 100 ; ++trial) {
        auto g = random_oriented_graph(2 + trial % 9, 0.5, rng);
        EXPECT_EQ(push_vertices(g, std::vector<bool>(g.vertex_count(), true)), g);
    }
}

TEST(Push, OutOfRangeVertexRejected)
{
    EXPECT_THROW(push_vertices(c3(), PushSet{ 3 }), InvalidPushSet);
}

TEST(Push, CycleParityIsConserved)
{
    std::mt19937 rng(13);
    for (int n = 3 ; n <= 9 ; ++n)
        for (int trial = 0 ; trial < 30 ; ++trial) {
            std::vector<Arc> arcs;
            std::bernoulli_distribution coin(0.5);
            for (int i = 0 ; i < n ; ++i)
                arcs.push_back(coin(rng) ? Arc{ i, (i + 1) % n } : Arc{ (i + 1) % n, i });
            OrientedGraph cycle{ n, arcs };
            EXPECT_EQ(cycle_parity(cycle), cycle_parity(push_vertices(cycle, random_mask(n, rng))));
        }
}

TEST(AntiTwin, SingleArc)
{
    auto at = anti_twin(OrientedGraph{ 2, { { 0, 1 } } });
    EXPECT_EQ(at.vertex_count(), 4);
    EXPECT_EQ(at.sorted_arcs(), (std::vector<Arc>{ { 0, 1 }, { 1, 2 }, { 2, 3 }, { 3, 0 } }));
}

TEST(AntiTwin, DirectedTriangleIsTwoRegularBothWays)
{
    auto at = anti_twin(c3());
    EXPECT_EQ(at.vertex_count(), 6);
    EXPECT_EQ(at.arc_count(), 12);
    for (int v = 0 ; v < 6 ; ++v) {
        EXPECT_EQ(at.in_degree(v), 2);
        EXPECT_EQ(at.out_degree(v), 2);
    }
}

TEST(AntiTwin, IsolatedVertex)
{
    auto at = anti_twin(OrientedGraph{ 1 });
    EXPECT_EQ(at.vertex_count(), 2);
    EXPECT_EQ(at.arc_count(), 0);
}

TEST(AntiTwin, Arithmetic)
{
    std::mt19937 rng(14);
    for (int trial = 0 ; trial < 50 ; ++trial) {
        auto g = random_oriented_graph(1 + trial % 8, 0.5, rng);
        auto at = anti_twin(g);
        EXPECT_EQ(at.vertex_count(), 2 * g.vertex_count());
        EXPECT_EQ(at.arc_count(), 4 * g.arc_count());
    }
}

TEST(PushEquivalence, TrianglesAreEquivalent)
{
    auto s = is_push_equivalent(c3(), transitive_triangle());
    ASSERT_TRUE(s);
    EXPECT_EQ(push_vertices(c3(), *s), transitive_triangle());
}

TEST(PushEquivalence, SelfWithEmptySet)
{
    auto s = is_push_equivalent(fixture_e1(), fixture_e1());
    ASSERT_TRUE(s);
    EXPECT_TRUE(s->empty());
}

TEST(PushEquivalence, DirectedFourCycleIsNotMinusFourCycle)
{
    auto c4 = directed_cycle(4);
    auto minus = fixture_c_minus4();
    ASSERT_EQ(underlying_edges(c4), underlying_edges(minus));
    EXPECT_FALSE(is_push_equivalent(c4, minus));
    EXPECT_FALSE(brute_force_push_equivalent(c4, minus));
    EXPECT_NE(cycle_parity(c4), cycle_parity(minus));
}

TEST(PushEquivalence, MismatchedUnderlyingGraphsRejected)
{
    EXPECT_THROW(is_push_equivalent(c3(), directed_cycle(4)), IncompatibleInput);
}

TEST(PushEquivalence, AgreesWithBruteForce)
{
    std::mt19937 rng(15);
    for (int trial = 0 ; trial < 300 ; ++trial) {
        int n = 1 + trial % 10;
        auto g = random_oriented_graph(n, 0.45, rng);
        // either a genuine push, or a push with one arc flipped
        auto h = push_vertices(g, random_mask(n, rng));
        if (trial % 2 && h.arc_count() > 0) {
            auto arcs = h.arcs();
            std::swap(arcs[0].tail, arcs[0].head);
            h = OrientedGraph{ n, arcs };
        }
        auto found = is_push_equivalent(g, h);
        EXPECT_EQ(found.has_value(), brute_force_push_equivalent(g, h));
        if (found) {
            EXPECT_EQ(push_vertices(g, *found), h);
        }
    }
}

TEST(Canonical, TrianglesShareAForm)
{
    EXPECT_EQ(canonical_form(c3()), canonical_form(transitive_triangle()));
}

TEST(Canonical, MinusFourCycleDiffersFromDirectedFourCycle)
{
    EXPECT_NE(canonical_form(fixture_c_minus4()), canonical_form(directed_cycle(4)));
}

TEST(Canonical, InvariantUnderRelabelAndPush)
{
    std::mt19937 rng(16);
    for (int trial = 0 ; trial < 300 ; ++trial) {
        int n = 1 + trial % 14;
        auto g = random_oriented_graph(n, trial % 3 == 0 ? 0.7 : 0.35, rng);
        auto perm = random_permutation(n, rng);
        auto h = relabel(push_vertices(g, random_mask(n, rng)), perm);
        EXPECT_EQ(canonical_form(g), canonical_form(h)) << serialize_graph(g);
    }
}

TEST(Canonical, FixturesInvariantUnderRelabelAndPush)
{
    std::mt19937 rng(17);
    for (auto & [name, g] : builtin_graphs())
        for (int trial = 0 ; trial < 10 ; ++trial) {
            auto h = relabel(push_vertices(g, random_mask(g.vertex_count(), rng)), random_permutation(g.vertex_count(), rng));
            EXPECT_EQ(canonical_form(g), canonical_form(h)) << name;
        }
}

TEST(Canonical, SeparatesExactlyThePushablyIsomorphicPairs)
{
    std::mt19937 rng(18);
    int equal = 0, different = 0;
    for (int trial = 0 ; trial < 400 ; ++trial) {
        int n = 3 + trial % 4;
        auto g = random_oriented_graph(n, 0.6, rng);
        auto h = trial % 2 ? relabel(push_vertices(g, random_mask(n, rng)), random_permutation(n, rng)) : random_oriented_graph(n, 0.6, rng);
        if (h.arc_count() > 0 && trial % 4 == 1) {
            auto arcs = h.arcs();
            std::swap(arcs[0].tail, arcs[0].head);
            h = OrientedGraph{ n, arcs };
        }
        bool same = canonical_form(g) == canonical_form(h);
        EXPECT_EQ(same, brute_force_pushably_isomorphic(g, h)) << serialize_graph(g) << serialize_graph(h);
        (same ? equal : different)++;
    }
    EXPECT_GT(equal, 50);
    EXPECT_GT(different, 50);
}

TEST(Canonical, ExceptionFixturesAreDistinct)
{
    std::set<CanonicalCode> codes;
    for (auto name : { "c_minus4", "e1", "e2", "e3", "f" })
        codes.insert(canonical_form(builtin_graph(name)));
    EXPECT_EQ(codes.size(), 5u);
}

TEST(Canonical, AutomorphismCountsOfKnownGraphs)
{
    auto count = [] (const SimpleGraph & g) {
        return group_elements(g.n, canonical_labelling(g).generators).size();
    };
    SimpleGraph k4(4), c6(6), petersen(10);
    for (int u = 0 ; u < 4 ; ++u)
        for (int v = u + 1 ; v < 4 ; ++v)
            k4.add_edge(u, v);
    for (int i = 0 ; i < 6 ; ++i)
        c6.add_edge(i, (i + 1) % 6);
    for (int i = 0 ; i < 5 ; ++i) {
        petersen.add_edge(i, (i + 1) % 5);
        petersen.add_edge(i, i + 5);
        petersen.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    EXPECT_EQ(count(k4), 24u);
    EXPECT_EQ(count(c6), 12u);
    EXPECT_EQ(count(petersen), 120u);
}

TEST(Canonical, UnderlyingCodeIsAnIsomorphismInvariant)
{
    std::mt19937 rng(19);
    for (int trial = 0 ; trial < 200 ; ++trial) {
        int n = 2 + trial % 12;
        auto g = underlying_simple_graph(random_oriented_graph(n, 0.4, rng));
        auto h = permute(g, random_permutation(n, rng));
        auto cg = canonical_labelling(g), ch = canonical_labelling(h);
        EXPECT_EQ(cg.code, ch.code);
        EXPECT_EQ(permute(g, cg.labelling).rows, cg.code);
        for (auto & gen : cg.generators)
            EXPECT_EQ(permute(g, gen), g);
    }
}

TEST(AttachPath, PotentialChange)
{
    std::mt19937 rng(20);
    for (int k = 1 ; k <= 6 ; ++k)
        for (int trial = 0 ; trial < 20 ; ++trial) {
            auto g = random_oriented_graph(6, 0.3, rng);
            int x = 0, y = k <= 2 ? 5 : int(rng() % 6);
            if (k == 1 && g.adjacent(0, 5))
                continue;
            std::vector<bool> orient(k);
            for (int i = 0 ; i < k ; ++i)
                orient[i] = rng() % 2;
            auto p = attach_path(g, x, y, k, orient);
            EXPECT_EQ(p.vertex_count(), g.vertex_count() + k - 1);
            EXPECT_EQ(p.arc_count(), g.arc_count() + k);
            EXPECT_EQ(potential(p) - potential(g), 2 * (k - 1) - 13);
        }
}

TEST(AttachPath, FourArcsDropSeven)
{
    auto g = fixture_e1();
    auto p = attach_path(g, 0, 1, 4, { true, false, true, true });
    EXPECT_EQ(potential(g) - potential(p), 7);
}

TEST(AttachPath, SingleArcAddsNoVertex)
{
    OrientedGraph g{ 3, { { 0, 1 } } };
    auto p = attach_path(g, 0, 2, 1, { false });
    EXPECT_EQ(p.vertex_count(), 3);
    EXPECT_TRUE(p.has_arc(2, 0));
}

TEST(AttachPath, DigonIsAStructuralViolation)
{
    OrientedGraph g{ 2, { { 0, 1 } } };
    EXPECT_THROW(attach_path(g, 0, 1, 1, { false }), StructuralViolation);
    EXPECT_THROW(attach_path(g, 0, 1, 1, { true }), StructuralViolation);
}

TEST(Potential, SmallGraphs)
{
    EXPECT_EQ(potential(OrientedGraph{ 1 }), 15);
    EXPECT_EQ(potential(OrientedGraph{ 2, { { 0, 1 } } }), 17);
    EXPECT_EQ(potential(c3()), 6);
    EXPECT_EQ(potential(OrientedGraph{ 3, { { 0, 1 }, { 1, 2 } } }), 19);
    EXPECT_EQ(potential(fixture_c_minus4()), 8);
    EXPECT_EQ(potential(fixture_e1()), 0);
    EXPECT_EQ(potential(fixture_f()), -2);
}

TEST(Girth, Examples)
{
    EXPECT_EQ(girth(fixture_c_minus4()), 4);
    EXPECT_EQ(girth(fixture_e1()), 6);
    EXPECT_EQ(girth(OrientedGraph{ 4, { { 0, 1 }, { 1, 2 }, { 1, 3 } } }), std::nullopt);
    EXPECT_EQ(girth(c3()), 3);
}

TEST(Mad, Examples)
{
    EXPECT_EQ(mad_exact(fixture_e1()), Rational(30, 13));
    EXPECT_EQ(mad_exact(directed_cycle(4)), Rational(2));
    EXPECT_EQ(mad_exact(fixture_f()), brute_force_mad(fixture_f()));
    EXPECT_EQ(mad_exact(fixture_f()), Rational(7, 3));
    EXPECT_THROW(mad_exact(OrientedGraph{ 0 }), UndefinedInput);
}

TEST(Mad, SubsetsAndFlowAgreeWithBruteForce)
{
    std::mt19937 rng(21);
    for (int trial = 0 ; trial < 150 ; ++trial) {
        int n = 1 + trial % 14;
        auto g = random_oriented_graph(n, 0.1 + 0.05 * (trial % 10), rng);
        auto expected = brute_force_mad(g);
        EXPECT_EQ(mad_exact(g), expected);
        EXPECT_EQ(mad_exact(g, 0), expected);
        EXPECT_GE(expected, Rational(2 * g.arc_count(), n));
    }
}

TEST(Mad, FlowOnLargerGraphs)
{
    std::mt19937 rng(22);
    for (int trial = 0 ; trial < 20 ; ++trial) {
        auto g = random_oriented_graph(18, 0.2, rng);
        EXPECT_EQ(mad_exact(g, 0), mad_exact(g, 20));
    }
    auto big = disjoint_union(fixture_e1(), disjoint_union(fixture_e2(), fixture_c_minus4()));
    EXPECT_EQ(mad_exact(big), Rational(30, 13));
}

TEST(Classify, E1)
{
    auto c = classify_vertices(fixture_e1());
    for (int v : { 0, 1, 2 }) {
        auto cls = vertex_class(c, v);
        ASSERT_NE(cls, nullptr);
        EXPECT_EQ(cls->chain_internal_counts, (std::vector<int>{ 3, 3, 0 }));
        EXPECT_EQ(cls->total, 6);
    }
    auto centre = vertex_class(c, 3);
    ASSERT_NE(centre, nullptr);
    EXPECT_EQ(centre->chain_internal_counts, (std::vector<int>{ 0, 0, 0 }));
    EXPECT_EQ(c.chains.size(), 6u);
}

TEST(Classify, E2Centre)
{
    auto c = classify_vertices(fixture_e2());
    auto cls = vertex_class(c, 3);
    ASSERT_NE(cls, nullptr);
    EXPECT_EQ(cls->chain_internal_counts, (std::vector<int>{ 2, 2, 2 }));
}

TEST(Classify, LoopChainsAndDirectChains)
{
    // two triangles joined by the arc 0 -> 1
    OrientedGraph g{ 6, { { 0, 1 }, { 0, 2 }, { 2, 3 }, { 3, 0 }, { 1, 4 }, { 4, 5 }, { 5, 1 } } };
    auto loops = classify_vertices(g);
    EXPECT_EQ(vertex_class(loops, 0)->chain_internal_counts, (std::vector<int>{ 2, 2, 0 }));
    EXPECT_EQ(loops.chains.size(), 3u);
    EXPECT_THROW(classify_vertices(OrientedGraph{ 4, { { 0, 1 }, { 0, 2 }, { 0, 3 }, { 1, 2 } } }), Unclassifiable);
    OrientedGraph k4{ 4, { { 0, 1 }, { 0, 2 }, { 0, 3 }, { 1, 2 }, { 1, 3 }, { 2, 3 } } };
    auto c = classify_vertices(k4);
    for (auto & cls : c.classes)
        EXPECT_EQ(cls.chain_internal_counts, (std::vector<int>{ 0, 0, 0 }));
    EXPECT_EQ(c.chains.size(), 6u);
}

TEST(Classify, BareCycleIsUnclassifiable)
{
    EXPECT_THROW(classify_vertices(fixture_c_minus4()), Unclassifiable);
    EXPECT_THROW(classify_vertices(disjoint_union(fixture_e1(), c3())), Unclassifiable);
}

TEST(Classify, TotalsCountOpenChainVerticesTwice)
{
    for (auto name : { "e1", "e2", "e3", "f" }) {
        auto & g = builtin_graph(name);
        auto c = classify_vertices(g);
        int totals = 0, two_vertices = 0;
        for (auto & cls : c.classes)
            totals += cls.total;
        for (int v = 0 ; v < g.vertex_count() ; ++v)
            two_vertices += g.degree(v) == 2;
        EXPECT_EQ(totals, 2 * two_vertices) << name;
    }
}

TEST(GraphText, ParsesDirectedTriangle)
{
    auto g = parse_graph("p og 3 3\n0 1\n1 2\n2 0\n");
    EXPECT_EQ(g, c3());
}

TEST(GraphText, RoundTrip)
{
    std::mt19937 rng(23);
    for (auto & [name, g] : builtin_graphs()) {
        auto back = parse_graph(serialize_graph(g));
        EXPECT_EQ(back, g);
        EXPECT_EQ(back.name(), g.name());
    }
    auto minus = parse_graph(serialize_graph(fixture_c_minus4()));
    EXPECT_EQ(minus.vertex_count(), 4);
    EXPECT_EQ(minus.arc_count(), 4);
    for (int trial = 0 ; trial < 50 ; ++trial) {
        auto g = random_oriented_graph(1 + trial % 12, 0.3, rng);
        EXPECT_EQ(parse_graph(serialize_graph(g)), g);
    }
}

TEST(GraphText, CommentsAndBlankLines)
{
    auto g = parse_graph("# a comment\n\n0 1 # trailing\n  \n1 2\n");
    EXPECT_EQ(g.vertex_count(), 3);
    EXPECT_EQ(g.arc_count(), 2);
}

TEST(GraphText, Errors)
{
    auto line_of = [] (const std::string & text) {
        try {
            parse_graph(text);
        }
        catch (const ParseError & e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("0 1\n1 0\n"), 2);
    EXPECT_EQ(line_of("0 1\n0 1\n"), 2);
    EXPECT_EQ(line_of("0 0\n"), 1);
    EXPECT_EQ(line_of("0 1\nfoo bar\n"), 2);
    EXPECT_EQ(line_of("0 1 2\n"), 1);
    EXPECT_EQ(line_of("p og 2 1\n0 5\n"), 2);
    EXPECT_EQ(line_of("0 1\np og 2 1\n"), 2);
    EXPECT_EQ(line_of("p og 3 2\n0 1\n"), 2);
}
