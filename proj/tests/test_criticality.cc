/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <pushcrit/canonical.hh>
#include <pushcrit/criticality.hh>
#include <pushcrit/fixtures.hh>

#include "test_support.hh"

#include <gtest/gtest.h>

using namespace pushcrit;
using pushcrit::testing::random_oriented_graph;

TEST(Colorable, Examples)
{
    EXPECT_FALSE(is_pushably_k_colorable(builtin_graph("e3"), 3));
    auto m = is_pushably_k_colorable(builtin_graph("m3prime"), 3);
    ASSERT_TRUE(m);
    EXPECT_TRUE(verify_certificate(builtin_graph("m3prime"), m->target, m->certificate));
}

TEST(Colorable, ForestsAreTwoColorable)
{
    std::mt19937 rng(41);
    for (int trial = 0 ; trial < 50 ; ++trial) {
        int n = 2 + trial % 12;
        std::vector<Arc> arcs;
        for (int v = 1 ; v < n ; ++v) {
            int parent = int(rng() % v);
            arcs.push_back(rng() % 2 ? Arc{ parent, v } : Arc{ v, parent });
        }
        OrientedGraph tree{ n, arcs };
        auto cert = is_pushably_k_colorable(tree, 2);
        ASSERT_TRUE(cert);
        EXPECT_TRUE(verify_certificate(tree, cert->target, cert->certificate));
    }
}

TEST(Critical, ExceptionFixtures)
{
    for (auto name : { "c_minus4", "e1", "e2", "e3", "f" }) {
        auto & g = builtin_graph(name);
        auto report = is_pushably_k_critical(g, 3);
        EXPECT_EQ(report.verdict, Verdict::critical) << name;
        EXPECT_EQ(report.arc_witnesses.size(), std::size_t(g.arc_count()));
        EXPECT_TRUE(report_verifies(g, report)) << name;
    }
}

TEST(Critical, TriangleIsColorable)
{
    auto report = is_pushably_k_critical(c3(), 3);
    EXPECT_EQ(report.verdict, Verdict::colorable);
    EXPECT_TRUE(report_verifies(c3(), report));
}

TEST(Critical, NonMinimal)
{
    auto g = disjoint_union(fixture_c_minus4(), fixture_c_minus4());
    auto report = is_pushably_k_critical(g, 3);
    EXPECT_EQ(report.verdict, Verdict::non_minimal);
    EXPECT_TRUE(report.failing_arc);
}

TEST(Critical, IsolatedVertexIsAPreconditionError)
{
    EXPECT_THROW(is_pushably_k_critical(OrientedGraph{ 5, fixture_c_minus4().arcs() }, 3), PreconditionError);
}

TEST(Extract, PendantArcIsRemoved)
{
    auto e1 = fixture_e1();
    auto arcs = e1.arcs();
    arcs.push_back(Arc{ 13, 0 });
    OrientedGraph g{ 14, arcs };
    auto m = extract_critical_subgraph(g, 3);
    ASSERT_TRUE(m);
    EXPECT_EQ(canonical_form(*m), canonical_form(e1));
    EXPECT_EQ(is_pushably_k_critical(*m, 3).verdict, Verdict::critical);
}

TEST(Extract, ColorableGivesNothing)
{
    EXPECT_FALSE(extract_critical_subgraph(c3(), 3));
    EXPECT_FALSE(extract_critical_subgraph(fixture_e1(), 4));
}

TEST(Extract, UnionWithTriangle)
{
    auto g = disjoint_union(fixture_c_minus4(), c3());
    auto m = extract_critical_subgraph(g, 3);
    ASSERT_TRUE(m);
    EXPECT_EQ(*m, fixture_c_minus4());
}

TEST(Extract, AlwaysCritical)
{
    std::mt19937 rng(42);
    int found = 0;
    for (int trial = 0 ; trial < 60 ; ++trial) {
        auto g = random_oriented_graph(6 + trial % 4, 0.5, rng);
        auto m = extract_critical_subgraph(g, 3);
        EXPECT_EQ(m.has_value(), ! is_pushably_k_colorable(g, 3).has_value());
        if (m) {
            ++found;
            auto report = is_pushably_k_critical(*m, 3);
            EXPECT_EQ(report.verdict, Verdict::critical);
            EXPECT_TRUE(report_verifies(*m, report));
        }
    }
    EXPECT_GT(found, 5);
}
