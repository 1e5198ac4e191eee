/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <pushcrit/fixtures.hh>
#include <pushcrit/graph_io.hh>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>

using namespace pushcrit;

namespace
{
    auto fixture_path(const std::string & name) -> std::string
    {
        return (std::filesystem::path(PUSHCRIT_FIXTURE_DIR) / (name + ".og")).string();
    }
}

TEST(FixtureFiles, MatchBuiltins)
{
    for (auto & name : fixture_names()) {
        auto & builtin = builtin_graph(name);
        auto loaded = load_graph_file(fixture_path(name));
        EXPECT_EQ(loaded.vertex_count(), builtin.vertex_count()) << name;
        EXPECT_EQ(loaded.sorted_arcs(), builtin.sorted_arcs()) << name;
        EXPECT_EQ(loaded.name(), builtin.name()) << name;
    }
}

TEST(FixtureFiles, PassTheirGates)
{
    for (auto & name : fixture_names())
        for (auto & gate : fixture_gates(name, load_graph_file(fixture_path(name))))
            EXPECT_TRUE(gate.passed) << name << ": " << gate.check;
}

TEST(FixtureFiles, SerialiseExactly)
{
    for (auto & name : fixture_names()) {
        std::ifstream in(fixture_path(name));
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        EXPECT_EQ(text, serialize_graph(builtin_graph(name))) << name;
    }
}
