/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef PUSHCRIT_GUARD_FIXTURES_HH
#define PUSHCRIT_GUARD_FIXTURES_HH 1

#include <pushcrit/errors.hh>
#include <pushcrit/homomorphism.hh>
#include <pushcrit/oriented_graph.hh>
#include <pushcrit/rational.hh>
#include <pushcrit/structure.hh>

#include <map>
#include <string>
#include <vector>

namespace pushcrit
{
    /// The four-cycle with an odd number of forward arcs. Vertices v1..v4 are 0..3.
    inline auto fixture_c_minus4() -> OrientedGraph
    {
        return OrientedGraph{ 4, { { 0, 3 }, { 2, 3 }, { 1, 2 }, { 0, 1 } }, "C-4" };
    }

    /// v1..v13 are 0..12.
    inline auto fixture_e1() -> OrientedGraph
    {
        return OrientedGraph{ 13, {
            { 0, 4 }, { 4, 5 }, { 5, 6 }, { 6, 2 },
            { 7, 2 }, { 8, 7 }, { 9, 8 }, { 1, 9 },
            { 0, 10 }, { 10, 11 }, { 11, 12 }, { 1, 12 },
            { 3, 0 }, { 2, 3 }, { 3, 1 } }, "E1" };
    }

    /// v1..v11 are 0..10, v14 is 11 and v15 is 12; v4 is the centre of three 2-chains.
    inline auto fixture_e2() -> OrientedGraph
    {
        return OrientedGraph{ 13, {
            { 0, 4 }, { 4, 2 }, { 2, 5 }, { 5, 1 }, { 1, 6 }, { 6, 0 },
            { 0, 7 }, { 7, 8 }, { 8, 3 },
            { 1, 10 }, { 10, 9 }, { 9, 3 },
            { 12, 3 }, { 11, 12 }, { 2, 11 } }, "E2" };
    }

    /// v1..v13 are 0..12.
    inline auto fixture_e3() -> OrientedGraph
    {
        return OrientedGraph{ 13, {
            { 4, 0 }, { 2, 4 }, { 2, 5 }, { 5, 1 },
            { 12, 1 }, { 6, 12 }, { 11, 6 }, { 11, 0 },
            { 0, 7 }, { 7, 8 }, { 8, 3 },
            { 1, 10 }, { 10, 9 }, { 9, 3 },
            { 3, 2 } }, "E3" };
    }

    /// v1..v4 are 0..3, then v7..v14 are 4..11.
    inline auto fixture_f() -> OrientedGraph
    {
        return OrientedGraph{ 12, {
            { 2, 0 }, { 2, 1 }, { 3, 11 }, { 11, 2 },
            { 10, 1 }, { 4, 10 }, { 4, 9 }, { 0, 9 },
            { 0, 5 }, { 5, 6 }, { 6, 3 },
            { 1, 8 }, { 8, 7 }, { 7, 3 } }, "F" };
    }

    /**
     * 0 = v, 1 = u1, 2 = v', 3 and 4 are the two vertices both drawn as u3 (3 adjacent to v),
     * 5, 6, 7 the lower path from v to v'.
     */
    inline auto fixture_m3prime() -> OrientedGraph
    {
        return OrientedGraph{ 8, {
            { 0, 1 }, { 2, 1 }, { 0, 3 }, { 4, 2 }, { 3, 4 },
            { 0, 5 }, { 5, 6 }, { 6, 7 }, { 2, 7 } }, "M'''" };
    }

    inline auto m3prime_push_set() -> PushSet
    {
        return PushSet{ 0, 5, 6, 7 };
    }

    inline auto m3prime_labels() -> std::vector<int>
    {
        return { 2, 1, 0, 1, 2, 0, 1, 2 };
    }

    inline auto fixture_at_c3() -> OrientedGraph
    {
        return anti_twin(c3()).with_name("AT(C3)");
    }

    inline auto fixture_c3() -> OrientedGraph
    {
        return c3();
    }

    struct FixtureGate
    {
        std::string check;
        bool passed;
    };

    /// Transcription checks for one fixture; every entry should pass.
    inline auto fixture_gates(const std::string & name, const OrientedGraph & g) -> std::vector<FixtureGate>
    {
        std::vector<FixtureGate> gates;
        auto counts = [&] (int n, int m) {
            gates.push_back({ "vertices = " + std::to_string(n), g.vertex_count() == n });
            gates.push_back({ "arcs = " + std::to_string(m), g.arc_count() == m });
        };

        if (name == "c_minus4") {
            counts(4, 4);
            gates.push_back({ "girth = 4", girth(g) == 4 });
        }
        else if (name == "e1" || name == "e2" || name == "e3") {
            counts(13, 15);
            gates.push_back({ "girth = 6", girth(g) == 6 });
            gates.push_back({ "triangle-free", girth(g) > 3 });
            gates.push_back({ "mad = 30/13", mad_exact(g) == Rational{ 30, 13 } });
            gates.push_back({ "potential = 0", potential(g) == 0 });
        }
        else if (name == "f") {
            counts(12, 14);
            gates.push_back({ "potential = -2", potential(g) == -2 });
        }
        else if (name == "atc3") {
            counts(6, 12);
            gates.push_back({ "equals anti_twin(C3)", g == anti_twin(c3()) });
        }
        else if (name == "c3")
            counts(3, 3);
        else if (name == "m3prime") {
            counts(8, 9);
            gates.push_back({ "potential = 3", potential(g) == 3 });
            gates.push_back({ "figure labelling is a C3 colouring",
                    verify_certificate(g, c3(), ColoringCertificate{ m3prime_push_set(), m3prime_labels() }) });
        }
        return gates;
    }

    inline auto fixture_names() -> const std::vector<std::string> &
    {
        static const std::vector<std::string> names{ "c_minus4", "c3", "atc3", "e1", "e2", "e3", "f", "m3prime" };
        return names;
    }

    /// The named figure graphs, each checked against its gates.
    inline auto builtin_graphs() -> const std::map<std::string, OrientedGraph> &
    {
        static const std::map<std::string, OrientedGraph> graphs = [] {
            std::map<std::string, OrientedGraph> result{
                { "c_minus4", fixture_c_minus4() },
                { "c3", fixture_c3() },
                { "atc3", fixture_at_c3() },
                { "e1", fixture_e1() },
                { "e2", fixture_e2() },
                { "e3", fixture_e3() },
                { "f", fixture_f() },
                { "m3prime", fixture_m3prime() }
            };
            for (auto & [name, g] : result)
                for (auto & gate : fixture_gates(name, g))
                    if (! gate.passed)
                        throw FixtureIntegrityError(name + ": " + gate.check);
            return result;
        }();
        return graphs;
    }

    inline auto builtin_graph(const std::string & name) -> const OrientedGraph &
    {
        auto & all = builtin_graphs();
        auto it = all.find(name);
        if (it == all.end())
            throw ConfigurationError("no built-in graph named '" + name + "'");
        return it->second;
    }
}

#endif
