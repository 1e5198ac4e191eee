/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef PUSHCRIT_GUARD_CONFIGURATIONS_HH
#define PUSHCRIT_GUARD_CONFIGURATIONS_HH 1

#include <pushcrit/errors.hh>
#include <pushcrit/homomorphism.hh>
#include <pushcrit/oriented_graph.hh>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

namespace pushcrit
{
    /**
     * A reducible-configuration instance: the vertices of X are uncoloured and may be pushed,
     * the boundary vertices are coloured arbitrarily and are never pushed. The arcs are stored in
     * a reference orientation; the checker quantifies over every orientation.
     */
    struct ConfigurationGadget
    {
        std::string id;
        std::string variant;
        OrientedGraph graph;
        std::vector<int> boundary;
        std::vector<int> centres;
        std::vector<std::vector<int>> parameters;  // chain internal counts per centre, largest first
        std::vector<int> directed_cycle;            // if non-empty, only orientations where this cycle is directed up to push
    };

    struct ConfigurationCounterexample
    {
        std::vector<Arc> arcs;
        std::vector<int> boundary_colours;
    };

    struct ConfigurationResult
    {
        std::string id;
        std::string variant;
        bool pass = true;
        std::uint64_t orientations = 0;
        std::uint64_t cases = 0;
        std::uint64_t certificates_verified = 0;
        std::optional<ConfigurationCounterexample> counterexample;
    };

    namespace detail
    {
        class GadgetBuilder
        {
            private:
                int _n = 0;
                std::vector<Arc> _arcs;
                std::vector<int> _boundary, _centres;
                std::vector<std::vector<int>> _parameters;

            public:
                auto vertex() -> int { return _n++; }

                auto boundary_vertex() -> int
                {
                    _boundary.push_back(_n);
                    return _n++;
                }

                auto centre(std::vector<int> counts) -> int
                {
                    std::sort(counts.begin(), counts.end(), std::greater<>{ });
                    _centres.push_back(_n);
                    _parameters.push_back(std::move(counts));
                    return _n++;
                }

                /// A path a, i1, .., ik, b oriented from a to b; returns every vertex on it.
                auto join(int a, int b, int k) -> std::vector<int>
                {
                    std::vector<int> path{ a };
                    for (int i = 0 ; i < k ; ++i)
                        path.push_back(vertex());
                    path.push_back(b);
                    for (std::size_t i = 0 ; i + 1 < path.size() ; ++i)
                        _arcs.push_back(Arc{ path[i], path[i + 1] });
                    return path;
                }

                auto leg(int c, int k) -> void
                {
                    join(c, boundary_vertex(), k);
                }

                auto legs(int c, std::initializer_list<int> ks) -> void
                {
                    for (auto k : ks)
                        leg(c, k);
                }

                auto build(std::string id, std::string variant) -> ConfigurationGadget
                {
                    return ConfigurationGadget{ std::move(id), std::move(variant), OrientedGraph{ _n, _arcs },
                        _boundary, _centres, _parameters, { } };
                }
        };

        inline auto describe(const std::vector<std::vector<int>> & parameters) -> std::string
        {
            std::string result;
            for (auto & p : parameters) {
                int total = 0;
                std::string inner;
                for (auto t : p) {
                    total += t;
                    inner += (inner.empty() ? "" : ",") + std::to_string(t);
                }
                result += (result.empty() ? "" : " ") + std::to_string(p.size()) + "^" + std::to_string(total) + "_{" + inner + "}";
            }
            return result;
        }

        inline auto finish(GadgetBuilder & b, const std::string & id) -> ConfigurationGadget
        {
            auto g = b.build(id, "");
            g.variant = describe(g.parameters);
            return g;
        }

        /// A star whose every chain leads straight out to the boundary.
        inline auto star(const std::string & id, std::vector<int> counts) -> ConfigurationGadget
        {
            GadgetBuilder b;
            int v = b.centre(counts);
            for (auto k : counts)
                b.leg(v, k);
            return finish(b, id);
        }

        /// Two centres joined by a k-chain, each with further chains out to the boundary.
        inline auto pair(const std::string & id, int k, std::vector<int> u_rest, std::vector<int> v_rest) -> ConfigurationGadget
        {
            GadgetBuilder b;
            auto with = [k] (std::vector<int> rest) { rest.push_back(k); return rest; };
            int u = b.centre(with(u_rest)), v = b.centre(with(v_rest));
            b.join(u, v, k);
            for (auto t : u_rest)
                b.leg(u, t);
            for (auto t : v_rest)
                b.leg(v, t);
            return finish(b, id);
        }

        /// u 1-chain-adjacent to each of several 3_{3,2,1} vertices, with further chains out of u.
        inline auto hub(const std::string & id, int spokes, std::vector<int> u_rest) -> ConfigurationGadget
        {
            GadgetBuilder b;
            auto counts = u_rest;
            for (int i = 0 ; i < spokes ; ++i)
                counts.push_back(1);
            int u = b.centre(counts);
            for (int i = 0 ; i < spokes ; ++i) {
                int v = b.centre({ 3, 2, 1 });
                b.join(u, v, 1);
                b.legs(v, { 3, 2 });
            }
            for (auto t : u_rest)
                b.leg(u, t);
            return finish(b, id);
        }

        /// x, y, z on a 6-cycle with the given chain lengths between them, each with one outward chain.
        inline auto hexagon(const std::string & id, int xy, int yz, int zx, int x_out, int y_out, int z_out) -> ConfigurationGadget
        {
            GadgetBuilder b;
            int x = b.centre({ xy, zx, x_out }), y = b.centre({ xy, yz, y_out }), z = b.centre({ yz, zx, z_out });
            auto p1 = b.join(x, y, xy), p2 = b.join(y, z, yz), p3 = b.join(z, x, zx);
            b.leg(x, x_out);
            b.leg(y, y_out);
            b.leg(z, z_out);
            auto g = finish(b, id);
            std::vector<int> cycle(p1.begin(), p1.end() - 1);
            cycle.insert(cycle.end(), p2.begin(), p2.end() - 1);
            cycle.insert(cycle.end(), p3.begin(), p3.end() - 1);
            g.directed_cycle = cycle;
            return g;
        }
    }

    /// A chain with k internal vertices between two boundary vertices.
    inline auto chain_gadget(int k, const std::string & id = "chain") -> ConfigurationGadget
    {
        detail::GadgetBuilder b;
        int x = b.boundary_vertex(), y = b.boundary_vertex();
        b.join(x, y, k);
        auto g = b.build(id, std::to_string(k) + " internal");
        return g;
    }

    /// One uncoloured vertex with three in-arcs from the boundary; not reducible.
    inline auto negative_control_gadget() -> ConfigurationGadget
    {
        detail::GadgetBuilder b;
        int c = b.centre({ 0, 0, 0 });
        for (int i = 0 ; i < 3 ; ++i)
            b.join(b.boundary_vertex(), c, 0);
        return detail::finish(b, "control");
    }

    inline auto configuration_ids() -> const std::vector<std::string> &
    {
        static const std::vector<std::string> ids{ "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8",
            "C9", "C10", "C11", "C12", "C13", "C14", "C15", "C16" };
        return ids;
    }

    /**
     * Every instance of a configuration: the smallest parameters and every larger chain-count
     * distribution with at most three internal vertices per chain.
     */
    inline auto gadgets_for(const std::string & id) -> std::vector<ConfigurationGadget>
    {
        using namespace detail;
        std::vector<ConfigurationGadget> result;

        if (id == "C1")
            result.push_back(chain_gadget(4, "C1"));
        else if (id == "C2") {
            for (auto & d : std::vector<std::vector<int>>{ { 3, 3, 1 }, { 3, 2, 2 }, { 3, 3, 2 }, { 3, 3, 3 } })
                result.push_back(star(id, d));
        }
        else if (id == "C3") {
            for (auto & d : std::vector<std::vector<int>>{ { 3, 3, 3, 2 }, { 3, 3, 3, 3 } })
                result.push_back(star(id, d));
        }
        else if (id == "C4")
            result.push_back(pair(id, 0, { 3, 2 }, { 3, 2 }));
        else if (id == "C5")
            result.push_back(pair(id, 0, { 3, 3 }, { 3, 3, 3 }));
        else if (id == "C6") {
            for (auto & d : std::vector<std::vector<int>>{ { 3, 3, 2 }, { 3, 3, 3 } })
                result.push_back(pair(id, 1, { 3, 2 }, d));
        }
        else if (id == "C7") {
            for (auto & d : std::vector<std::vector<int>>{ { 3, 1 }, { 2, 2 }, { 3, 2 }, { 3, 3 } })
                result.push_back(pair(id, 1, d, { 3, 3, 3 }));
        }
        else if (id == "C8") {
            GadgetBuilder b;
            int u = b.centre({ 3, 1, 0 }), w = b.centre({ 3, 2, 0 }), v = b.centre({ 3, 3, 3, 1 });
            b.join(u, w, 0);
            b.join(u, v, 1);
            b.leg(u, 3);
            b.legs(w, { 3, 2 });
            b.legs(v, { 3, 3, 3 });
            result.push_back(finish(b, id));
        }
        else if (id == "C9") {
            GadgetBuilder b;
            int u = b.centre({ 3, 3, 1, 0 }), v = b.centre({ 3, 2, 1 }), w = b.centre({ 3, 3, 0 });
            b.join(u, w, 0);
            b.join(u, v, 1);
            b.legs(u, { 3, 3 });
            b.legs(v, { 3, 2 });
            b.legs(w, { 3, 3 });
            result.push_back(finish(b, id));
        }
        else if (id == "C10") {
            GadgetBuilder b;
            int u = b.centre({ 2, 1, 1 }), v = b.centre({ 3, 3, 3, 1 }), w = b.centre({ 3, 1, 1 });
            b.join(u, v, 1);
            b.join(u, w, 1);
            b.leg(u, 2);
            b.legs(v, { 3, 3, 3 });
            b.legs(w, { 3, 1 });
            result.push_back(finish(b, id));
        }
        else if (id == "C11") {
            result.push_back(hub(id, 2, { 3, 2 }));
            result.push_back(hub(id, 2, { 3, 3 }));
        }
        else if (id == "C12")
            result.push_back(hub(id, 3, { 3 }));
        else if (id == "C13")
            result.push_back(hub(id, 4, { }));
        else if (id == "C14")
            result.push_back(hexagon(id, 0, 1, 2, 3, 3, 0));
        else if (id == "C15") {
            for (int y_out = 1 ; y_out <= 3 ; ++y_out)
                for (int z_out = 1 ; z_out <= 3 ; ++z_out)
                    result.push_back(hexagon(id, 0, 1, 2, 3, y_out, z_out));
        }
        else if (id == "C16") {
            for (int y_out = 2 ; y_out <= 3 ; ++y_out)
                for (int z_out = 0 ; z_out <= 3 ; ++z_out)
                    result.push_back(hexagon(id, 1, 1, 1, 3, y_out, z_out));
        }
        else
            throw ConfigurationError("unknown configuration '" + id + "'");

        return result;
    }

    /**
     * Chain counts seen from each centre, treating boundary vertices as chain ends. Used to
     * check a gadget realises its stated vertex classes.
     */
    inline auto gadget_centre_classes(const ConfigurationGadget & gadget) -> std::vector<std::vector<int>>
    {
        auto & g = gadget.graph;
        std::vector<bool> end(g.vertex_count(), false);
        for (auto v : gadget.boundary)
            end[v] = true;
        for (auto v : gadget.centres)
            end[v] = true;

        std::vector<std::vector<int>> result;
        for (auto c : gadget.centres) {
            std::vector<int> counts;
            for (auto & first : g.neighbours(c)) {
                int prev = c, cur = first.vertex, k = 0;
                while (! end[cur]) {
                    if (g.degree(cur) != 2)
                        throw ConfigurationError("vertex " + std::to_string(cur) + " inside a chain has degree " + std::to_string(g.degree(cur)));
                    auto nbs = g.neighbours(cur);
                    int next = nbs[0].vertex == prev ? nbs[1].vertex : nbs[0].vertex;
                    prev = cur;
                    cur = next;
                    ++k;
                }
                counts.push_back(k);
            }
            std::sort(counts.begin(), counts.end(), std::greater<>{ });
            result.push_back(std::move(counts));
        }
        return result;
    }

    /**
     * Representatives of the orientations of the gadget modulo pushing vertices of X: each
     * uncoloured vertex has a pivot arc from its breadth-first parent fixed as parent to child,
     * and the remaining arcs run over every pattern.
     */
    inline auto gadget_orientations(const ConfigurationGadget & gadget) -> std::vector<OrientedGraph>
    {
        auto & g = gadget.graph;
        int n = g.vertex_count();
        std::vector<int> parent(n, -2);
        std::deque<int> queue;
        for (auto b : gadget.boundary) {
            parent[b] = -1;
            queue.push_back(b);
        }
        while (! queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (auto & nb : g.neighbours(v))
                if (parent[nb.vertex] == -2) {
                    parent[nb.vertex] = v;
                    queue.push_back(nb.vertex);
                }
        }
        for (int v = 0 ; v < n ; ++v)
            if (parent[v] == -2)
                throw ConfigurationError("vertex " + std::to_string(v) + " is not connected to the boundary");

        std::vector<int> free;
        for (int i = 0 ; i < g.arc_count() ; ++i) {
            auto a = g.arcs()[i];
            if (parent[a.head] != a.tail && parent[a.tail] != a.head)
                free.push_back(i);
        }
        if (free.size() > 24)
            throw ConfigurationError("gadget has too many free arcs to enumerate");

        std::vector<OrientedGraph> result;
        for (std::uint64_t bits = 0 ; bits < (std::uint64_t{ 1 } << free.size()) ; ++bits) {
            std::vector<Arc> arcs = g.arcs();
            for (auto & a : arcs)
                if (parent[a.tail] == a.head)
                    a = Arc{ a.head, a.tail };
            for (std::size_t i = 0 ; i < free.size() ; ++i)
                if ((bits >> i) & 1)
                    arcs[free[i]] = Arc{ arcs[free[i]].head, arcs[free[i]].tail };
            OrientedGraph o{ n, std::move(arcs) };

            if (! gadget.directed_cycle.empty()) {
                auto & cyc = gadget.directed_cycle;
                int forward = 0;
                for (std::size_t i = 0 ; i < cyc.size() ; ++i)
                    if (o.has_arc(cyc[i], cyc[(i + 1) % cyc.size()]))
                        ++forward;
                if (forward % 2 != 0)
                    continue;
            }
            result.push_back(std::move(o));
        }
        return result;
    }

    /// Tries to extend one boundary colouring of one orientation.
    inline auto extend_gadget(const ConfigurationGadget & gadget, const OrientedGraph & orientation,
            const std::vector<int> & boundary_colours, ExtensionRoute route = ExtensionRoute::anti_twin)
        -> std::optional<ColoringCertificate>
    {
        PartialColoring pc{ std::vector<int>(orientation.vertex_count(), -1) };
        for (std::size_t i = 0 ; i < gadget.boundary.size() ; ++i)
            pc.color[gadget.boundary[i]] = boundary_colours.at(i);
        return extend_partial(orientation, pc, route);
    }

    /**
     * Checks that every boundary colouring of every orientation extends. The first boundary
     * colour is fixed to 0, since rotating the colours of C3 is an automorphism.
     */
    inline auto verify_configuration(const ConfigurationGadget & gadget, ExtensionRoute route = ExtensionRoute::anti_twin) -> ConfigurationResult
    {
        ConfigurationResult result;
        result.id = gadget.id;
        result.variant = gadget.variant;

        auto orientations = gadget_orientations(gadget);
        result.orientations = orientations.size();
        std::size_t nb = gadget.boundary.size();

        for (auto & o : orientations) {
            std::vector<int> colours(nb, 0);
            while (true) {
                ++result.cases;
                auto cert = extend_gadget(gadget, o, colours, route);
                if (! cert) {
                    result.pass = false;
                    result.counterexample = ConfigurationCounterexample{ o.arcs(), colours };
                    return result;
                }
                if (! verify_certificate(o, c3(), *cert))
                    throw StructuralViolation("extension certificate failed to verify for " + gadget.id);
                ++result.certificates_verified;

                std::size_t i = nb;
                while (i > 1 && colours[i - 1] == 2)
                    colours[--i] = 0;
                if (i <= 1)
                    break;
                ++colours[i - 1];
            }
        }
        return result;
    }

    inline auto to_json(const ConfigurationGadget & g) -> nlohmann::ordered_json
    {
        nlohmann::ordered_json j;
        j["id"] = g.id;
        j["variant"] = g.variant;
        j["vertices"] = g.graph.vertex_count();
        auto arcs = nlohmann::ordered_json::array();
        for (auto & a : g.graph.arcs())
            arcs.push_back({ a.tail, a.head });
        j["arcs"] = arcs;
        j["boundary"] = g.boundary;
        j["centres"] = g.centres;
        j["parameters"] = g.parameters;
        if (! g.directed_cycle.empty())
            j["directed_cycle"] = g.directed_cycle;
        return j;
    }

    inline auto to_json(const ConfigurationResult & r) -> nlohmann::ordered_json
    {
        nlohmann::ordered_json j;
        j["id"] = r.id;
        j["variant"] = r.variant;
        j["pass"] = r.pass;
        j["orientations"] = r.orientations;
        j["cases"] = r.cases;
        j["certificates_verified"] = r.certificates_verified;
        if (r.counterexample) {
            auto arcs = nlohmann::ordered_json::array();
            for (auto & a : r.counterexample->arcs)
                arcs.push_back({ a.tail, a.head });
            j["counterexample"] = { { "arcs", arcs }, { "boundary_colours", r.counterexample->boundary_colours } };
        }
        else
            j["counterexample"] = nullptr;
        return j;
    }
}

#endif
