/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef PUSHCRIT_GUARD_GRAPH_IO_HH
#define PUSHCRIT_GUARD_GRAPH_IO_HH 1

#include <pushcrit/errors.hh>
#include <pushcrit/oriented_graph.hh>

#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace pushcrit
{
    namespace detail
    {
        inline auto trim(std::string_view s) -> std::string_view
        {
            while (! s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
                s.remove_prefix(1);
            while (! s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
                s.remove_suffix(1);
            return s;
        }

        inline auto split_words(std::string_view s) -> std::vector<std::string_view>
        {
            std::vector<std::string_view> words;
            std::size_t i = 0;
            while (i < s.size()) {
                while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
                    ++i;
                std::size_t j = i;
                while (j < s.size() && s[j] != ' ' && s[j] != '\t')
                    ++j;
                if (j > i)
                    words.push_back(s.substr(i, j - i));
                i = j;
            }
            return words;
        }

        inline auto parse_int(std::string_view word, int line) -> int
        {
            int value = 0;
            auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
            if (ec != std::errc{ } || ptr != word.data() + word.size() || value < 0)
                throw ParseError(line, "expected a nonnegative integer, found '" + std::string(word) + "'");
            return value;
        }
    }

    /**
     * Reads "p og <n> <m>" (optional, first), then one "<tail> <head>" per line. A comment
     * of the form "# name: <text>" names the graph.
     */
    inline auto parse_graph(std::string_view text) -> OrientedGraph
    {
        std::optional<int> declared_n, declared_m;
        std::optional<std::string> name;
        std::vector<Arc> arcs;
        std::set<std::pair<int, int>> seen;
        int max_vertex = -1, line_no = 0, last_line = 0;
        bool any_content = false;

        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto nl = text.find('\n', pos);
            if (nl == std::string_view::npos)
                nl = text.size();
            auto raw = text.substr(pos, nl - pos);
            pos = nl + 1;
            ++line_no;

            auto hash = raw.find('#');
            if (hash != std::string_view::npos) {
                auto comment = detail::trim(raw.substr(hash + 1));
                if (comment.starts_with("name:"))
                    name = std::string(detail::trim(comment.substr(5)));
                raw = raw.substr(0, hash);
            }
            auto line = detail::trim(raw);
            if (line.empty())
                continue;
            last_line = line_no;

            auto words = detail::split_words(line);
            if (words[0] == "p") {
                if (any_content)
                    throw ParseError(line_no, "header must precede all arcs");
                if (words.size() != 4 || words[1] != "og")
                    throw ParseError(line_no, "header must read 'p og <n> <m>'");
                declared_n = detail::parse_int(words[2], line_no);
                declared_m = detail::parse_int(words[3], line_no);
                any_content = true;
                continue;
            }
            any_content = true;
            if (words.size() != 2)
                throw ParseError(line_no, "expected '<tail> <head>'");
            int t = detail::parse_int(words[0], line_no), h = detail::parse_int(words[1], line_no);
            if (t == h)
                throw ParseError(line_no, "loop at vertex " + std::to_string(t));
            if (seen.contains({ t, h }))
                throw ParseError(line_no, "duplicate arc " + std::to_string(t) + " " + std::to_string(h));
            if (seen.contains({ h, t }))
                throw ParseError(line_no, "digon between " + std::to_string(t) + " and " + std::to_string(h));
            if (declared_n && (t >= *declared_n || h >= *declared_n))
                throw ParseError(line_no, "vertex out of range for header n = " + std::to_string(*declared_n));
            seen.emplace(t, h);
            arcs.push_back(Arc{ t, h });
            max_vertex = std::max({ max_vertex, t, h });
        }

        if (declared_m && *declared_m != int(arcs.size()))
            throw ParseError(last_line, "header declares " + std::to_string(*declared_m) + " arcs, found " + std::to_string(arcs.size()));
        return OrientedGraph{ declared_n.value_or(max_vertex + 1), std::move(arcs), std::move(name) };
    }

    inline auto serialize_graph(const OrientedGraph & g) -> std::string
    {
        std::ostringstream out;
        if (g.name())
            out << "# name: " << *g.name() << '\n';
        out << "p og " << g.vertex_count() << ' ' << g.arc_count() << '\n';
        for (auto & a : g.sorted_arcs())
            out << a.tail << ' ' << a.head << '\n';
        return out.str();
    }

    inline auto load_graph_file(const std::string & path) -> OrientedGraph
    {
        std::ifstream in(path);
        if (! in)
            throw Error("cannot read " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_graph(buffer.str());
    }
}

#endif
