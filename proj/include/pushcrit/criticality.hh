/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef PUSHCRIT_GUARD_CRITICALITY_HH
#define PUSHCRIT_GUARD_CRITICALITY_HH 1

#include <pushcrit/errors.hh>
#include <pushcrit/homomorphism.hh>
#include <pushcrit/oriented_graph.hh>

#include <optional>
#include <vector>

namespace pushcrit
{
    enum class Verdict
    {
        critical,
        colorable,
        non_minimal
    };

    inline auto verdict_name(Verdict v) -> const char *
    {
        switch (v) {
            case Verdict::critical:    return "critical";
            case Verdict::colorable:   return "colorable";
            case Verdict::non_minimal: return "non_minimal";
        }
        return "?";
    }

    struct ArcWitness
    {
        Arc arc;
        TargetedCertificate witness;    // for the graph with arc removed
    };

    struct CriticalityReport
    {
        Verdict verdict = Verdict::colorable;
        std::optional<TargetedCertificate> global_certificate;
        std::vector<ArcWitness> arc_witnesses;
        std::optional<Arc> failing_arc;
    };

    inline auto is_pushably_k_colorable(const OrientedGraph & g, int k, SearchLimits limits = { }) -> std::optional<TargetedCertificate>
    {
        if (k < 1 || k > 6)
            throw ConfigurationError("k must lie in 1..6");
        return pushably_k_colorable(g, k, limits);
    }

    namespace detail
    {
        inline auto without_arc(const OrientedGraph & g, const Arc & e) -> OrientedGraph
        {
            std::vector<Arc> arcs;
            arcs.reserve(g.arcs().size());
            for (auto & a : g.arcs())
                if (a != e)
                    arcs.push_back(a);
            return OrientedGraph{ g.vertex_count(), std::move(arcs), g.name() };
        }
    }

    /**
     * Not pushably k-colourable, while removing any single arc makes it so. Arcs are tried
     * in sorted order and the first arc whose removal leaves the graph uncolourable is reported.
     */
    inline auto is_pushably_k_critical(const OrientedGraph & g, int k, SearchLimits limits = { }) -> CriticalityReport
    {
        if (! isolated_vertices(g).empty())
            throw PreconditionError("criticality is only decided for graphs without isolated vertices");

        CriticalityReport report;
        if (auto cert = is_pushably_k_colorable(g, k, limits)) {
            report.verdict = Verdict::colorable;
            report.global_certificate = std::move(cert);
            return report;
        }

        for (auto & e : g.sorted_arcs()) {
            auto cert = is_pushably_k_colorable(detail::without_arc(g, e), k, limits);
            if (! cert) {
                report.verdict = Verdict::non_minimal;
                report.failing_arc = e;
                report.arc_witnesses.clear();
                return report;
            }
            report.arc_witnesses.push_back(ArcWitness{ e, std::move(*cert) });
        }
        report.verdict = Verdict::critical;
        return report;
    }

    /// Independent re-check of every certificate a report carries.
    inline auto report_verifies(const OrientedGraph & g, const CriticalityReport & report) -> bool
    {
        switch (report.verdict) {
            case Verdict::colorable:
                return report.global_certificate
                    && verify_certificate(g, report.global_certificate->target, report.global_certificate->certificate);
            case Verdict::critical:
                if (report.arc_witnesses.size() != std::size_t(g.arc_count()))
                    return false;
                for (auto & w : report.arc_witnesses)
                    if (! g.has_arc(w.arc.tail, w.arc.head)
                            || ! verify_certificate(detail::without_arc(g, w.arc), w.witness.target, w.witness.certificate))
                        return false;
                return true;
            case Verdict::non_minimal:
                return report.failing_arc.has_value();
        }
        return false;
    }

    /**
     * Greedily deletes arcs, in sorted order, whenever the graph stays uncolourable, then drops
     * isolated vertices. The result is arc-minimal, hence critical.
     */
    inline auto extract_critical_subgraph(const OrientedGraph & g, int k, SearchLimits limits = { }) -> std::optional<OrientedGraph>
    {
        if (is_pushably_k_colorable(g, k, limits))
            return std::nullopt;
        auto current = g;
        for (auto & e : g.sorted_arcs()) {
            auto smaller = detail::without_arc(current, e);
            if (! is_pushably_k_colorable(smaller, k, limits))
                current = std::move(smaller);
        }
        return strip_isolated(current);
    }
}

#endif
