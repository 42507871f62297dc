#include "mobnet/metrics.hpp"

#include "dijkstra.hpp"
#include "mobnet/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mobnet {

namespace {

void require_two_nodes(const MobilityGraph& graph)
{
    if (graph.node_count() < 2)
        throw ArgumentError("efficiency needs at least 2 nodes, graph has " + std::to_string(graph.node_count()));
}

// Shared by the parallel and serial paths so both reduce identically.
EfficiencyReport reduce_rows(const std::vector<double>& row_sums)
{
    const auto n = static_cast<double>(row_sums.size());
    EfficiencyReport report;
    report.nodal.reserve(row_sums.size());
    for (double s : row_sums) report.nodal.push_back(s / (n - 1.0));
    report.global = detail::global_from_rows(row_sums);
    return report;
}

} // namespace

DistanceRow shortest_paths_from(const MobilityGraph& graph, NodeIndex source)
{
    if (source >= graph.node_count())
        throw ArgumentError("source index " + std::to_string(source) + " out of range for " +
                            std::to_string(graph.node_count()) + " nodes");
    detail::DijkstraWorkspace ws(graph.node_count());
    return DistanceRow{source, ws.run(graph, source)};
}

EfficiencyReport efficiency(const MobilityGraph& graph)
{
    require_two_nodes(graph);
    const auto n = static_cast<std::ptrdiff_t>(graph.node_count());
    std::vector<double> row_sums(graph.node_count(), 0.0);
#pragma omp parallel
    {
        detail::DijkstraWorkspace ws(graph.node_count());
#pragma omp for schedule(dynamic, 8)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            auto source = static_cast<NodeIndex>(i);
            ws.run(graph, source);
            row_sums[static_cast<std::size_t>(i)] = ws.reciprocal_sum(source);
        }
    }
    return reduce_rows(row_sums);
}

namespace serial {

EfficiencyReport efficiency(const MobilityGraph& graph)
{
    require_two_nodes(graph);
    std::vector<double> row_sums(graph.node_count(), 0.0);
    detail::DijkstraWorkspace ws(graph.node_count());
    for (NodeIndex i = 0; i < graph.node_count(); ++i) {
        ws.run(graph, i);
        row_sums[i] = ws.reciprocal_sum(i);
    }
    return reduce_rows(row_sums);
}

} // namespace serial

double global_efficiency_or_zero(const MobilityGraph& graph)
{
    return graph.node_count() < 2 ? 0.0 : efficiency(graph).global;
}

std::vector<double> normalize_series(std::span<const double> values)
{
    double peak = 0.0;
    for (double v : values) peak = std::max(peak, v);
    if (!(peak > 0.0)) throw ArgumentError("normalization needs at least one strictly positive value");
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(v / peak);
    return out;
}

double gini(std::span<const double> values)
{
    if (values.empty()) throw ArgumentError("gini of an empty vector");
    std::vector<double> sorted(values.begin(), values.end());
    for (double v : sorted) {
        if (v < 0.0 || std::isnan(v)) throw ValidationError("gini input must be non-negative");
    }
    std::sort(sorted.begin(), sorted.end());

    // sum_i sum_j |y_i - y_j| = 2 * sum_k (2k - n - 1) y_(k) over the sorted
    // values (k 1-based), so g = sum_k (2k - n - 1) y_(k) / (n * sum y).
    const auto n = static_cast<double>(sorted.size());
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        weighted += (2.0 * static_cast<double>(k + 1) - n - 1.0) * sorted[k];
        total += sorted[k];
    }
    if (!(total > 0.0)) throw ArgumentError("gini undefined for a zero-mean vector");
    return std::max(0.0, weighted / (n * total));
}

std::vector<EfficiencyGini> efficiency_gini_series(std::span<const MobilityGraph> series)
{
    std::vector<EfficiencyGini> out;
    out.reserve(series.size());
    for (const auto& graph : series) {
        auto report = efficiency(graph);
        out.push_back(EfficiencyGini{day_of(graph.window().start), report.global, gini(report.nodal)});
    }
    return out;
}

} // namespace mobnet
