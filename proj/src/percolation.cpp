#include "mobnet/percolation.hpp"

#include "dijkstra.hpp"
#include "mobnet/errors.hpp"
#include "mobnet/metrics.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <span>

namespace mobnet {

namespace {

/// Calls `visit(iteration, threshold, residual_edges)` for iteration 0 (the
/// full graph) and each of the K deletion iterations.
template <typename Visit>
void for_each_stage(const MobilityGraph& graph, SweepDirection direction, Visit&& visit)
{
    if (graph.edge_count() == 0) throw ArgumentError("percolation needs a graph with at least one edge");

    std::vector<Edge> by_weight(graph.edges().begin(), graph.edges().end());
    std::stable_sort(by_weight.begin(), by_weight.end(),
                     [](const Edge& a, const Edge& b) { return a.weight < b.weight; });
    const auto weights = distinct_weights(graph);
    const int k = static_cast<int>(weights.size());

    visit(0, std::optional<double>{}, std::span<const Edge>(by_weight));
    for (int i = 1; i <= k; ++i) {
        auto cmp = [](const Edge& e, double w) { return e.weight < w; };
        std::span<const Edge> residual;
        double threshold = 0.0;
        if (direction == SweepDirection::increasing) {
            threshold = weights[static_cast<std::size_t>(i - 1)];
            // Keep weight > threshold.
            auto first = std::upper_bound(by_weight.begin(), by_weight.end(), threshold,
                                          [](double w, const Edge& e) { return w < e.weight; });
            residual = std::span<const Edge>(first, by_weight.end());
        } else {
            threshold = weights[static_cast<std::size_t>(k - i)];
            // Keep weight < threshold.
            auto last = std::lower_bound(by_weight.begin(), by_weight.end(), threshold, cmp);
            residual = std::span<const Edge>(by_weight.begin(), last);
        }
        visit(i, std::optional<double>{threshold}, residual);
    }
}

// Above this node count the n x n predecessor table is not kept and every
// stage is evaluated from scratch.
constexpr std::size_t kIncrementalNodeLimit = 4096;

/// Global efficiency over a fixed node set as edges are deleted. A source is
/// re-searched only when a deleted edge lies on its shortest-path tree;
/// otherwise its distances, and so its row, are unchanged bit for bit.
class SweepEfficiency {
public:
    explicit SweepEfficiency(std::size_t n) : n_(n), rows_(n, 0.0), parents_(n * n, detail::kNoParent), dirty_(n, 1) {}

    double evaluate(const MobilityGraph& residual, std::span<const Edge> deleted)
    {
        for (const auto& e : deleted)
            for (std::size_t s = 0; s < n_; ++s)
                if (parents_[s * n_ + e.destination] == e.origin) dirty_[s] = 1;

        const auto n = static_cast<std::ptrdiff_t>(n_);
#pragma omp parallel
        {
            detail::DijkstraWorkspace ws(n_);
#pragma omp for schedule(dynamic, 8)
            for (std::ptrdiff_t i = 0; i < n; ++i) {
                auto s = static_cast<std::size_t>(i);
                if (!dirty_[s]) continue;
                auto source = static_cast<NodeIndex>(s);
                ws.run(residual, source, std::span<NodeIndex>(parents_).subspan(s * n_, n_));
                rows_[s] = ws.reciprocal_sum(source);
                dirty_[s] = 0;
            }
        }
        return detail::global_from_rows(rows_);
    }

private:
    std::size_t n_;
    std::vector<double> rows_;
    std::vector<NodeIndex> parents_;
    std::vector<char> dirty_;
};

} // namespace

std::string_view to_string(SweepDirection d)
{
    return d == SweepDirection::increasing ? "increasing" : "decreasing";
}

SweepDirection parse_direction(std::string_view text)
{
    if (text == "increasing") return SweepDirection::increasing;
    if (text == "decreasing") return SweepDirection::decreasing;
    throw ArgumentError("unknown sweep direction '" + std::string(text) + "'");
}

std::string_view to_string(Period p)
{
    switch (p) {
    case Period::before: return "before";
    case Period::during: return "during";
    case Period::after: return "after";
    }
    return "unknown";
}

std::vector<double> distinct_weights(const MobilityGraph& graph)
{
    std::vector<double> w;
    w.reserve(graph.edge_count());
    for (const auto& e : graph.edges()) w.push_back(e.weight);
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    return w;
}

PercolationTrace percolation_sweep(const MobilityGraph& graph, SweepDirection direction, const SweepOptions& options)
{
    PercolationTrace trace;
    trace.direction = direction;
    const auto total = static_cast<double>(graph.edge_count());
    const bool incremental = options.compute_efficiency && options.node_set == EfficiencyNodeSet::original &&
                             graph.node_count() >= 2 && graph.node_count() <= kIncrementalNodeLimit;
    std::optional<SweepEfficiency> tracker;
    if (incremental) tracker.emplace(graph.node_count());
    std::span<const Edge> previous;
    for_each_stage(graph, direction, [&](int iteration, std::optional<double> threshold, std::span<const Edge> residual) {
        auto labels = weak_components(graph.node_ids(), residual);
        PercolationStep step;
        step.iteration = iteration;
        step.threshold = threshold;
        step.edge_count = residual.size();
        step.residual_edge_fraction = static_cast<double>(residual.size()) / total;
        step.lwcc_size = labels.lwcc_size;
        step.component_count = labels.component_count;
        if (options.compute_efficiency && !residual.empty()) {
            auto residual_graph = graph.with_edges(std::vector<Edge>(residual.begin(), residual.end()));
            if (tracker) {
                // Stages are nested runs of the weight-sorted edges, so the
                // deleted edges are the part of the previous run that is gone.
                std::span<const Edge> deleted;
                if (iteration > 0)
                    deleted = residual.data() == previous.data() ? previous.subspan(residual.size())
                                                                 : previous.first(previous.size() - residual.size());
                step.global_efficiency = tracker->evaluate(residual_graph, deleted);
            } else {
                step.global_efficiency = options.node_set == EfficiencyNodeSet::original
                                             ? global_efficiency_or_zero(residual_graph)
                                             : global_efficiency_or_zero(residual_graph.support());
            }
        }
        previous = residual;
        trace.steps.push_back(step);
    });
    return trace;
}

double PersistenceMap::at(std::string_view region_id) const
{
    for (std::size_t i = 0; i < region_ids.size(); ++i)
        if (region_ids[i] == region_id) return rho[i];
    return 0.0;
}

PersistenceMap node_persistence(const MobilityGraph& graph, SweepDirection direction)
{
    const auto n = graph.node_count();
    std::vector<bool> alive(n, true);
    std::vector<int> last(n, -1);
    int k = 0;
    for_each_stage(graph, direction, [&](int iteration, std::optional<double>, std::span<const Edge> residual) {
        k = iteration;
        auto labels = weak_components(graph.node_ids(), residual);
        for (NodeIndex v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            if (labels.in_lwcc(v))
                last[v] = iteration;
            else
                alive[v] = false;
        }
    });

    PersistenceMap map;
    map.region_ids = graph.node_ids();
    map.rho.assign(n, 0.0);
    for (NodeIndex v = 0; v < n; ++v) {
        if (last[v] < 0) continue;
        map.rho[v] = k == 1 ? 1.0 : static_cast<double>(last[v]) / static_cast<double>(k - 1);
    }
    return map;
}

std::vector<OverlayPoint> empirical_overlay(std::span<const FlowRecord> records, const NodeRegistry& registry,
                                            Date lockdown, const Interval& baseline)
{
    if (baseline.end > TimePoint{lockdown}) throw ArgumentError("baseline window must end by the lockdown date");
    auto reference = build_graph(records, baseline, registry);
    if (reference.edge_count() == 0) throw ArgumentError("baseline window holds no flows");
    const double reference_efficiency = global_efficiency_or_zero(reference);

    std::map<Date, std::vector<FlowRecord>> by_week;
    for (const auto& r : records) by_week[iso_week_start(day_of(r.window_start))].push_back(r);

    const Date lockdown_week = iso_week_start(lockdown);
    std::vector<OverlayPoint> points;
    for (const auto& [week, week_records] : by_week) {
        auto g = build_graph(week_records, Interval{TimePoint{week}, TimePoint{week + std::chrono::days{7}}}, registry);
        auto labels = weak_components(g);
        OverlayPoint p;
        p.period = week < lockdown_week ? Period::before : week == lockdown_week ? Period::during : Period::after;
        p.week_start = week;
        p.residual_edge_fraction = residual_edge_fraction(g, reference);
        p.lwcc_size = labels.lwcc_size;
        p.global_efficiency_normalized = global_efficiency_or_zero(g) / reference_efficiency;
        points.push_back(p);
    }
    return points;
}

} // namespace mobnet
