#include "mobnet/graph.hpp"

#include "mobnet/errors.hpp"
#include "union_find.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace mobnet {

MobilityGraph::MobilityGraph(std::vector<std::string> node_ids, std::vector<Edge> edges, Interval window)
    : node_ids_(std::move(node_ids)), edges_(std::move(edges)), window_(window)
{
    const auto n = node_ids_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!index_.emplace(node_ids_[i], static_cast<NodeIndex>(i)).second)
            throw InvariantError("duplicate node id '" + node_ids_[i] + "' in graph");
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.origin, a.destination) < std::pair(b.origin, b.destination);
    });
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const auto& e = edges_[k];
        if (e.origin >= n || e.destination >= n) throw InvariantError("edge endpoint out of range");
        if (e.origin == e.destination) throw InvariantError("self-loop on '" + node_ids_[e.origin] + "'");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw InvariantError("edge weight must be positive and finite");
        if (k > 0 && edges_[k - 1].origin == e.origin && edges_[k - 1].destination == e.destination)
            throw InvariantError("parallel edges " + node_ids_[e.origin] + "->" + node_ids_[e.destination]);
    }
    offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) ++offsets_[e.origin + 1];
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.reserve(edges_.size());
    for (const auto& e : edges_) adjacency_.push_back(OutEdge{e.destination, e.weight});
}

std::optional<NodeIndex> MobilityGraph::index_of(std::string_view id) const
{
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

double MobilityGraph::total_weight() const noexcept
{
    double sum = 0.0;
    for (const auto& e : edges_) sum += e.weight;
    return sum;
}

MobilityGraph MobilityGraph::with_edges(std::vector<Edge> edges) const
{
    return MobilityGraph(node_ids_, std::move(edges), window_);
}

MobilityGraph MobilityGraph::support() const
{
    std::vector<bool> touched(node_count(), false);
    for (const auto& e : edges_) touched[e.origin] = touched[e.destination] = true;
    std::vector<NodeIndex> remap(node_count(), 0);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < node_count(); ++i) {
        if (!touched[i]) continue;
        remap[i] = static_cast<NodeIndex>(ids.size());
        ids.push_back(node_ids_[i]);
    }
    std::vector<Edge> edges;
    edges.reserve(edges_.size());
    for (const auto& e : edges_) edges.push_back(Edge{remap[e.origin], remap[e.destination], e.weight});
    return MobilityGraph(std::move(ids), std::move(edges), window_);
}

MobilityGraph build_graph(std::span<const FlowRecord> records, const Interval& window, const NodeRegistry& registry)
{
    if (!(window.start < window.end)) throw ArgumentError("graph window start must precede its end");
    check_references(records, registry);

    // Contributions are summed in sorted order so the total does not depend
    // on record order.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> flows;
    for (const auto& r : records) {
        if (!window.contains(r.window_start)) continue;
        auto o = *registry.index_of(r.origin_id);
        auto d = *registry.index_of(r.destination_id);
        if (o == d) continue;
        flows[{o, d}].push_back(r.weight);
    }

    std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> totals;
    std::vector<bool> touched(registry.size(), false);
    for (auto& [key, weights] : flows) {
        std::sort(weights.begin(), weights.end());
        double sum = 0.0;
        for (double w : weights) sum += w;
        if (sum <= 0.0) continue;
        totals.emplace_back(key, sum);
        touched[key.first] = touched[key.second] = true;
    }

    std::vector<NodeIndex> remap(registry.size(), 0);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < registry.size(); ++i) {
        if (!touched[i]) continue;
        remap[i] = static_cast<NodeIndex>(ids.size());
        ids.push_back(registry[i].region_id);
    }
    std::vector<Edge> edges;
    edges.reserve(totals.size());
    for (const auto& [key, w] : totals) edges.push_back(Edge{remap[key.first], remap[key.second], w});
    return MobilityGraph(std::move(ids), std::move(edges), window);
}

std::vector<MobilityGraph> daily_series(std::span<const FlowRecord> records, const NodeRegistry& registry)
{
    check_references(records, registry);
    std::map<Date, std::vector<FlowRecord>> by_day;
    for (const auto& r : records) by_day[day_of(r.window_start)].push_back(r);
    std::vector<MobilityGraph> series;
    series.reserve(by_day.size());
    for (const auto& [day, day_records] : by_day)
        series.push_back(build_graph(day_records, Interval{TimePoint{day}, TimePoint{day + std::chrono::days{1}}}, registry));
    return series;
}

ComponentLabeling weak_components(std::span<const std::string> node_ids, std::span<const Edge> edges)
{
    const auto n = node_ids.size();
    UnionFind uf(n);
    std::vector<bool> touched(n, false);
    for (const auto& e : edges) {
        touched[e.origin] = touched[e.destination] = true;
        uf.unite(e.origin, e.destination);
    }

    ComponentLabeling out;
    out.label.assign(n, kNoComponent);
    std::vector<std::uint32_t> id_of_root(n, kNoComponent);
    std::vector<std::size_t> smallest_id;
    for (std::size_t v = 0; v < n; ++v) {
        if (!touched[v]) continue;
        auto root = uf.find(static_cast<std::uint32_t>(v));
        if (id_of_root[root] == kNoComponent) {
            id_of_root[root] = static_cast<std::uint32_t>(out.sizes.size());
            out.sizes.push_back(0);
            smallest_id.push_back(v);
        }
        auto c = id_of_root[root];
        out.label[v] = c;
        ++out.sizes[c];
        if (node_ids[v] < node_ids[smallest_id[c]]) smallest_id[c] = v;
    }
    out.component_count = out.sizes.size();
    for (std::uint32_t c = 0; c < out.sizes.size(); ++c) {
        if (out.lwcc_id == kNoComponent || out.sizes[c] > out.lwcc_size ||
            (out.sizes[c] == out.lwcc_size && node_ids[smallest_id[c]] < node_ids[smallest_id[out.lwcc_id]])) {
            out.lwcc_id = c;
            out.lwcc_size = out.sizes[c];
        }
    }
    return out;
}

ComponentLabeling weak_components(const MobilityGraph& graph)
{
    return weak_components(graph.node_ids(), graph.edges());
}

double residual_edge_fraction(const MobilityGraph& graph, const MobilityGraph& baseline, ResidualMode mode)
{
    if (baseline.edge_count() == 0) throw ArgumentError("baseline graph has no edges");
    if (mode == ResidualMode::weight_mass) return graph.total_weight() / baseline.total_weight();
    return static_cast<double>(graph.edge_count()) / static_cast<double>(baseline.edge_count());
}

LockdownWindows lockdown_windows(Date lockdown, int pre_days, int post_days)
{
    if (pre_days < 1 || post_days < 1) throw ArgumentError("window lengths must be at least one day");
    TimePoint at{lockdown};
    return LockdownWindows{make_interval(at - std::chrono::days{pre_days}, at),
                           make_interval(at, at + std::chrono::days{post_days})};
}

} // namespace mobnet
