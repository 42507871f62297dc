#pragma once

#include "mobnet/ingest.hpp"
#include "mobnet/timeutil.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mobnet {

using NodeIndex = std::uint32_t;

struct Edge {
    NodeIndex origin;
    NodeIndex destination;
    double weight;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct OutEdge {
    NodeIndex target;
    double weight;
};

/// Weighted directed graph aggregated over one time window.
///
/// Invariants: at most one edge per ordered pair, no self-loops, every
/// weight strictly positive. Edges are kept sorted by (origin,
/// destination). The node list may contain isolated nodes; graphs
/// produced by build_graph contain only nodes touching an edge.
class MobilityGraph {
public:
    MobilityGraph() = default;

    /// Throws InvariantError if `edges` break the class invariants.
    MobilityGraph(std::vector<std::string> node_ids, std::vector<Edge> edges, Interval window);

    std::size_t node_count() const noexcept { return node_ids_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const std::vector<std::string>& node_ids() const noexcept { return node_ids_; }
    const std::string& node_id(NodeIndex i) const { return node_ids_.at(i); }
    std::optional<NodeIndex> index_of(std::string_view id) const;

    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const OutEdge> out_edges(NodeIndex i) const
    {
        return std::span<const OutEdge>(adjacency_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
    }

    const Interval& window() const noexcept { return window_; }
    double total_weight() const noexcept;

    /// Subgraph over the same node list holding only the given edges.
    MobilityGraph with_edges(std::vector<Edge> edges) const;

    /// Copy with isolated nodes removed (indices renumbered, order kept).
    MobilityGraph support() const;

private:
    std::vector<std::string> node_ids_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<OutEdge> adjacency_;
    Interval window_{};
};

/// Sums in-window records per ordered pair. Self-loops and zero totals are
/// dropped; node order follows the registry. Throws ValidationError if any
/// record references a region missing from the registry.
MobilityGraph build_graph(std::span<const FlowRecord> records, const Interval& window,
                          const NodeRegistry& registry);

/// One graph per UTC calendar day that has records, ascending.
std::vector<MobilityGraph> daily_series(std::span<const FlowRecord> records, const NodeRegistry& registry);

inline constexpr std::uint32_t kNoComponent = std::numeric_limits<std::uint32_t>::max();

/// Weakly connected components of a graph's support (isolated nodes get
/// kNoComponent and are not counted). Component ids follow the order of
/// their smallest node index.
struct ComponentLabeling {
    std::vector<std::uint32_t> label;
    std::vector<std::size_t> sizes;
    std::size_t component_count = 0;
    std::uint32_t lwcc_id = kNoComponent;
    std::size_t lwcc_size = 0;

    bool in_lwcc(NodeIndex v) const { return lwcc_id != kNoComponent && label[v] == lwcc_id; }
};

/// Ties for the largest component go to the one holding the
/// lexicographically smallest region id.
ComponentLabeling weak_components(const MobilityGraph& graph);

/// Same, over an explicit edge list on `node_ids`. Used by the sweep.
ComponentLabeling weak_components(std::span<const std::string> node_ids, std::span<const Edge> edges);

enum class ResidualMode { edges, weight_mass };

/// |E(graph)| / |E(baseline)|, or total weight ratio in weight_mass mode.
double residual_edge_fraction(const MobilityGraph& graph, const MobilityGraph& baseline,
                              ResidualMode mode = ResidualMode::edges);

/// The pre/post intervention windows: [d - pre, d) and [d, d + post).
struct LockdownWindows {
    Interval pre;
    Interval post;
};

LockdownWindows lockdown_windows(Date lockdown, int pre_days, int post_days);

} // namespace mobnet
