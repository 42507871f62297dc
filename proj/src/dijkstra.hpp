#pragma once

#include "mobnet/graph.hpp"

#include <limits>
#include <span>
#include <vector>

namespace mobnet::detail {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();
inline constexpr NodeIndex kNoParent = std::numeric_limits<NodeIndex>::max();

/// Global efficiency from per-source reciprocal sums, reduced in index order.
inline double global_from_rows(std::span<const double> row_sums)
{
    const auto n = static_cast<double>(row_sums.size());
    double total = 0.0;
    for (double s : row_sums) total += s;
    return total / (n * (n - 1.0));
}

/// Reusable buffers for repeated single-source runs on one graph.
class DijkstraWorkspace {
public:
    explicit DijkstraWorkspace(std::size_t n) : distance_(n, kUnreachable) {}

    /// Fills distances from `source` with edge length 1/w.
    const std::vector<double>& run(const MobilityGraph& graph, NodeIndex source);

    /// As above, also storing each reached node's shortest-path predecessor
    /// in `parent` (kNoParent for the source and unreached nodes).
    const std::vector<double>& run(const MobilityGraph& graph, NodeIndex source, std::span<NodeIndex> parent);

    /// Sum of 1/d over reachable targets other than the source, in index order.
    double reciprocal_sum(NodeIndex source) const;

private:
    template <typename OnImprove>
    const std::vector<double>& search(const MobilityGraph& graph, NodeIndex source, OnImprove&& on_improve);

    std::vector<double> distance_;
    std::vector<std::pair<double, NodeIndex>> heap_;
};

} // namespace mobnet::detail
