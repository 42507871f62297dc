#include "dijkstra.hpp"

#include <algorithm>
#include <functional>

namespace mobnet::detail {

template <typename OnImprove>
const std::vector<double>& DijkstraWorkspace::search(const MobilityGraph& graph, NodeIndex source,
                                                     OnImprove&& on_improve)
{
    std::fill(distance_.begin(), distance_.end(), kUnreachable);
    heap_.clear();
    constexpr auto later = std::greater<>{};
    distance_[source] = 0.0;
    heap_.emplace_back(0.0, source);
    while (!heap_.empty()) {
        std::pop_heap(heap_.begin(), heap_.end(), later);
        auto [d, u] = heap_.back();
        heap_.pop_back();
        if (d > distance_[u]) continue;
        for (const auto& out : graph.out_edges(u)) {
            double candidate = d + 1.0 / out.weight;
            if (candidate < distance_[out.target]) {
                distance_[out.target] = candidate;
                on_improve(out.target, u);
                heap_.emplace_back(candidate, out.target);
                std::push_heap(heap_.begin(), heap_.end(), later);
            }
        }
    }
    return distance_;
}

const std::vector<double>& DijkstraWorkspace::run(const MobilityGraph& graph, NodeIndex source)
{
    return search(graph, source, [](NodeIndex, NodeIndex) {});
}

const std::vector<double>& DijkstraWorkspace::run(const MobilityGraph& graph, NodeIndex source,
                                                  std::span<NodeIndex> parent)
{
    std::fill(parent.begin(), parent.end(), kNoParent);
    return search(graph, source, [parent](NodeIndex v, NodeIndex u) { parent[v] = u; });
}

double DijkstraWorkspace::reciprocal_sum(NodeIndex source) const
{
    double sum = 0.0;
    for (std::size_t j = 0; j < distance_.size(); ++j) {
        if (j == source || distance_[j] == kUnreachable) continue;
        sum += 1.0 / distance_[j];
    }
    return sum;
}

} // namespace mobnet::detail
