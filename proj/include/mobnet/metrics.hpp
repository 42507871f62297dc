#pragma once

#include "mobnet/graph.hpp"

#include <span>
#include <vector>

namespace mobnet {

/// Shortest distances from one source; unreachable nodes hold +infinity.
struct DistanceRow {
    NodeIndex source = 0;
    std::vector<double> distance;
};

/// Dijkstra over directed edges with length 1/w, so heavier flows are
/// closer. Throws ArgumentError for an out-of-range source.
DistanceRow shortest_paths_from(const MobilityGraph& graph, NodeIndex source);

struct EfficiencyReport {
    double global = 0.0;
    std::vector<double> nodal;
};

/// Global and nodal efficiency over ordered pairs; unreachable pairs
/// contribute 0. Sources are processed in parallel, the reduction runs in
/// index order so results are bit-identical to serial::efficiency.
/// Throws ArgumentError when the graph has fewer than 2 nodes.
EfficiencyReport efficiency(const MobilityGraph& graph);

/// Like efficiency() but returns 0 for graphs with fewer than 2 nodes.
double global_efficiency_or_zero(const MobilityGraph& graph);

namespace serial {

/// Single-threaded reference for efficiency().
EfficiencyReport efficiency(const MobilityGraph& graph);

} // namespace serial

/// Divides by the series maximum. Throws ArgumentError if no value is > 0.
std::vector<double> normalize_series(std::span<const double> values);

/// Half the relative mean absolute difference. Throws ValidationError on a
/// negative entry and ArgumentError on an empty vector or zero mean.
double gini(std::span<const double> values);

struct EfficiencyGini {
    Date day;
    double global_efficiency;
    double gini_nodal;
};

std::vector<EfficiencyGini> efficiency_gini_series(std::span<const MobilityGraph> series);

} // namespace mobnet
