#pragma once

#include "mobnet/graph.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mobnet {

enum class SweepDirection { increasing, decreasing };

std::string_view to_string(SweepDirection d);
SweepDirection parse_direction(std::string_view text);

/// Which node count the efficiency of a residual graph is averaged over.
/// `original` keeps n fixed at the input graph's node count, which makes
/// efficiency non-increasing along the sweep; `support` uses only nodes
/// still touching an edge.
enum class EfficiencyNodeSet { original, support };

struct SweepOptions {
    bool compute_efficiency = true;
    EfficiencyNodeSet node_set = EfficiencyNodeSet::original;
};

/// State after one iteration. Iteration 0 is the untouched graph and has no
/// threshold.
struct PercolationStep {
    int iteration = 0;
    std::optional<double> threshold;
    std::size_t edge_count = 0;
    double residual_edge_fraction = 1.0;
    std::size_t lwcc_size = 0;
    std::size_t component_count = 0;
    double global_efficiency = 0.0;
};

struct PercolationTrace {
    SweepDirection direction = SweepDirection::increasing;
    std::vector<PercolationStep> steps;

    /// Number of deletion iterations (distinct weights K).
    int iterations() const { return static_cast<int>(steps.size()) - 1; }
};

/// Sorted distinct edge weights, ascending.
std::vector<double> distinct_weights(const MobilityGraph& graph);

/// Weight-ordered bond percolation. With K distinct weights w_1 < ... < w_K,
/// iteration i removes every edge with weight <= w_i (increasing) or
/// >= w_{K+1-i} (decreasing). Throws ArgumentError on an edgeless graph.
PercolationTrace percolation_sweep(const MobilityGraph& graph, SweepDirection direction,
                                   const SweepOptions& options = {});

/// Per-node persistence rho in [0, 1], indexed like the graph's nodes.
struct PersistenceMap {
    std::vector<std::string> region_ids;
    std::vector<double> rho;

    /// 0 for ids not in the map.
    double at(std::string_view region_id) const;
};

/// rho(v) = M_v / (K - 1), where M_v is the last iteration of v's unbroken
/// LWCC membership starting from the full graph (nodes outside the initial
/// LWCC get 0). For K = 1, rho is 1 on the initial LWCC and 0 elsewhere.
PersistenceMap node_persistence(const MobilityGraph& graph, SweepDirection direction);

enum class Period { before, during, after };

std::string_view to_string(Period p);

struct OverlayPoint {
    Period period = Period::before;
    Date week_start;
    double residual_edge_fraction = 0.0;
    std::size_t lwcc_size = 0;
    double global_efficiency_normalized = 0.0;
};

/// One point per ISO week (Monday start) that has records: each weekly graph
/// compared with the aggregate over `baseline`. The week holding `lockdown`
/// is `during`. Throws ArgumentError when the baseline graph is edgeless or
/// the baseline does not end by the lockdown date.
std::vector<OverlayPoint> empirical_overlay(std::span<const FlowRecord> records, const NodeRegistry& registry,
                                            Date lockdown, const Interval& baseline);

} // namespace mobnet
