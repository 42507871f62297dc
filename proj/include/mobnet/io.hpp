#pragma once

#include "mobnet/graph.hpp"
#include "mobnet/metrics.hpp"
#include "mobnet/percolation.hpp"

#include <json.hpp>

#include <iosfwd>
#include <span>
#include <string>

namespace mobnet {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

void write_edge_list(std::ostream& out, const MobilityGraph& graph);
/// Window bounds plus node and edge counts.
nlohmann::json graph_sidecar(const MobilityGraph& graph);
/// Inverse of write_edge_list + graph_sidecar.
MobilityGraph read_edge_list(std::istream& edges, const nlohmann::json& sidecar, const NodeRegistry& registry);

struct ConnectivityRow {
    Date day;
    std::size_t num_wcc;
    std::size_t lwcc_size;
};

void write_connectivity_csv(std::ostream& out, std::span<const ConnectivityRow> rows);
void write_efficiency_csv(std::ostream& out, std::span<const EfficiencyGini> rows);
void write_nodal_efficiency_csv(std::ostream& out, const MobilityGraph& graph, const EfficiencyReport& report);
void write_trace_header(std::ostream& out);
void write_trace_rows(std::ostream& out, const PercolationTrace& trace);
void write_persistence_csv(std::ostream& out, const PersistenceMap& persistence);
void write_overlay_csv(std::ostream& out, std::span<const OverlayPoint> points);

} // namespace mobnet
