#include "mobnet/io.hpp"

#include "csv.hpp"
#include "mobnet/errors.hpp"

#include <charconv>
#include <istream>
#include <ostream>

namespace mobnet {

std::string format_number(double v)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_edge_list(std::ostream& out, const MobilityGraph& graph)
{
    out << "origin_id,destination_id,weight\n";
    for (const auto& e : graph.edges())
        out << csv::escape(graph.node_id(e.origin)) << ',' << csv::escape(graph.node_id(e.destination)) << ','
            << format_number(e.weight) << '\n';
}

nlohmann::json graph_sidecar(const MobilityGraph& graph)
{
    return {{"window_start", format_rfc3339(graph.window().start)},
            {"window_end", format_rfc3339(graph.window().end)},
            {"node_count", graph.node_count()},
            {"edge_count", graph.edge_count()}};
}

MobilityGraph read_edge_list(std::istream& edges, const nlohmann::json& sidecar, const NodeRegistry& registry)
{
    Interval window;
    std::size_t node_count = 0;
    try {
        window = make_interval(parse_rfc3339(sidecar.at("window_start").get<std::string>()),
                               parse_rfc3339(sidecar.at("window_end").get<std::string>()));
        node_count = sidecar.at("node_count").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("graph sidecar: ") + e.what());
    }

    csv::expect_header(edges, "origin_id,destination_id,weight");
    std::vector<FlowRecord> records;
    std::string line;
    std::size_t line_no = 1;
    while (csv::read_line(edges, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto f = csv::split_row(line, line_no);
        if (f.size() != 3) throw ParseError("expected 3 fields", line_no);
        double w = csv::parse_double(f[2], line_no, 3);
        if (!(w > 0.0)) throw ValidationError("line " + std::to_string(line_no) + ": edge weight must be positive");
        records.push_back(FlowRecord{std::move(f[0]), std::move(f[1]), window.start, w});
    }
    auto graph = build_graph(records, window, registry);
    if (graph.node_count() != node_count || graph.edge_count() != records.size())
        throw ValidationError("edge list does not match its sidecar counts");
    return graph;
}

void write_connectivity_csv(std::ostream& out, std::span<const ConnectivityRow> rows)
{
    out << "date,num_wcc,lwcc_size\n";
    for (const auto& r : rows) out << format_date(r.day) << ',' << r.num_wcc << ',' << r.lwcc_size << '\n';
}

void write_efficiency_csv(std::ostream& out, std::span<const EfficiencyGini> rows)
{
    out << "date,global_efficiency,normalized_efficiency,gini_nodal_efficiency\n";
    if (rows.empty()) return;
    std::vector<double> global;
    for (const auto& r : rows) global.push_back(r.global_efficiency);
    auto normalized = normalize_series(global);
    for (std::size_t i = 0; i < rows.size(); ++i)
        out << format_date(rows[i].day) << ',' << format_number(rows[i].global_efficiency) << ','
            << format_number(normalized[i]) << ',' << format_number(rows[i].gini_nodal) << '\n';
}

void write_nodal_efficiency_csv(std::ostream& out, const MobilityGraph& graph, const EfficiencyReport& report)
{
    out << "region_id,nodal_efficiency\n";
    for (NodeIndex i = 0; i < graph.node_count(); ++i)
        out << csv::escape(graph.node_id(i)) << ',' << format_number(report.nodal.at(i)) << '\n';
}

void write_trace_header(std::ostream& out)
{
    out << "direction,iteration,threshold,residual_edge_fraction,lwcc_size,num_wcc,global_efficiency\n";
}

void write_trace_rows(std::ostream& out, const PercolationTrace& trace)
{
    for (const auto& s : trace.steps)
        out << to_string(trace.direction) << ',' << s.iteration << ','
            << (s.threshold ? format_number(*s.threshold) : std::string()) << ','
            << format_number(s.residual_edge_fraction) << ',' << s.lwcc_size << ',' << s.component_count << ','
            << format_number(s.global_efficiency) << '\n';
}

void write_persistence_csv(std::ostream& out, const PersistenceMap& persistence)
{
    out << "region_id,persistence\n";
    for (std::size_t i = 0; i < persistence.region_ids.size(); ++i)
        out << csv::escape(persistence.region_ids[i]) << ',' << format_number(persistence.rho[i]) << '\n';
}

void write_overlay_csv(std::ostream& out, std::span<const OverlayPoint> points)
{
    out << "period,week_start,residual_edge_fraction,lwcc_size,normalized_efficiency\n";
    for (const auto& p : points)
        out << to_string(p.period) << ',' << format_date(p.week_start) << ',' << format_number(p.residual_edge_fraction)
            << ',' << p.lwcc_size << ',' << format_number(p.global_efficiency_normalized) << '\n';
}

} // namespace mobnet
