#include "mobnet/ingest.hpp"

#include "csv.hpp"
#include "mobnet/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>

namespace mobnet {

namespace {

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "': file not found or unreadable");
    return in;
}

std::string format_weight(double w)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
    return std::string(buf, ptr);
}

} // namespace

void NodeRegistry::add(NodeSite site)
{
    if (site.region_id.empty()) throw ValidationError("empty region_id");
    if (!(site.latitude >= -90.0 && site.latitude <= 90.0))
        throw ValidationError("latitude " + format_weight(site.latitude) + " of '" + site.region_id +
                              "' outside [-90, 90]");
    if (!(site.longitude >= -180.0 && site.longitude <= 180.0))
        throw ValidationError("longitude " + format_weight(site.longitude) + " of '" + site.region_id +
                              "' outside [-180, 180]");
    auto [it, inserted] = index_.emplace(site.region_id, sites_.size());
    if (!inserted) throw ValidationError("duplicate region_id '" + site.region_id + "'");
    sites_.push_back(std::move(site));
}

std::optional<std::size_t> NodeRegistry::index_of(std::string_view region_id) const
{
    auto it = index_.find(std::string(region_id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<FlowRecord> parse_flow_records(std::istream& in)
{
    csv::expect_header(in, kFlowCsvHeader);
    std::vector<FlowRecord> records;
    std::string line;
    std::size_t line_no = 1;
    while (csv::read_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = csv::split_row(line, line_no);
        if (fields.size() != 4)
            throw ParseError("expected 4 fields, found " + std::to_string(fields.size()), line_no,
                             std::min<std::size_t>(fields.size() + 1, 5));
        if (fields[0].empty()) throw ParseError("empty origin_id", line_no, 1);
        if (fields[1].empty()) throw ParseError("empty destination_id", line_no, 2);
        FlowRecord r;
        r.origin_id = std::move(fields[0]);
        r.destination_id = std::move(fields[1]);
        try {
            r.window_start = floor_to_flow_window(parse_rfc3339(fields[2]));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line_no, 3);
        }
        r.weight = csv::parse_double(fields[3], line_no, 4);
        if (r.weight < 0.0)
            throw ValidationError("line " + std::to_string(line_no) + ", column 4: negative weight " + fields[3]);
        records.push_back(std::move(r));
    }
    return records;
}

NodeRegistry parse_node_registry(std::istream& in)
{
    csv::expect_header(in, kRegistryCsvHeader);
    NodeRegistry registry;
    std::string line;
    std::size_t line_no = 1;
    while (csv::read_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = csv::split_row(line, line_no);
        if (fields.size() != 4)
            throw ParseError("expected 4 fields, found " + std::to_string(fields.size()), line_no,
                             std::min<std::size_t>(fields.size() + 1, 5));
        NodeSite site;
        site.region_id = std::move(fields[0]);
        site.name = std::move(fields[1]);
        site.latitude = csv::parse_double(fields[2], line_no, 3);
        site.longitude = csv::parse_double(fields[3], line_no, 4);
        try {
            registry.add(std::move(site));
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return registry;
}

std::vector<FlowRecord> read_flow_records(const std::string& path)
{
    auto in = open_input(path);
    try {
        return parse_flow_records(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

NodeRegistry read_node_registry(const std::string& path)
{
    auto in = open_input(path);
    try {
        return parse_node_registry(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_flow_records(std::ostream& out, std::span<const FlowRecord> records)
{
    out << kFlowCsvHeader << '\n';
    for (const auto& r : records) {
        out << csv::escape(r.origin_id) << ',' << csv::escape(r.destination_id) << ','
            << format_rfc3339(r.window_start) << ',' << format_weight(r.weight) << '\n';
    }
}

void write_node_registry(std::ostream& out, const NodeRegistry& registry)
{
    out << kRegistryCsvHeader << '\n';
    for (const auto& s : registry) {
        out << csv::escape(s.region_id) << ',' << csv::escape(s.name) << ',' << format_weight(s.latitude) << ','
            << format_weight(s.longitude) << '\n';
    }
}

std::vector<FlowRecord> filter_window(std::span<const FlowRecord> records, const Interval& window)
{
    if (!(window.start < window.end)) throw ArgumentError("filter window start must precede its end");
    std::vector<FlowRecord> out;
    for (const auto& r : records)
        if (window.contains(r.window_start)) out.push_back(r);
    return out;
}

void check_references(std::span<const FlowRecord> records, const NodeRegistry& registry)
{
    for (const auto& r : records) {
        if (!registry.contains(r.origin_id))
            throw ValidationError("flow record references unknown region '" + r.origin_id + "'");
        if (!registry.contains(r.destination_id))
            throw ValidationError("flow record references unknown region '" + r.destination_id + "'");
    }
}

} // namespace mobnet
