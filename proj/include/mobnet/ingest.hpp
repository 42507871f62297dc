#pragma once

#include "mobnet/timeutil.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mobnet {

/// One origin->destination flow measurement in one 8-hour window.
struct FlowRecord {
    std::string origin_id;
    std::string destination_id;
    TimePoint window_start;
    double weight = 0.0;

    friend bool operator==(const FlowRecord&, const FlowRecord&) = default;
};

struct NodeSite {
    std::string region_id;
    std::string name;
    double latitude = 0.0;
    double longitude = 0.0;

    friend bool operator==(const NodeSite&, const NodeSite&) = default;
};

/// Ordered set of sites with unique region ids. Iteration order is
/// insertion (file) order.
class NodeRegistry {
public:
    NodeRegistry() = default;

    /// Throws ValidationError on duplicate id or out-of-range coordinates.
    void add(NodeSite site);

    std::size_t size() const noexcept { return sites_.size(); }
    bool empty() const noexcept { return sites_.empty(); }
    const std::vector<NodeSite>& sites() const noexcept { return sites_; }
    const NodeSite& operator[](std::size_t i) const { return sites_[i]; }

    std::optional<std::size_t> index_of(std::string_view region_id) const;
    bool contains(std::string_view region_id) const { return index_of(region_id).has_value(); }

    auto begin() const noexcept { return sites_.begin(); }
    auto end() const noexcept { return sites_.end(); }

    friend bool operator==(const NodeRegistry& a, const NodeRegistry& b) { return a.sites_ == b.sites_; }

private:
    std::vector<NodeSite> sites_;
    std::unordered_map<std::string, std::size_t> index_;
};

inline constexpr std::string_view kFlowCsvHeader = "origin_id,destination_id,window_start,weight";
inline constexpr std::string_view kRegistryCsvHeader = "region_id,name,lat,lon";

std::vector<FlowRecord> parse_flow_records(std::istream& in);
NodeRegistry parse_node_registry(std::istream& in);

std::vector<FlowRecord> read_flow_records(const std::string& path);
NodeRegistry read_node_registry(const std::string& path);

void write_flow_records(std::ostream& out, std::span<const FlowRecord> records);
void write_node_registry(std::ostream& out, const NodeRegistry& registry);

/// Records with window.start <= window_start < window.end, order preserved.
std::vector<FlowRecord> filter_window(std::span<const FlowRecord> records, const Interval& window);

/// Throws ValidationError naming the first id missing from the registry.
void check_references(std::span<const FlowRecord> records, const NodeRegistry& registry);

} // namespace mobnet
