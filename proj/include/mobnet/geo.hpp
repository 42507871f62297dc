#pragma once

#include "mobnet/ingest.hpp"
#include "mobnet/percolation.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace mobnet {

struct GeoPoint {
    double lon = 0.0;
    double lat = 0.0;

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct BoundingBox {
    double min_lon = 0.0;
    double min_lat = 0.0;
    double max_lon = 0.0;
    double max_lat = 0.0;

    bool strictly_contains(GeoPoint p) const noexcept
    {
        return p.lon > min_lon && p.lon < max_lon && p.lat > min_lat && p.lat < max_lat;
    }
    double area() const noexcept { return (max_lon - min_lon) * (max_lat - min_lat); }
};

/// Registry extent padded by `pad` of its span on each side.
BoundingBox default_bounds(const NodeRegistry& registry, double pad = 0.05);

/// Voronoi cell as a closed counter-clockwise ring in (lon, lat).
struct VoronoiCell {
    std::string region_id;
    GeoPoint site;
    std::vector<GeoPoint> ring;

    /// Shoelace area in squared degrees.
    double area() const;
};

/// Cells are computed in an equirectangular projection centred on the box
/// (x = lon * cos(mid_lat), y = lat) and clipped to the box. One cell per
/// site, in registry order. Throws ValidationError on coincident sites or
/// sites not strictly inside `bounds`.
std::vector<VoronoiCell> voronoi(const NodeRegistry& registry, const BoundingBox& bounds);

/// Distance used for nearest-site decisions, matching voronoi().
double projected_distance_sq(GeoPoint a, GeoPoint b, double mid_lat);

/// RFC 7946 FeatureCollection with `region_id` and `persistence` properties.
nlohmann::json export_persistence_geojson(std::span<const VoronoiCell> cells, const PersistenceMap& persistence);

/// Cells only, with `region_id` and `name` properties.
nlohmann::json export_cells_geojson(std::span<const VoronoiCell> cells, const NodeRegistry& registry);

} // namespace mobnet
