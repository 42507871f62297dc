#include "mobnet/geo.hpp"

#include "mobnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>

namespace mobnet {

namespace {

struct Vec2 {
    double x;
    double y;
};

Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm_sq(Vec2 a) { return dot(a, a); }

struct Projection {
    double scale_x;

    explicit Projection(const BoundingBox& box)
        : scale_x(std::cos((box.min_lat + box.max_lat) * 0.5 * std::numbers::pi / 180.0))
    {
    }

    Vec2 forward(GeoPoint p) const { return {p.lon * scale_x, p.lat}; }
    GeoPoint inverse(Vec2 v) const { return {v.x / scale_x, v.y}; }
};

// Keeps the part of a convex polygon closer to `site` than to `other`.
std::vector<Vec2> clip_to_bisector(const std::vector<Vec2>& poly, Vec2 site, Vec2 other)
{
    const Vec2 normal = other - site;
    const double offset = 0.5 * (norm_sq(other) - norm_sq(site));
    auto side = [&](Vec2 p) { return dot(normal, p) - offset; };

    std::vector<Vec2> out;
    out.reserve(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        Vec2 a = poly[i];
        Vec2 b = poly[(i + 1) % poly.size()];
        double fa = side(a);
        double fb = side(b);
        if (fa <= 0.0) out.push_back(a);
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
            double t = fa / (fa - fb);
            out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
    return out;
}

void drop_near_duplicates(std::vector<Vec2>& poly, double eps_sq)
{
    std::vector<Vec2> out;
    out.reserve(poly.size());
    for (const auto& p : poly)
        if (out.empty() || norm_sq(p - out.back()) > eps_sq) out.push_back(p);
    while (out.size() > 1 && norm_sq(out.front() - out.back()) <= eps_sq) out.pop_back();
    poly = std::move(out);
}

void check_ring(const VoronoiCell& cell)
{
    if (cell.ring.size() < 4 || !(cell.ring.front() == cell.ring.back()))
        throw InvariantError("cell '" + cell.region_id + "' is not a closed ring with at least 3 vertices");
}

nlohmann::json polygon_geometry(const VoronoiCell& cell)
{
    check_ring(cell);
    auto ring = nlohmann::json::array();
    for (const auto& p : cell.ring) ring.push_back({p.lon, p.lat});
    return {{"type", "Polygon"}, {"coordinates", nlohmann::json::array({ring})}};
}

} // namespace

double VoronoiCell::area() const
{
    double twice = 0.0;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i)
        twice += ring[i].lon * ring[i + 1].lat - ring[i + 1].lon * ring[i].lat;
    return 0.5 * std::abs(twice);
}

BoundingBox default_bounds(const NodeRegistry& registry, double pad)
{
    if (registry.empty()) throw ArgumentError("cannot bound an empty registry");
    BoundingBox box{registry[0].longitude, registry[0].latitude, registry[0].longitude, registry[0].latitude};
    for (const auto& s : registry) {
        box.min_lon = std::min(box.min_lon, s.longitude);
        box.max_lon = std::max(box.max_lon, s.longitude);
        box.min_lat = std::min(box.min_lat, s.latitude);
        box.max_lat = std::max(box.max_lat, s.latitude);
    }
    // A degenerate extent (single site or collinear sites) still gets a box.
    const double pad_lon = std::max((box.max_lon - box.min_lon) * pad, 0.01);
    const double pad_lat = std::max((box.max_lat - box.min_lat) * pad, 0.01);
    box.min_lon = std::max(box.min_lon - pad_lon, -180.0);
    box.max_lon = std::min(box.max_lon + pad_lon, 180.0);
    box.min_lat = std::max(box.min_lat - pad_lat, -90.0);
    box.max_lat = std::min(box.max_lat + pad_lat, 90.0);
    return box;
}

double projected_distance_sq(GeoPoint a, GeoPoint b, double mid_lat)
{
    const double sx = std::cos(mid_lat * std::numbers::pi / 180.0);
    const double dx = (a.lon - b.lon) * sx;
    const double dy = a.lat - b.lat;
    return dx * dx + dy * dy;
}

std::vector<VoronoiCell> voronoi(const NodeRegistry& registry, const BoundingBox& bounds)
{
    if (!(bounds.min_lon < bounds.max_lon && bounds.min_lat < bounds.max_lat))
        throw ArgumentError("bounding box is empty");
    if (registry.empty()) throw ValidationError("voronoi needs at least one site");

    const auto n = registry.size();
    std::vector<GeoPoint> sites;
    sites.reserve(n);
    for (const auto& s : registry) {
        GeoPoint p{s.longitude, s.latitude};
        if (!bounds.strictly_contains(p)) throw ValidationError("site '" + s.region_id + "' is not inside the bounds");
        sites.push_back(p);
    }
    {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        auto key = [&](std::size_t i) { return std::pair(sites[i].lon, sites[i].lat); };
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return key(a) < key(b); });
        for (std::size_t k = 1; k < n; ++k)
            if (key(order[k]) == key(order[k - 1]))
                throw ValidationError("sites '" + registry[order[k - 1]].region_id + "' and '" +
                                      registry[order[k]].region_id + "' share coordinates");
    }

    const Projection proj(bounds);
    std::vector<Vec2> projected;
    projected.reserve(n);
    for (auto p : sites) projected.push_back(proj.forward(p));
    const Vec2 lo = proj.forward({bounds.min_lon, bounds.min_lat});
    const Vec2 hi = proj.forward({bounds.max_lon, bounds.max_lat});
    const double diag_sq = norm_sq(hi - lo);

    std::vector<VoronoiCell> cells(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
    {
        std::vector<std::pair<double, std::size_t>> nearest;
        nearest.reserve(n);
#pragma omp for schedule(dynamic, 16)
        for (std::ptrdiff_t ii = 0; ii < count; ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            const Vec2 site = projected[i];
            nearest.clear();
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) nearest.emplace_back(norm_sq(projected[j] - site), j);
            std::sort(nearest.begin(), nearest.end());

            std::vector<Vec2> poly{{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}};
            for (const auto& [dist_sq, j] : nearest) {
                double reach_sq = 0.0;
                for (const auto& v : poly) reach_sq = std::max(reach_sq, norm_sq(v - site));
                // Bisectors of sites beyond twice the cell radius miss the cell.
                if (dist_sq > 4.0 * reach_sq) break;
                poly = clip_to_bisector(poly, site, projected[j]);
                drop_near_duplicates(poly, diag_sq * 1e-24);
            }

            VoronoiCell& cell = cells[i];
            cell.region_id = registry[i].region_id;
            cell.site = sites[i];
            cell.ring.reserve(poly.size() + 1);
            for (const auto& v : poly) cell.ring.push_back(proj.inverse(v));
            if (!cell.ring.empty()) cell.ring.push_back(cell.ring.front());
        }
    }
    for (const auto& cell : cells) check_ring(cell);
    return cells;
}

nlohmann::json export_persistence_geojson(std::span<const VoronoiCell> cells, const PersistenceMap& persistence)
{
    std::unordered_map<std::string_view, double> rho;
    for (std::size_t i = 0; i < persistence.region_ids.size(); ++i) rho[persistence.region_ids[i]] = persistence.rho[i];

    auto features = nlohmann::json::array();
    for (const auto& cell : cells) {
        auto it = rho.find(cell.region_id);
        features.push_back({{"type", "Feature"},
                            {"geometry", polygon_geometry(cell)},
                            {"properties", {{"region_id", cell.region_id}, {"persistence", it == rho.end() ? 0.0 : it->second}}}});
    }
    return {{"type", "FeatureCollection"}, {"features", features}};
}

nlohmann::json export_cells_geojson(std::span<const VoronoiCell> cells, const NodeRegistry& registry)
{
    auto features = nlohmann::json::array();
    for (const auto& cell : cells) {
        auto idx = registry.index_of(cell.region_id);
        features.push_back({{"type", "Feature"},
                            {"geometry", polygon_geometry(cell)},
                            {"properties", {{"region_id", cell.region_id}, {"name", idx ? registry[*idx].name : ""}}}});
    }
    return {{"type", "FeatureCollection"}, {"features", features}};
}

} // namespace mobnet
