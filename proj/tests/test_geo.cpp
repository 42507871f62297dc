#include "mobnet/errors.hpp"
#include "mobnet/geo.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace mobnet;

namespace {

NodeRegistry sites(std::initializer_list<std::pair<double, double>> lon_lat)
{
    NodeRegistry reg;
    int i = 0;
    for (auto [lon, lat] : lon_lat) reg.add({"S" + std::to_string(i++), "", lat, lon});
    return reg;
}

double signed_area(const std::vector<GeoPoint>& ring)
{
    double a = 0.0;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) a += ring[i].lon * ring[i + 1].lat - ring[i + 1].lon * ring[i].lat;
    return 0.5 * a;
}

} // namespace

TEST_CASE("single site owns the whole box")
{
    BoundingBox box{0, 40, 4, 44};
    auto cells = voronoi(sites({{2, 42}}), box);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].area() == doctest::Approx(box.area()));
    CHECK(cells[0].ring.size() == 5);
    CHECK(cells[0].ring.front() == cells[0].ring.back());
}

TEST_CASE("mirror-symmetric pair splits the box along the bisector")
{
    BoundingBox box{0, 40, 4, 44};
    auto cells = voronoi(sites({{1, 42}, {3, 42}}), box);
    CHECK(cells[0].area() == doctest::Approx(cells[1].area()));
    for (const auto& p : cells[0].ring) CHECK(p.lon <= 2.0 + 1e-12);
    for (const auto& p : cells[1].ring) CHECK(p.lon >= 2.0 - 1e-12);
}

TEST_CASE("four corners of a centred square give congruent quadrants")
{
    BoundingBox box{-2, -2, 2, 2};
    auto cells = voronoi(sites({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}), box);
    for (const auto& c : cells) {
        CHECK(c.area() == doctest::Approx(4.0));
        CHECK(c.ring.size() == 5);
    }
    CHECK(oracle::grid_agreement(cells, box, 512) >= 0.995);
}

TEST_CASE("cells tile the box and contain their nearest points")
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 5; ++trial) {
        BoundingBox box{-5.0, 41.0, 9.5, 51.5};
        std::uniform_real_distribution<double> lon(box.min_lon + 0.01, box.max_lon - 0.01);
        std::uniform_real_distribution<double> lat(box.min_lat + 0.01, box.max_lat - 0.01);
        NodeRegistry reg;
        for (int i = 0; i < 150; ++i) reg.add({"P" + std::to_string(i), "", lat(rng), lon(rng)});
        auto cells = voronoi(reg, box);
        double total = 0.0;
        for (const auto& c : cells) {
            total += c.area();
            CHECK(c.ring.size() >= 4);
            CHECK(signed_area(c.ring) > 0.0); // counter-clockwise
            CHECK(oracle::inside(c.ring, c.site));
        }
        CHECK(total == doctest::Approx(box.area()).epsilon(1e-6));
        CHECK(oracle::raster_agreement(cells, box, 10000, 100 + trial) >= 0.999);

        auto again = voronoi(reg, box);
        for (std::size_t i = 0; i < cells.size(); ++i) CHECK(cells[i].ring == again[i].ring);
    }
}

TEST_CASE("voronoi input validation")
{
    BoundingBox box{0, 0, 10, 10};
    CHECK_THROWS_AS(voronoi(sites({{1, 1}, {1, 1}}), box), ValidationError);
    CHECK_THROWS_AS(voronoi(sites({{1, 1}, {11, 1}}), box), ValidationError);
    CHECK_THROWS_AS(voronoi(sites({{0, 5}}), box), ValidationError);
    CHECK_THROWS_AS(voronoi(NodeRegistry{}, box), ValidationError);
}

TEST_CASE("default bounds pad the registry extent")
{
    auto b = default_bounds(sites({{0, 40}, {10, 50}}));
    CHECK(b.min_lon == doctest::Approx(-0.5));
    CHECK(b.max_lat == doctest::Approx(50.5));
    auto single = default_bounds(sites({{3, 3}}));
    CHECK(single.strictly_contains({3, 3}));
}

TEST_CASE("persistence GeoJSON export")
{
    BoundingBox box{0, 40, 4, 44};
    auto cells = voronoi(sites({{1, 42}, {3, 42}}), box);
    PersistenceMap rho{{"S0", "S1"}, {1.0, 0.5}};
    auto doc = export_persistence_geojson(cells, rho);
    CHECK(doc["type"] == "FeatureCollection");
    REQUIRE(doc["features"].size() == 2);
    CHECK(doc["features"][0]["properties"]["persistence"] == 1.0);
    CHECK(doc["features"][1]["properties"]["persistence"] == 0.5);
    CHECK(doc["features"][1]["properties"]["region_id"] == "S1");
    const auto& ring = doc["features"][0]["geometry"]["coordinates"][0];
    CHECK(ring.front() == ring.back());
    CHECK(ring[0].size() == 2);

    CHECK(export_persistence_geojson({}, rho)["features"].empty());

    PersistenceMap partial{{"S1"}, {0.25}};
    auto doc2 = export_persistence_geojson(cells, partial);
    CHECK(doc2["features"][0]["properties"]["persistence"] == 0.0);

    auto broken = cells;
    broken[0].ring.resize(2);
    CHECK_THROWS_AS(export_persistence_geojson(broken, rho), InvariantError);
}
