#include "mobnet/errors.hpp"
#include "mobnet/metrics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace mobnet;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

MobilityGraph path_abc() { return MobilityGraph({"A", "B", "C"}, {{0, 1, 2.0}, {1, 2, 4.0}}, Interval{}); }

MobilityGraph star4()
{
    std::vector<Edge> e;
    for (NodeIndex leaf = 1; leaf <= 3; ++leaf) {
        e.push_back({0, leaf, 1.0});
        e.push_back({leaf, 0, 1.0});
    }
    return MobilityGraph({"A", "B", "C", "D"}, e, Interval{});
}

} // namespace

TEST_CASE("shortest_paths_from uses reciprocal weights")
{
    auto row = shortest_paths_from(path_abc(), 0);
    CHECK(row.distance == std::vector<double>{0.0, 0.5, 0.75});

    auto sink = shortest_paths_from(path_abc(), 2);
    CHECK(sink.distance[2] == 0.0);
    CHECK(sink.distance[0] == kInf);
    CHECK(sink.distance[1] == kInf);

    // Direct light edge versus a heavy two-hop path.
    MobilityGraph g({"A", "B", "C"}, {{0, 2, 1.0}, {0, 1, 10.0}, {1, 2, 10.0}}, Interval{});
    CHECK(shortest_paths_from(g, 0).distance[2] == doctest::Approx(0.2));

    CHECK_THROWS_AS(shortest_paths_from(path_abc(), 3), ArgumentError);
}

TEST_CASE("efficiency examples")
{
    MobilityGraph pair({"A", "B"}, {{0, 1, 1.0}, {1, 0, 1.0}}, Interval{});
    CHECK(efficiency(pair).global == 1.0);

    MobilityGraph disconnected({"A", "B"}, {}, Interval{});
    CHECK(efficiency(disconnected).global == 0.0);

    // 1/0.5 + 1/0.25 + 1/0.75 over 6 ordered pairs.
    auto oracle = oracle::efficiency(3, {{0, 1, 2.0}, {1, 2, 4.0}});
    auto r = efficiency(path_abc());
    CHECK(oracle.global == doctest::Approx(22.0 / 18.0));
    CHECK(r.global == doctest::Approx(oracle.global).epsilon(1e-12));
    CHECK(r.nodal[2] == 0.0);

    CHECK_THROWS_AS(efficiency(MobilityGraph({"A"}, {}, Interval{})), ArgumentError);
    CHECK_THROWS_AS(efficiency(MobilityGraph{}), ArgumentError);
    CHECK(global_efficiency_or_zero(MobilityGraph{}) == 0.0);
}

TEST_CASE("parallel and serial efficiency agree bit for bit")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = oracle::random_graph(rng, 60, 0.08);
        auto par = efficiency(g);
        auto ser = serial::efficiency(g);
        CHECK(par.global == ser.global);
        CHECK(par.nodal == ser.nodal);
    }
}

TEST_CASE("efficiency matches the relaxation oracle and its identities")
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> size(2, 25);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = oracle::random_graph(rng, size(rng), 0.2);
        auto edges = std::vector<Edge>(g.edges().begin(), g.edges().end());
        auto expect = oracle::efficiency(g.node_count(), edges);
        auto got = efficiency(g);
        CHECK(got.global == doctest::Approx(expect.global).epsilon(1e-9));
        double mean = 0.0;
        for (std::size_t i = 0; i < got.nodal.size(); ++i) {
            CHECK(got.nodal[i] == doctest::Approx(expect.nodal[i]).epsilon(1e-9));
            CHECK(got.nodal[i] >= 0.0);
            mean += got.nodal[i];
        }
        mean /= static_cast<double>(got.nodal.size());
        CHECK(got.global == doctest::Approx(mean).epsilon(1e-12));

        auto d = oracle::all_pairs_relaxation(g.node_count(), edges);
        for (NodeIndex s = 0; s < g.node_count(); ++s) {
            auto row = shortest_paths_from(g, s);
            for (std::size_t t = 0; t < g.node_count(); ++t) {
                if (d[s][t] == kInf)
                    CHECK(row.distance[t] == kInf);
                else
                    CHECK(row.distance[t] == doctest::Approx(d[s][t]).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("deleting an edge never raises any efficiency")
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = oracle::random_graph(rng, 15, 0.25);
        auto edges = std::vector<Edge>(g.edges().begin(), g.edges().end());
        std::shuffle(edges.begin(), edges.end(), rng);
        auto prev = efficiency(g);
        while (!edges.empty()) {
            edges.pop_back();
            auto next = efficiency(g.with_edges(edges));
            CHECK(next.global <= prev.global);
            for (std::size_t i = 0; i < next.nodal.size(); ++i) CHECK(next.nodal[i] <= prev.nodal[i]);
            prev = next;
        }
    }
}

TEST_CASE("scaling weights scales efficiency and leaves its Gini unchanged")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = oracle::random_graph(rng, 20, 0.2);
        if (g.edge_count() == 0) continue;
        const double c = 3.7;
        auto edges = std::vector<Edge>(g.edges().begin(), g.edges().end());
        for (auto& e : edges) e.weight *= c;
        auto base = efficiency(g);
        auto scaled = efficiency(g.with_edges(edges));
        CHECK(scaled.global == doctest::Approx(c * base.global).epsilon(1e-12));
        CHECK(gini(scaled.nodal) == doctest::Approx(gini(base.nodal)).epsilon(1e-12));
        auto row = shortest_paths_from(g, 0);
        auto srow = shortest_paths_from(g.with_edges(edges), 0);
        for (std::size_t t = 0; t < row.distance.size(); ++t)
            if (row.distance[t] != kInf) CHECK(srow.distance[t] == doctest::Approx(row.distance[t] / c).epsilon(1e-12));
    }
}

TEST_CASE("normalize_series")
{
    CHECK(normalize_series(std::vector<double>{2, 4, 1}) == std::vector<double>{0.5, 1.0, 0.25});
    CHECK(normalize_series(std::vector<double>{3, 3, 3}) == std::vector<double>{1, 1, 1});
    CHECK(normalize_series(std::vector<double>{3}) == std::vector<double>{1});
    CHECK_THROWS_AS(normalize_series(std::vector<double>{0, -1}), ArgumentError);
    CHECK_THROWS_AS(normalize_series(std::vector<double>{}), ArgumentError);
}

TEST_CASE("gini examples")
{
    CHECK(gini(std::vector<double>{5, 5, 5, 5}) == 0.0);
    CHECK(gini(std::vector<double>{0, 0, 0, 1}) == 0.75);
    CHECK(gini(std::vector<double>{7}) == 0.0);
    CHECK(oracle::gini_double_sum({0, 0, 0, 1}) == 0.75);

    CHECK_THROWS_AS(gini(std::vector<double>{1, -1}), ValidationError);
    CHECK_THROWS_AS(gini(std::vector<double>{0, 0}), ArgumentError);
    CHECK_THROWS_AS(gini(std::vector<double>{}), ArgumentError);
}

TEST_CASE("gini agrees with the double sum, stays in range, ignores order")
{
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::size_t> len(1, 40);
    std::exponential_distribution<double> value(0.5);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> y(len(rng));
        for (auto& v : y) v = value(rng);
        if (trial % 5 == 0 && y.size() > 1) y[0] = 0.0;
        const double n = static_cast<double>(y.size());
        double g = gini(y);
        CHECK(g == doctest::Approx(oracle::gini_double_sum(y)).epsilon(1e-12));
        CHECK(g >= 0.0);
        CHECK(g <= (n - 1.0) / n + 1e-15);
        std::shuffle(y.begin(), y.end(), rng);
        CHECK(gini(y) == g);
    }
}

TEST_CASE("efficiency_gini_series")
{
    MobilityGraph pair({"A", "B"}, {{0, 1, 1.0}, {1, 0, 1.0}}, Interval{});
    auto s = efficiency_gini_series(std::vector<MobilityGraph>{pair});
    REQUIRE(s.size() == 1);
    CHECK(s[0].global_efficiency == 1.0);
    CHECK(s[0].gini_nodal == 0.0);

    // Star A<->{B,C,D}: e_A = 1, leaves (1 + 1/2 + 1/2) / 3.
    auto star = star4();
    auto r = efficiency(star);
    CHECK(r.nodal[0] == doctest::Approx(1.0));
    CHECK(r.nodal[1] == doctest::Approx(2.0 / 3.0));
    const double expected = oracle::gini_double_sum({1.0, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0});
    CHECK(expected == doctest::Approx(1.0 / 12.0));
    auto two = efficiency_gini_series(std::vector<MobilityGraph>{star, star.with_edges({{0, 1, 1.0}, {1, 0, 1.0}, {0, 2, 1.0}, {2, 0, 1.0}, {0, 3, 1.0}})});
    CHECK(two[0].gini_nodal == doctest::Approx(expected));
    CHECK(two[1].global_efficiency <= two[0].global_efficiency);

    CHECK_THROWS_AS(efficiency_gini_series(std::vector<MobilityGraph>{MobilityGraph{}}), ArgumentError);
}
