#include "mobnet/errors.hpp"
#include "mobnet/metrics.hpp"
#include "mobnet/percolation.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace mobnet;

namespace {

// One-way triangle A->B (1), B->C (2), C->A (3).
MobilityGraph triangle() { return MobilityGraph({"A", "B", "C"}, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 0, 3.0}}, Interval{}); }

} // namespace

TEST_CASE("increasing sweep on the triangle")
{
    auto t = percolation_sweep(triangle(), SweepDirection::increasing);
    REQUIRE(t.iterations() == 3);
    CHECK(t.steps[0].lwcc_size == 3);
    CHECK_FALSE(t.steps[0].threshold);
    CHECK(t.steps[1].edge_count == 2); // BC, CA
    CHECK(t.steps[1].lwcc_size == 3);
    CHECK(*t.steps[1].threshold == 1.0);
    CHECK(t.steps[2].edge_count == 1); // CA
    CHECK(t.steps[2].lwcc_size == 2);
    CHECK(t.steps[3].edge_count == 0);
    CHECK(t.steps[3].lwcc_size == 0);
    CHECK(t.steps[3].component_count == 0);
    CHECK(t.steps[2].residual_edge_fraction == doctest::Approx(1.0 / 3.0));
    CHECK(t.steps[3].global_efficiency == 0.0);
}

TEST_CASE("decreasing sweep on the triangle")
{
    auto t = percolation_sweep(triangle(), SweepDirection::decreasing);
    REQUIRE(t.iterations() == 3);
    CHECK(*t.steps[1].threshold == 3.0);
    CHECK(t.steps[1].edge_count == 2); // AB, BC
    CHECK(t.steps[1].lwcc_size == 3);
    CHECK(t.steps[2].edge_count == 1); // AB
    CHECK(t.steps[2].lwcc_size == 2);
    CHECK(t.steps[3].edge_count == 0);
    // With the full node set, the one surviving edge A->B (length 1) gives 1/6.
    CHECK(t.steps[2].global_efficiency == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("equal weights percolate in one iteration; edgeless graphs are rejected")
{
    MobilityGraph flat({"A", "B", "C"}, {{0, 1, 2.0}, {1, 2, 2.0}, {2, 1, 2.0}}, Interval{});
    for (auto dir : {SweepDirection::increasing, SweepDirection::decreasing}) {
        auto t = percolation_sweep(flat, dir);
        CHECK(t.iterations() == 1);
        CHECK(t.steps[1].edge_count == 0);
    }
    MobilityGraph none({"A", "B"}, {}, Interval{});
    CHECK_THROWS_AS(percolation_sweep(none, SweepDirection::increasing), ArgumentError);
    CHECK_THROWS_AS(node_persistence(none, SweepDirection::increasing), ArgumentError);
}

TEST_CASE("node persistence examples")
{
    auto p = node_persistence(triangle(), SweepDirection::increasing);
    CHECK(p.rho == std::vector<double>{1.0, 0.5, 1.0});
    CHECK(p.at("B") == 0.5);
    CHECK(p.at("nowhere") == 0.0);

    MobilityGraph single({"A", "B"}, {{0, 1, 4.0}}, Interval{});
    CHECK(node_persistence(single, SweepDirection::increasing).rho == std::vector<double>{1.0, 1.0});

    // C-D sits outside the initial LWCC {A, B, E}.
    MobilityGraph split({"A", "B", "C", "D", "E"}, {{0, 1, 1.0}, {1, 4, 2.0}, {2, 3, 5.0}}, Interval{});
    auto ps = node_persistence(split, SweepDirection::increasing);
    CHECK(ps.rho[2] == 0.0);
    CHECK(ps.rho[3] == 0.0);
}

TEST_CASE("LWCC switching does not resurrect nodes outside the run")
{
    // Initially the LWCC is the 4-path A-B-C-D (weights 1) and E-F-G (weights 5)
    // is smaller; after the first iteration E-F-G becomes the LWCC.
    MobilityGraph g({"A", "B", "C", "D", "E", "F", "G"},
                    {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {4, 5, 5.0}, {5, 6, 5.0}}, Interval{});
    auto p = node_persistence(g, SweepDirection::increasing);
    CHECK(p.rho == oracle::persistence(g, true));
    for (int v = 4; v < 7; ++v) CHECK(p.rho[static_cast<std::size_t>(v)] == 0.0);
    for (int v = 0; v < 4; ++v) CHECK(p.rho[static_cast<std::size_t>(v)] == 0.0); // K - 1 = 1, M = 0
}

TEST_CASE("sweep invariants on random graphs")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = trial % 2 ? oracle::random_graph(rng, 25, 0.15) : oracle::random_graph_tied(rng, 25, 0.15, 6);
        if (g.edge_count() == 0) continue;
        auto inc = percolation_sweep(g, SweepDirection::increasing);
        auto dec = percolation_sweep(g, SweepDirection::decreasing);
        CHECK(inc.iterations() == dec.iterations());
        CHECK(inc.iterations() == static_cast<int>(distinct_weights(g).size()));

        for (const auto* t : {&inc, &dec}) {
            const bool up = t->direction == SweepDirection::increasing;
            auto stages = oracle::sweep_stages(g, up);
            std::multiset<std::tuple<NodeIndex, NodeIndex>> deleted;
            for (int i = 1; i <= t->iterations(); ++i) {
                const auto& prev = t->steps[static_cast<std::size_t>(i - 1)];
                const auto& cur = t->steps[static_cast<std::size_t>(i)];
                if (i > 1) {
                    if (up)
                        CHECK(*cur.threshold > *prev.threshold);
                    else
                        CHECK(*cur.threshold < *prev.threshold);
                }
                CHECK(cur.residual_edge_fraction < prev.residual_edge_fraction);
                CHECK(cur.lwcc_size <= prev.lwcc_size);
                CHECK(cur.global_efficiency <= prev.global_efficiency);
                CHECK(cur.edge_count == stages[static_cast<std::size_t>(i)].size());
                auto bfs = oracle::bfs_components(g.node_ids(), stages[static_cast<std::size_t>(i)]);
                CHECK(cur.lwcc_size == bfs.lwcc_size);
                CHECK(cur.component_count == bfs.count);

                // Edges removed at this iteration.
                std::set<std::tuple<NodeIndex, NodeIndex>> now;
                for (const auto& e : stages[static_cast<std::size_t>(i)]) now.insert({e.origin, e.destination});
                for (const auto& e : stages[static_cast<std::size_t>(i - 1)])
                    if (!now.count({e.origin, e.destination})) deleted.insert({e.origin, e.destination});
            }
            CHECK(t->steps.back().edge_count == 0);
            CHECK(deleted.size() == g.edge_count()); // disjoint and exhaustive
            std::set<std::tuple<NodeIndex, NodeIndex>> unique(deleted.begin(), deleted.end());
            CHECK(unique.size() == g.edge_count());

            auto p = node_persistence(g, t->direction);
            CHECK(p.rho == oracle::persistence(g, up));
            double top = *std::max_element(p.rho.begin(), p.rho.end());
            CHECK(top <= 1.0);
            CHECK(std::count(p.rho.begin(), p.rho.end(), top) >= 1);
            for (double r : p.rho) CHECK(r >= 0.0);
        }
    }
}

TEST_CASE("sweep efficiency equals a fresh evaluation of every stage")
{
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = trial % 2 ? oracle::random_graph(rng, 30, 0.12) : oracle::random_graph_tied(rng, 30, 0.12, 5);
        if (g.edge_count() == 0) continue;
        for (bool up : {true, false}) {
            auto t = percolation_sweep(g, up ? SweepDirection::increasing : SweepDirection::decreasing);
            auto stages = oracle::sweep_stages(g, up);
            for (std::size_t i = 0; i < stages.size(); ++i) {
                CHECK(t.steps[i].global_efficiency == global_efficiency_or_zero(g.with_edges(stages[i])));
                CHECK(t.steps[i].global_efficiency ==
                      doctest::Approx(oracle::efficiency(g.node_count(), stages[i]).global).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("support node-set efficiency can rise when the node set shrinks")
{
    // A<->B heavy, C->D light: dropping C->D halves n.
    MobilityGraph g({"A", "B", "C", "D"}, {{0, 1, 100.0}, {1, 0, 100.0}, {2, 3, 0.01}}, Interval{});
    auto fixed = percolation_sweep(g, SweepDirection::increasing);
    auto support = percolation_sweep(g, SweepDirection::increasing, {true, EfficiencyNodeSet::support});
    CHECK(fixed.steps[1].global_efficiency <= fixed.steps[0].global_efficiency);
    CHECK(support.steps[1].global_efficiency > support.steps[0].global_efficiency);
    CHECK(support.steps[0].global_efficiency == fixed.steps[0].global_efficiency);

    auto skip = percolation_sweep(g, SweepDirection::increasing, {false, EfficiencyNodeSet::original});
    CHECK(skip.steps[0].global_efficiency == 0.0);
    CHECK(skip.steps[1].lwcc_size == fixed.steps[1].lwcc_size);
}

TEST_CASE("empirical overlay")
{
    NodeRegistry reg;
    for (int i = 0; i < 11; ++i) reg.add({"N" + std::to_string(i), "", 40.0 + i * 0.1, 2.0});
    // Baseline week (Mon 2020-03-02) has a 10-edge path, the lockdown week
    // keeps the same 10, the week after keeps 6.
    std::vector<FlowRecord> recs;
    auto week_edges = [&](const char* day, int edges) {
        for (int i = 0; i < edges; ++i)
            recs.push_back({"N" + std::to_string(i), "N" + std::to_string(i + 1), TimePoint{parse_date(day)}, 1.0 + i});
    };
    week_edges("2020-03-03", 10);
    week_edges("2020-03-10", 10);
    week_edges("2020-03-17", 6);
    auto baseline = make_interval(TimePoint{parse_date("2020-03-02")}, TimePoint{parse_date("2020-03-09")});
    auto points = empirical_overlay(recs, reg, parse_date("2020-03-11"), baseline);
    REQUIRE(points.size() == 3);
    CHECK(points[0].period == Period::before);
    CHECK(points[0].residual_edge_fraction == 1.0);
    CHECK(points[0].global_efficiency_normalized == 1.0);
    CHECK(points[1].period == Period::during);
    CHECK(points[1].week_start == parse_date("2020-03-09"));
    CHECK(points[2].period == Period::after);
    CHECK(points[2].residual_edge_fraction == doctest::Approx(0.6));
    CHECK(points[2].lwcc_size == 7);
    CHECK(points[2].global_efficiency_normalized < 1.0);

    auto empty = make_interval(TimePoint{parse_date("2020-02-01")}, TimePoint{parse_date("2020-02-08")});
    CHECK_THROWS_AS(empirical_overlay(recs, reg, parse_date("2020-03-11"), empty), ArgumentError);
    CHECK_THROWS_AS(empirical_overlay(recs, reg, parse_date("2020-03-04"), baseline), ArgumentError);
}

TEST_CASE("direction and period names")
{
    CHECK(parse_direction("decreasing") == SweepDirection::decreasing);
    CHECK(to_string(SweepDirection::increasing) == "increasing");
    CHECK_THROWS_AS(parse_direction("sideways"), ArgumentError);
    CHECK(to_string(Period::during) == "during");
}
