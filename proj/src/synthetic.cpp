#include "mobnet/synthetic.hpp"

#include "mobnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>

namespace mobnet {

namespace {

constexpr double kCenterLat = 46.0;
constexpr double kCenterLon = 2.0;

struct DirectedEdge {
    int origin;
    int destination;
    double weight;
};

class Builder {
public:
    explicit Builder(const ArchetypeParams& p) : params_(p), rng_(p.seed) {}

    std::mt19937_64& rng() { return rng_; }

    double lognormal(double sigma)
    {
        std::lognormal_distribution<double> dist(0.0, sigma);
        return dist(rng_);
    }

    double normal(double sd)
    {
        std::normal_distribution<double> dist(0.0, sd);
        return dist(rng_);
    }

    double uniform(double lo, double hi)
    {
        std::uniform_real_distribution<double> dist(lo, hi);
        return dist(rng_);
    }

    void site(std::string name, double lat, double lon)
    {
        char id[16];
        std::snprintf(id, sizeof id, "R%05zu", sites_.size());
        sites_.push_back(NodeSite{id, std::move(name), std::clamp(lat, -89.0, 89.0), std::clamp(lon, -179.0, 179.0)});
    }

    const NodeSite& site_at(int i) const { return sites_[static_cast<std::size_t>(i)]; }

    void pair(int a, int b, double w_ab, double w_ba)
    {
        edges_.push_back({a, b, w_ab});
        edges_.push_back({b, a, w_ba});
    }

    SyntheticDataset finish() &&
    {
        SyntheticDataset out;
        for (auto& s : sites_) out.registry.add(std::move(s));

        std::vector<bool> survives(edges_.size(), true);
        if (params_.lockdown) {
            std::vector<std::size_t> order(edges_.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return edges_[a].weight > edges_[b].weight; });
            auto keep = static_cast<std::size_t>(std::ceil(params_.lockdown_retention * static_cast<double>(order.size())));
            for (std::size_t r = keep; r < order.size(); ++r) survives[order[r]] = false;
        }

        const auto& ids = out.registry.sites();
        for (int d = 0; d < params_.days; ++d) {
            Date day = params_.start + std::chrono::days{d};
            bool locked = params_.lockdown && day >= *params_.lockdown;
            for (int w = 0; w < 3; ++w) {
                TimePoint window = TimePoint{day} + w * kFlowWindow;
                for (std::size_t e = 0; e < edges_.size(); ++e) {
                    if (locked && !survives[e]) continue;
                    const auto& edge = edges_[e];
                    out.records.push_back(FlowRecord{ids[static_cast<std::size_t>(edge.origin)].region_id,
                                                     ids[static_cast<std::size_t>(edge.destination)].region_id,
                                                     window, edge.weight});
                }
            }
        }
        return out;
    }

private:
    const ArchetypeParams& params_;
    std::mt19937_64 rng_;
    std::vector<NodeSite> sites_;
    std::vector<DirectedEdge> edges_;
};

std::pair<double, double> on_circle(int k, int count, double radius)
{
    if (count <= 1) return {kCenterLat, kCenterLon};
    double angle = 2.0 * std::numbers::pi * k / count;
    return {kCenterLat + radius * std::sin(angle), kCenterLon + radius * std::cos(angle)};
}

// National hub, satellites on a ring, leaves grouped in towns of three. The
// town head attaches to its satellite with the minimum weight (weight_scale)
// and the other two attach to the head with heavier weights, so removing the
// lightest class splits the country into many small towns.
void build_star(Builder& b, const ArchetypeParams& p)
{
    const int hubs = p.group_count;
    const double s = p.weight_scale;
    b.site("national hub", kCenterLat, kCenterLon);
    for (int h = 0; h < hubs; ++h) {
        auto [lat, lon] = on_circle(h, hubs, 3.0);
        b.site("satellite " + std::to_string(h + 1), lat, lon);
    }
    for (int h = 0; h < hubs; ++h)
        b.pair(0, 1 + h, s * 10.0 * std::max(b.lognormal(0.3), 0.5), s * 10.0 * std::max(b.lognormal(0.3), 0.5));

    const int leaves = p.node_count - 1 - hubs;
    std::vector<int> per_satellite(static_cast<std::size_t>(hubs), 0);
    std::vector<int> town_head(static_cast<std::size_t>(hubs), -1);
    for (int k = 0; k < leaves; ++k) {
        const int sat = k % hubs;
        const int node = 1 + hubs + k;
        const int slot = per_satellite[static_cast<std::size_t>(sat)]++;
        const auto& sat_site = b.site_at(1 + sat);
        if (slot % 3 == 0) {
            double angle = b.uniform(0.0, 2.0 * std::numbers::pi);
            double radius = b.uniform(0.2, 0.9);
            b.site("town " + std::to_string(node), sat_site.latitude + radius * std::sin(angle),
                   sat_site.longitude + radius * std::cos(angle));
            town_head[static_cast<std::size_t>(sat)] = node;
            b.pair(node, 1 + sat, s, s);
        } else {
            const int head = town_head[static_cast<std::size_t>(sat)];
            const auto& head_site = b.site_at(head);
            b.site("village " + std::to_string(node), head_site.latitude + b.normal(0.05),
                   head_site.longitude + b.normal(0.05));
            b.pair(node, head, s * (1.0 + b.lognormal(0.5)), s * (1.0 + b.lognormal(0.5)));
        }
    }
}

// Round-robin membership; each member links to its next three ring
// neighbours and to the cluster centre. Centres form a ring of bridges.
void build_multi_cluster(Builder& b, const ArchetypeParams& p)
{
    const int clusters = p.group_count;
    const double s = p.weight_scale;
    std::vector<std::vector<int>> members(static_cast<std::size_t>(clusters));
    for (int i = 0; i < p.node_count; ++i) {
        const int c = i % clusters;
        members[static_cast<std::size_t>(c)].push_back(i);
        if (i < clusters) {
            auto [lat, lon] = on_circle(c, clusters, 3.0);
            b.site("cluster centre " + std::to_string(c + 1), lat, lon);
        } else {
            const auto& centre = b.site_at(c);
            b.site("cluster " + std::to_string(c + 1) + " member " + std::to_string(i), centre.latitude + b.normal(0.35),
                   centre.longitude + b.normal(0.35));
        }
    }
    auto intra = [&] { return s * 3.0 * b.lognormal(0.5); };
    for (const auto& group : members) {
        const int size = static_cast<int>(group.size());
        std::vector<std::pair<int, int>> pairs;
        for (int j = 1; j < size; ++j) pairs.emplace_back(0, j);
        for (int j = 1; j < size; ++j)
            for (int step = 1; step <= 3; ++step) {
                int k = 1 + (j - 1 + step) % (size - 1);
                if (k != j) pairs.emplace_back(std::min(j, k), std::max(j, k));
            }
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        for (auto [x, y] : pairs) b.pair(group[static_cast<std::size_t>(x)], group[static_cast<std::size_t>(y)], intra(), intra());
    }
    if (clusters >= 2) {
        const int bridges = clusters == 2 ? 1 : clusters;
        for (int c = 0; c < bridges; ++c) {
            const int d = (c + 1) % clusters;
            b.pair(c, d, s * b.lognormal(0.5), s * b.lognormal(0.5));
            const auto& mc = members[static_cast<std::size_t>(c)];
            const auto& md = members[static_cast<std::size_t>(d)];
            if (mc.size() > 1 && md.size() > 1) b.pair(mc[1], md[1], s * b.lognormal(0.5), s * b.lognormal(0.5));
        }
    }
}

// Complete core with weights >= 10 * scale; every periphery node attaches
// to up to three distinct core nodes with weights <= 5 * scale.
void build_core_periphery(Builder& b, const ArchetypeParams& p)
{
    const int core = p.group_count;
    const double s = p.weight_scale;
    for (int c = 0; c < core; ++c) {
        auto [lat, lon] = on_circle(c, core, 0.8);
        b.site("core " + std::to_string(c + 1), lat, lon);
    }
    for (int i = 0; i < core; ++i)
        for (int j = i + 1; j < core; ++j)
            b.pair(i, j, s * 10.0 * (1.0 + b.lognormal(0.5)), s * 10.0 * (1.0 + b.lognormal(0.5)));

    const int attachments = std::min(3, core);
    std::vector<int> pool(static_cast<std::size_t>(core));
    for (int v = core; v < p.node_count; ++v) {
        double angle = b.uniform(0.0, 2.0 * std::numbers::pi);
        double radius = b.uniform(1.2, 4.0);
        b.site("periphery " + std::to_string(v), kCenterLat + radius * std::sin(angle),
               kCenterLon + radius * std::cos(angle));
        std::iota(pool.begin(), pool.end(), 0);
        for (int a = 0; a < attachments; ++a) {
            std::uniform_int_distribution<int> pick(a, core - 1);
            std::swap(pool[static_cast<std::size_t>(a)], pool[static_cast<std::size_t>(pick(b.rng()))]);
            b.pair(v, pool[static_cast<std::size_t>(a)], s * std::min(b.lognormal(0.5), 5.0),
                   s * std::min(b.lognormal(0.5), 5.0));
        }
    }
}

} // namespace

std::string_view to_string(Archetype a)
{
    switch (a) {
    case Archetype::star: return "star";
    case Archetype::multi_cluster: return "multi_cluster";
    case Archetype::core_periphery: return "core_periphery";
    }
    return "unknown";
}

Archetype parse_archetype(std::string_view text)
{
    if (text == "star") return Archetype::star;
    if (text == "multi_cluster" || text == "multi-cluster") return Archetype::multi_cluster;
    if (text == "core_periphery" || text == "core-periphery") return Archetype::core_periphery;
    throw ArgumentError("unknown archetype '" + std::string(text) + "'");
}

int structural_minimum(const ArchetypeParams& params)
{
    return params.archetype == Archetype::star ? params.group_count + 1 : params.group_count;
}

void validate(const ArchetypeParams& params)
{
    if (params.group_count < 1) throw ArgumentError("hub/cluster/core count must be positive");
    if (params.node_count < structural_minimum(params))
        throw ArgumentError(std::string(to_string(params.archetype)) + " needs node_count >= " +
                            std::to_string(structural_minimum(params)) + ", got " +
                            std::to_string(params.node_count));
    if (!(params.weight_scale > 0.0) || !std::isfinite(params.weight_scale))
        throw ArgumentError("weight_scale must be a positive finite number");
    if (params.days < 1) throw ArgumentError("days must be at least 1");
    if (!(params.lockdown_retention > 0.0 && params.lockdown_retention <= 1.0))
        throw ArgumentError("lockdown_retention must lie in (0, 1]");
}

SyntheticDataset generate_synthetic(const ArchetypeParams& params)
{
    validate(params);
    Builder b(params);
    switch (params.archetype) {
    case Archetype::star: build_star(b, params); break;
    case Archetype::multi_cluster: build_multi_cluster(b, params); break;
    case Archetype::core_periphery: build_core_periphery(b, params); break;
    }
    return std::move(b).finish();
}

} // namespace mobnet
