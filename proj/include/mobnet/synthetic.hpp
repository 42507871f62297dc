#pragma once

#include "mobnet/ingest.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace mobnet {

enum class Archetype { star, multi_cluster, core_periphery };

std::string_view to_string(Archetype a);
/// Accepts "star", "multi_cluster" / "multi-cluster", "core_periphery" / "core-periphery".
Archetype parse_archetype(std::string_view text);

/// Parameters of a synthetic national mobility dataset.
///
/// `group_count` is the hub count for star, the cluster count for
/// multi_cluster and the core size for core_periphery.
struct ArchetypeParams {
    Archetype archetype = Archetype::star;
    int node_count = 100;
    int group_count = 4;
    double weight_scale = 1.0;
    std::uint64_t seed = 0;

    Date start = Date{std::chrono::year{2020} / 3 / 1};
    int days = 1;

    /// From this day on, only the strongest `lockdown_retention` fraction
    /// of edges keeps flowing.
    std::optional<Date> lockdown;
    double lockdown_retention = 0.5;
};

/// Smallest node_count the archetype can be laid out with.
int structural_minimum(const ArchetypeParams& params);

/// Throws ArgumentError when params are invalid.
void validate(const ArchetypeParams& params);

struct SyntheticDataset {
    NodeRegistry registry;
    std::vector<FlowRecord> records;
};

/// Deterministic in `params`. Every edge is emitted in both directions,
/// once per 8-hour window for `days` days starting at `start`.
SyntheticDataset generate_synthetic(const ArchetypeParams& params);

} // namespace mobnet
