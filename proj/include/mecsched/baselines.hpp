#pragma once

#include "mecsched/model.hpp"
#include "mecsched/partition.hpp"
#include "mecsched/placement.hpp"

namespace mecsched {

/// Comparison scheme: cluster tasks by their demand vectors with seeded
/// Lloyd iterations (random initial centroids, Euclidean assignment, mean
/// update, at most 100 rounds). The workflow's edge structure is ignored.
/// Empty clusters are re-seeded with the point farthest from its centroid.
Partition kmeans_partition(const WorkflowDag& dag, const SchedulerConfig& cfg);

/// Comparison scheme: orchestrator-style "Spread" placement. Containers in
/// ascending id order, each on the feasible server hosting the fewest
/// containers (ties: lowest aggregate utilization, then lowest server id).
PlacementMap spread_place(const std::vector<ContainerProfile>& containers,
                          const ServerFleet& fleet);

}  // namespace mecsched
