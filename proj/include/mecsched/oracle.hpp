#pragma once

#include <cstdint>

#include "mecsched/model.hpp"
#include "mecsched/partition.hpp"
#include "mecsched/placement.hpp"

namespace mecsched {

struct PartitionSearchResult {
  Partition partition;
  double value = 0.0;          // objective_f of the optimum
  ScoreBreakdown breakdown;
  std::uint64_t candidates = 0;  // surjective assignments enumerated
};

/// Exact minimum of objective_f over every assignment of T tasks to C labeled
/// non-empty sets. Ties resolve to the lexicographically smallest assignment
/// vector (tasks in ascending id order). Guarded to T <= 12, C <= 4.
PartitionSearchResult brute_force_partition(const WorkflowDag& dag,
                                            const SchedulerConfig& cfg);

struct JointSearchResult {
  Partition partition;         // may contain empty sets
  PlacementMap placement;
  double value = 0.0;          // optimal weighted-sum objective
  std::uint64_t candidates = 0;  // feasible (D, M) pairs evaluated
};

/// Exact minimum of the weighted-sum objective over every (D, M) pair that
/// satisfies the assignment and capacity constraints. Containers may stay
/// empty; infeasible placements are skipped. Guarded to T <= 8, C <= 3,
/// S <= 3. Throws InfeasibleError when no feasible pair exists.
JointSearchResult brute_force_joint(const WorkflowDag& dag, const ServerFleet& fleet,
                                    const SchedulerConfig& cfg);

}  // namespace mecsched
