#pragma once

#include <functional>
#include <vector>

#include "mecsched/model.hpp"

namespace mecsched {

/// Disjoint task-id sets A_1..A_C. A partition is partial while tasks remain
/// unassigned (during initialization) and complete once every task belongs to
/// exactly one set. Sets are kept sorted ascending.
struct Partition {
  std::vector<std::vector<int>> sets;

  int set_count() const { return static_cast<int>(sets.size()); }
};

/// Membership lookup: task id -> set index, -1 while unassigned.
/// Throws ModelError if a task appears in two sets or is unknown to the dag.
std::vector<int> assignment_of(const Partition& p, const DagIndex& index);

bool is_complete(const Partition& p, const WorkflowDag& dag);
bool has_empty_set(const Partition& p);

/// Aggregate normalized demand of a task set, summed over all resource types.
double vertex_weight(const std::vector<int>& task_ids, const WorkflowDag& dag);
/// Per-resource demand of a task set.
ResourceVector vertex_weight_by_resource(const std::vector<int>& task_ids,
                                         const WorkflowDag& dag);

/// Balance cost g(x) = alpha * x^theta applied to set vertex weights.
struct BalanceFunctionParams {
  double alpha = 1.0;
  double theta = 1.0;

  // alpha = max(E,1) * C^(theta-1) / T^theta. E is clamped to keep
  // alpha positive on edgeless graphs.
  static BalanceFunctionParams derive(const WorkflowDag& dag, const SchedulerConfig& cfg);

  double g(double x) const;
};

struct ScoreBreakdown {
  double comm_term = 0.0;     // mu_c-weighted communication contribution
  double balance_term = 0.0;  // mu_b-weighted balance contribution (signed)
  double total = 0.0;         // comm_term + balance_term
};

/// Partition objective: mu_c * cut_weight / E  +  mu_b * (1/C) * sum_i
/// (v_{A_i} / (T/C))^theta. The cut counts each cross-set edge once; edges
/// touching unassigned tasks count from their assigned side. Returns the
/// breakdown; .total is the objective value.
ScoreBreakdown objective_f(const Partition& p, const WorkflowDag& dag,
                           const SchedulerConfig& cfg);

enum class InitMode { Random, NonCriticalPath };

/// C singleton seed sets from uniformly drawn distinct tasks.
Partition init_random(const WorkflowDag& dag, const SchedulerConfig& cfg);

/// C singleton seed sets taken off the critical path: non-critical tasks in
/// ascending total-incident-edge-weight order (ties by id), topped up from
/// critical tasks with the same ordering when too few exist.
Partition init_ncpi(const WorkflowDag& dag, const SchedulerConfig& cfg);

/// Gain of inserting unassigned task t into set `target`:
///   comm_term    =  mu_c * (weight of edges between t and the set, both directions)
///   balance_term = -mu_b * (g(v_set + v_t) - g(v_set))
///   total        =  comm_term + balance_term
/// Maximizing total over targets equals minimizing objective_f over the same
/// candidate placements (E*f(candidate) + total is constant across targets).
ScoreBreakdown delta_score(int task_id, int target_set, const Partition& p,
                           const WorkflowDag& dag, const SchedulerConfig& cfg);

/// Observation hook for each greedy assignment step: the task placed, the
/// chosen set, the score of every candidate set, and the partition before
/// the placement.
using PartitionStepObserver = std::function<void(
    int task_id, int chosen_set, const std::vector<ScoreBreakdown>& scores,
    const Partition& before)>;

/// Full containerization pass: initialize seeds, then assign each remaining
/// task (ascending id, or topological order when configured) to the set with
/// the highest delta_score, ties to the lowest set index.
Partition partition_tasks(const WorkflowDag& dag, const SchedulerConfig& cfg,
                          InitMode init,
                          const PartitionStepObserver& observer = {});

/// Normalized maximum load: C * max_j(aggregate demand of A_j) / total
/// aggregate demand. Always >= 1; equals 1 iff all sets carry equal demand.
double normalized_max_load(const Partition& p, const WorkflowDag& dag);

}  // namespace mecsched
