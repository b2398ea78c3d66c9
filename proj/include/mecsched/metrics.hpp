#pragma once

#include <vector>

#include "mecsched/model.hpp"
#include "mecsched/partition.hpp"
#include "mecsched/placement.hpp"

namespace mecsched {

using Matrix = std::vector<std::vector<double>>;

/// Container dependency matrix F: f_ij sums the weights of edges whose source
/// lies in set i and destination in set j, i != j; diagonal is zero
/// (intra-container communication is free).
Matrix container_dependency(const Partition& p, const WorkflowDag& dag);

/// Server dependency matrix G: F folded through the placement,
/// g_ij = sum over container pairs (p,q) on servers (i,j), i != j.
Matrix server_dependency(const PlacementMap& m, const Matrix& f, int server_count);

/// Denominator of the communication-overhead ratio. TotalEdgeWeight (default)
/// divides by the total inter-task communication time and keeps the metric in
/// [0,1]; TaskSendTimes divides by the sum of task send times, which can
/// exceed 1 when tasks fan out to several successors.
enum class CommNormalization { TotalEdgeWeight, TaskSendTimes };

double comm_overhead(const Matrix& g, const WorkflowDag& dag,
                     CommNormalization norm = CommNormalization::TotalEdgeWeight);

struct ServerBalance {
  std::vector<double> per_server;  // b_i, one per fleet server
  double total = 0.0;              // B_tot
};

/// Per-server balance degree: b_i = mean over resources of the squared
/// deviation of utilization from its server mean. Unoccupied servers
/// contribute zero. Throws ConstraintError if any utilization exceeds 1.
ServerBalance server_balance(const PlacementMap& m,
                             const std::vector<ContainerProfile>& containers,
                             const ServerFleet& fleet);

struct UtilizationAverages {
  double cpu = 0.0;      // mean CPU utilization over occupied servers
  double mem = 0.0;      // mean memory utilization over occupied servers
  int occupied = 0;      // N_S
};

/// Requires the fleet to name "cpu" and "mem" resources.
UtilizationAverages utilization_averages(const PlacementMap& m,
                                         const std::vector<ContainerProfile>& containers,
                                         const ServerFleet& fleet);

/// Weighted-sum schedule objective mu_c * C_OH + mu_b * B_tot under the
/// default communication normalization.
double joint_objective(const Partition& p, const PlacementMap& m,
                       const WorkflowDag& dag, const ServerFleet& fleet,
                       const SchedulerConfig& cfg);

struct ScheduleMetrics {
  double comm_overhead = 0.0;
  double balance_total = 0.0;
  std::vector<double> per_server_balance;
  double cpu_util = 0.0;
  double mem_util = 0.0;
  int occupied_servers = 0;
  double joint_objective = 0.0;
};

/// Every schedule-level quantity for a (partition, placement) pair.
ScheduleMetrics evaluate_schedule(const Partition& p, const PlacementMap& m,
                                  const WorkflowDag& dag, const ServerFleet& fleet,
                                  const SchedulerConfig& cfg);

}  // namespace mecsched
