#pragma once

#include <vector>

#include "mecsched/model.hpp"
#include "mecsched/partition.hpp"

namespace mecsched {

struct ContainerProfile {
  int id = 0;
  ResourceVector demand;  // summed demand of the tasks packed into it
};

/// One profile per partition set, id = set index.
std::vector<ContainerProfile> containers_from_partition(const Partition& p,
                                                        const WorkflowDag& dag);

/// Container-to-server assignment plus the fleet's remaining capacity.
struct PlacementMap {
  std::vector<int> server_of;              // container id -> index into fleet.servers
  std::vector<ResourceVector> residual;    // per server, capacity minus placed demand

  int container_count() const { return static_cast<int>(server_of.size()); }
};

/// True iff demand fits componentwise (boundary-exact fits accepted).
bool feasible(const ResourceVector& demand, const ResourceVector& residual);

/// Whether placement decisions see remaining capacity (the default, which
/// keeps multi-container servers within Eq-style capacity limits) or the
/// nominal capacities of the printed pseudocode. Nominal mode still tracks
/// residuals and raises ConstraintError if a decision oversubscribes a server.
enum class CapacityBasis { Residual, Nominal };

/// Dot-product heuristic: containers in ascending id order, each placed on the
/// feasible server maximizing sum_k demand_k * available_k (ties: lowest
/// server id). Throws InfeasibleError naming the first container with no
/// feasible server.
PlacementMap dp_place(const std::vector<ContainerProfile>& containers,
                      const ServerFleet& fleet,
                      CapacityBasis basis = CapacityBasis::Residual);

/// First-fit decreasing: containers sorted by decreasing aggregate demand
/// (ties: ascending id), each placed on the first feasible server in fleet
/// order. Throws InfeasibleError when none fits.
PlacementMap ffd_place(const std::vector<ContainerProfile>& containers,
                       const ServerFleet& fleet,
                       CapacityBasis basis = CapacityBasis::Residual);

}  // namespace mecsched
