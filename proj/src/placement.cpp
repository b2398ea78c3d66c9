#include "mecsched/placement.hpp"

#include <algorithm>
#include <numeric>

namespace mecsched {

std::vector<ContainerProfile> containers_from_partition(const Partition& p,
                                                        const WorkflowDag& dag) {
  std::vector<ContainerProfile> containers;
  containers.reserve(p.sets.size());
  for (int i = 0; i < p.set_count(); ++i)
    containers.push_back({i, vertex_weight_by_resource(p.sets[i], dag)});
  return containers;
}

bool feasible(const ResourceVector& demand, const ResourceVector& residual) {
  if (demand.size() != residual.size())
    throw ModelError("demand and capacity arity mismatch");
  for (std::size_t k = 0; k < demand.size(); ++k)
    if (demand[k] > residual[k]) return false;
  return true;
}

namespace {

struct PlacementState {
  explicit PlacementState(const std::vector<ContainerProfile>& containers,
                          const ServerFleet& fleet) {
    if (fleet.servers.empty()) throw ModelError("fleet is empty");
    for (const ContainerProfile& c : containers) {
      if (c.id < 0 || c.id >= static_cast<int>(containers.size()))
        throw ModelError("container ids must be 0..C-1");
      if (c.demand.size() != static_cast<std::size_t>(fleet.resource_count()))
        throw ModelError("container " + std::to_string(c.id) +
                         " demand arity differs from fleet resources");
    }
    map.server_of.assign(containers.size(), -1);
    for (const Server& s : fleet.servers) map.residual.push_back(s.capacity);
  }

  void place(const ContainerProfile& c, int server) {
    map.server_of[c.id] = server;
    subtract_in_place(map.residual[server], c.demand);
    for (double r : map.residual[server])
      if (r < 0.0)
        throw ConstraintError("server capacity oversubscribed by container " +
                              std::to_string(c.id));
  }

  PlacementMap map;
};

}  // namespace

PlacementMap dp_place(const std::vector<ContainerProfile>& containers,
                      const ServerFleet& fleet, CapacityBasis basis) {
  PlacementState state(containers, fleet);

  std::vector<int> order(containers.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return containers[a].id < containers[b].id; });

  for (int idx : order) {
    const ContainerProfile& c = containers[idx];
    int best = -1;
    double best_dp = 0.0;
    for (int j = 0; j < fleet.server_count(); ++j) {
      const ResourceVector& avail = basis == CapacityBasis::Residual
                                        ? state.map.residual[j]
                                        : fleet.servers[j].capacity;
      if (!feasible(c.demand, avail)) continue;
      double dp = 0.0;
      for (std::size_t k = 0; k < c.demand.size(); ++k) dp += c.demand[k] * avail[k];
      if (best < 0 || dp > best_dp) {
        best = j;
        best_dp = dp;
      }
    }
    if (best < 0)
      throw InfeasibleError("no feasible server for container " + std::to_string(c.id),
                            c.id);
    state.place(c, best);
  }
  return state.map;
}

PlacementMap ffd_place(const std::vector<ContainerProfile>& containers,
                       const ServerFleet& fleet, CapacityBasis basis) {
  PlacementState state(containers, fleet);

  std::vector<int> order(containers.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double wa = aggregate(containers[a].demand);
    const double wb = aggregate(containers[b].demand);
    if (wa != wb) return wa > wb;
    return containers[a].id < containers[b].id;
  });

  for (int idx : order) {
    const ContainerProfile& c = containers[idx];
    int chosen = -1;
    for (int j = 0; j < fleet.server_count(); ++j) {
      const ResourceVector& avail = basis == CapacityBasis::Residual
                                        ? state.map.residual[j]
                                        : fleet.servers[j].capacity;
      if (feasible(c.demand, avail)) {
        chosen = j;
        break;
      }
    }
    if (chosen < 0)
      throw InfeasibleError("no feasible server for container " + std::to_string(c.id),
                            c.id);
    state.place(c, chosen);
  }
  return state.map;
}

}  // namespace mecsched
