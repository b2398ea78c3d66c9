#include "mecsched/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mecsched/rng.hpp"

namespace mecsched {

namespace {

double squared_distance(const ResourceVector& a, const ResourceVector& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d += (a[k] - b[k]) * (a[k] - b[k]);
  return d;
}

// Move the point farthest from its current centroid into the empty cluster,
// drawing only from clusters that can spare a member. Ties: lowest task index.
void reseed_empty_cluster(int empty, std::vector<int>& assign,
                          const std::vector<ResourceVector>& points,
                          const std::vector<ResourceVector>& centroids,
                          std::vector<int>& sizes) {
  int farthest = -1;
  double farthest_d = -1.0;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    if (sizes[assign[i]] < 2) continue;
    const double d = squared_distance(points[i], centroids[assign[i]]);
    if (d > farthest_d) {
      farthest_d = d;
      farthest = i;
    }
  }
  if (farthest < 0) return;  // cannot happen while C <= T
  sizes[assign[farthest]]--;
  assign[farthest] = empty;
  sizes[empty]++;
}

}  // namespace

Partition kmeans_partition(const WorkflowDag& dag, const SchedulerConfig& cfg) {
  check_config(cfg);
  const int t = dag.task_count();
  const int c = cfg.container_count;
  if (c > t)
    throw ModelError("container_count " + std::to_string(c) +
                     " exceeds task count " + std::to_string(t));

  // points in ascending task-id order
  std::vector<int> order(t);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return dag.tasks[a].id < dag.tasks[b].id; });
  std::vector<ResourceVector> points;
  std::vector<int> ids;
  points.reserve(t);
  for (int i : order) {
    points.push_back(dag.tasks[i].demand);
    ids.push_back(dag.tasks[i].id);
  }

  Rng rng(cfg.seed);
  std::vector<ResourceVector> centroids;
  for (int i : rng.sample_indices(t, c)) centroids.push_back(points[i]);

  std::vector<int> assign(t, -1);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<int> next(t, 0);
    for (int i = 0; i < t; ++i) {
      double best_d = squared_distance(points[i], centroids[0]);
      for (int j = 1; j < c; ++j) {
        const double d = squared_distance(points[i], centroids[j]);
        if (d < best_d) {
          best_d = d;
          next[i] = j;
        }
      }
    }

    std::vector<int> sizes(c, 0);
    for (int i = 0; i < t; ++i) sizes[next[i]]++;
    for (int j = 0; j < c; ++j)
      if (sizes[j] == 0) reseed_empty_cluster(j, next, points, centroids, sizes);

    if (next == assign) break;
    assign = next;

    for (int j = 0; j < c; ++j)
      std::fill(centroids[j].begin(), centroids[j].end(), 0.0);
    for (int i = 0; i < t; ++i) add_in_place(centroids[assign[i]], points[i]);
    for (int j = 0; j < c; ++j)
      for (double& x : centroids[j]) x /= static_cast<double>(sizes[j]);
  }

  Partition p;
  p.sets.assign(c, {});
  for (int i = 0; i < t; ++i) p.sets[assign[i]].push_back(ids[i]);
  return p;  // sets are sorted: points were visited in ascending id order
}

PlacementMap spread_place(const std::vector<ContainerProfile>& containers,
                          const ServerFleet& fleet) {
  if (fleet.servers.empty()) throw ModelError("fleet is empty");
  for (const ContainerProfile& c : containers) {
    if (c.id < 0 || c.id >= static_cast<int>(containers.size()))
      throw ModelError("container ids must be 0..C-1");
    if (c.demand.size() != static_cast<std::size_t>(fleet.resource_count()))
      throw ModelError("container " + std::to_string(c.id) +
                       " demand arity differs from fleet resources");
  }

  PlacementMap map;
  map.server_of.assign(containers.size(), -1);
  for (const Server& s : fleet.servers) map.residual.push_back(s.capacity);
  std::vector<int> hosted(fleet.server_count(), 0);

  std::vector<int> idx(containers.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return containers[a].id < containers[b].id; });

  for (int i : idx) {
    const ContainerProfile& c = containers[i];
    int chosen = -1;
    double chosen_util = 0.0;
    for (int j = 0; j < fleet.server_count(); ++j) {
      if (!feasible(c.demand, map.residual[j])) continue;
      double util = 0.0;
      for (int k = 0; k < fleet.resource_count(); ++k) {
        const double cap = fleet.servers[j].capacity[k];
        util += (cap - map.residual[j][k]) / cap;
      }
      const bool better =
          chosen < 0 || hosted[j] < hosted[chosen] ||
          (hosted[j] == hosted[chosen] && util < chosen_util);
      if (better) {
        chosen = j;
        chosen_util = util;
      }
    }
    if (chosen < 0)
      throw InfeasibleError("no feasible server for container " + std::to_string(c.id),
                            c.id);
    map.server_of[c.id] = chosen;
    subtract_in_place(map.residual[chosen], c.demand);
    hosted[chosen]++;
  }
  return map;
}

}  // namespace mecsched
