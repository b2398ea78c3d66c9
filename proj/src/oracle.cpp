#include "mecsched/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "mecsched/metrics.hpp"

namespace mecsched {

namespace {

// Tasks sorted by ascending id; assignment vectors index this order.
std::vector<int> sorted_task_positions(const WorkflowDag& dag, const DagIndex& index) {
  std::vector<int> ids;
  ids.reserve(dag.tasks.size());
  for (const Task& t : dag.tasks) ids.push_back(t.id);
  std::sort(ids.begin(), ids.end());
  std::vector<int> positions;
  positions.reserve(ids.size());
  for (int id : ids) positions.push_back(index.position(id));
  return positions;
}

Partition partition_from_assignment(const WorkflowDag& dag,
                                    const std::vector<int>& sorted_ids,
                                    const std::vector<int>& assign, int c) {
  Partition p;
  p.sets.assign(c, {});
  for (std::size_t i = 0; i < assign.size(); ++i)
    p.sets[assign[i]].push_back(sorted_ids[i]);
  return p;
}

// Odometer走: advance the assignment vector in lexicographic order
// (last digit fastest). Returns false after the final vector.
bool next_assignment(std::vector<int>& a, int base) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (++a[i] < base) return true;
    a[i] = 0;
  }
  return false;
}

}  // namespace

PartitionSearchResult brute_force_partition(const WorkflowDag& dag,
                                            const SchedulerConfig& cfg) {
  check_config(cfg);
  const int t = dag.task_count();
  const int c = cfg.container_count;
  if (t > 12 || c > 4)
    throw GuardError("brute-force partition search is guarded to T <= 12, C <= 4");
  if (c > t) throw ModelError("container_count exceeds task count");
  if (t == 0) throw ModelError("empty workflow");

  DagIndex index(dag);
  std::vector<int> ids;
  for (const Task& task : dag.tasks) ids.push_back(task.id);
  std::sort(ids.begin(), ids.end());

  // flattened inputs for the inner loop
  std::vector<double> task_weight(t, 0.0);
  std::vector<ResourceVector> task_demand(t);
  for (int i = 0; i < t; ++i) {
    const Task& task = dag.tasks[index.position(ids[i])];
    task_weight[i] = aggregate(task.demand);
    task_demand[i] = task.demand;
  }
  std::vector<int> id_to_row(t);
  {
    std::vector<std::pair<int, int>> ordered;  // (id, row)
    for (int i = 0; i < t; ++i) ordered.push_back({ids[i], i});
    for (const auto& [id, row] : ordered) id_to_row[index.position(id)] = row;
  }
  struct FlatEdge {
    int src_row, dst_row;
    double weight;
  };
  std::vector<FlatEdge> flat_edges;
  for (const Edge& e : dag.edges)
    flat_edges.push_back({id_to_row[index.position(e.src)],
                          id_to_row[index.position(e.dst)], e.weight});

  const double e_count = static_cast<double>(dag.edge_count());
  const double theta = cfg.theta;
  const double scale = static_cast<double>(c) / static_cast<double>(t);
  const int r = dag.resource_count();

  std::vector<int> assign(t, 0);
  std::vector<int> best_assign;
  double best_value = 0.0;
  ScoreBreakdown best_breakdown;
  std::uint64_t candidates = 0;

  std::vector<int> occupancy(c, 0);
  std::vector<double> set_weight(c, 0.0);
  std::vector<ResourceVector> set_demand(c, ResourceVector(r, 0.0));

  do {
    occupancy.assign(c, 0);
    for (int a : assign) occupancy[a]++;
    if (std::any_of(occupancy.begin(), occupancy.end(), [](int n) { return n == 0; }))
      continue;  // surjective assignments only
    candidates++;

    double cut = 0.0;
    for (const FlatEdge& e : flat_edges)
      if (assign[e.src_row] != assign[e.dst_row]) cut += e.weight;

    double balance = 0.0;
    if (cfg.balance_mode == BalanceMode::Aggregate) {
      set_weight.assign(c, 0.0);
      for (int i = 0; i < t; ++i) set_weight[assign[i]] += task_weight[i];
      for (int j = 0; j < c; ++j) balance += std::pow(set_weight[j] * scale, theta);
    } else {
      for (auto& v : set_demand) std::fill(v.begin(), v.end(), 0.0);
      for (int i = 0; i < t; ++i) add_in_place(set_demand[assign[i]], task_demand[i]);
      for (int j = 0; j < c; ++j)
        for (int k = 0; k < r; ++k) balance += std::pow(set_demand[j][k] * scale, theta);
    }

    ScoreBreakdown score;
    score.comm_term = e_count > 0.0 ? cfg.mu_c * cut / e_count : 0.0;
    score.balance_term = cfg.mu_b * balance / static_cast<double>(c);
    score.total = score.comm_term + score.balance_term;

    // strict improvement keeps the lexicographically first optimum
    if (best_assign.empty() || score.total < best_value) {
      best_assign = assign;
      best_value = score.total;
      best_breakdown = score;
    }
  } while (next_assignment(assign, c));

  PartitionSearchResult result;
  result.partition = partition_from_assignment(dag, ids, best_assign, c);
  result.value = best_value;
  result.breakdown = best_breakdown;
  result.candidates = candidates;
  return result;
}

JointSearchResult brute_force_joint(const WorkflowDag& dag, const ServerFleet& fleet,
                                    const SchedulerConfig& cfg) {
  check_config(cfg);
  const int t = dag.task_count();
  const int c = cfg.container_count;
  const int s = fleet.server_count();
  if (t > 8 || c > 3 || s > 3)
    throw GuardError("brute-force joint search is guarded to T <= 8, C <= 3, S <= 3");
  if (t == 0) throw ModelError("empty workflow");
  if (s == 0) throw ModelError("fleet is empty");

  DagIndex index(dag);
  std::vector<int> ids;
  for (const Task& task : dag.tasks) ids.push_back(task.id);
  std::sort(ids.begin(), ids.end());

  JointSearchResult best;
  bool found = false;

  std::vector<int> d(t, 0);
  do {
    const Partition p = partition_from_assignment(dag, ids, d, c);
    const std::vector<ContainerProfile> containers = containers_from_partition(p, dag);
    const Matrix f = container_dependency(p, dag);

    std::vector<int> m(c, 0);
    do {
      // capacity feasibility (Eq.-style per-server, per-resource bound)
      bool ok = true;
      std::vector<ResourceVector> load(s, ResourceVector(fleet.resource_count(), 0.0));
      for (int j = 0; j < c && ok; ++j) {
        add_in_place(load[m[j]], containers[j].demand);
        for (int k = 0; k < fleet.resource_count(); ++k)
          if (load[m[j]][k] > fleet.servers[m[j]].capacity[k]) {
            ok = false;
            break;
          }
      }
      if (!ok) continue;

      PlacementMap placement;
      placement.server_of = m;
      for (int j = 0; j < s; ++j) {
        ResourceVector residual = fleet.servers[j].capacity;
        subtract_in_place(residual, load[j]);
        placement.residual.push_back(residual);
      }

      const Matrix g = server_dependency(placement, f, s);
      const double c_oh = comm_overhead(g, dag);
      const double b_tot = server_balance(placement, containers, fleet).total;
      const double value = cfg.mu_c * c_oh + cfg.mu_b * b_tot;
      best.candidates++;

      if (!found || value < best.value) {
        found = true;
        best.value = value;
        best.partition = p;
        best.placement = placement;
      }
    } while (next_assignment(m, s));
  } while (next_assignment(d, c));

  if (!found)
    throw InfeasibleError("no feasible (partition, placement) pair exists", -1);
  return best;
}

}  // namespace mecsched
