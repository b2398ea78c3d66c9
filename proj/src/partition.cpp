#include "mecsched/partition.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mecsched/rng.hpp"

namespace mecsched {

std::vector<int> assignment_of(const Partition& p, const DagIndex& index) {
  std::vector<int> assign(index.size(), -1);
  for (int i = 0; i < p.set_count(); ++i) {
    for (int id : p.sets[i]) {
      const int pos = index.position(id);
      if (assign[pos] != -1)
        throw ModelError("task " + std::to_string(id) + " assigned to more than one set");
      assign[pos] = i;
    }
  }
  return assign;
}

bool is_complete(const Partition& p, const WorkflowDag& dag) {
  DagIndex index(dag);
  std::vector<int> assign;
  try {
    assign = assignment_of(p, index);
  } catch (const ModelError&) {
    return false;
  }
  return std::none_of(assign.begin(), assign.end(), [](int s) { return s < 0; });
}

bool has_empty_set(const Partition& p) {
  return std::any_of(p.sets.begin(), p.sets.end(),
                     [](const std::vector<int>& s) { return s.empty(); });
}

double vertex_weight(const std::vector<int>& task_ids, const WorkflowDag& dag) {
  return aggregate(vertex_weight_by_resource(task_ids, dag));
}

ResourceVector vertex_weight_by_resource(const std::vector<int>& task_ids,
                                         const WorkflowDag& dag) {
  DagIndex index(dag);
  ResourceVector total(dag.resource_count(), 0.0);
  for (int id : task_ids) {
    const Task& t = dag.tasks[index.position(id)];
    add_in_place(total, t.demand);
  }
  return total;
}

BalanceFunctionParams BalanceFunctionParams::derive(const WorkflowDag& dag,
                                                    const SchedulerConfig& cfg) {
  check_config(cfg);
  const double t = static_cast<double>(dag.task_count());
  const double c = static_cast<double>(cfg.container_count);
  const double e = std::max(1.0, static_cast<double>(dag.edge_count()));
  if (t <= 0.0) throw ModelError("cannot derive balance params for an empty workflow");
  BalanceFunctionParams params;
  params.theta = cfg.theta;
  params.alpha = e * std::pow(c, cfg.theta - 1.0) / std::pow(t, cfg.theta);
  return params;
}

double BalanceFunctionParams::g(double x) const { return alpha * std::pow(x, theta); }

namespace {

// Sum over sets of the per-resource balance terms (v * C/T)^theta; the
// aggregate mode folds all resource types into one scalar per set first.
double balance_sum(const Partition& p, const WorkflowDag& dag,
                   const SchedulerConfig& cfg, const DagIndex& index) {
  const double scale = static_cast<double>(cfg.container_count) /
                       static_cast<double>(dag.task_count());
  double sum = 0.0;
  for (const std::vector<int>& set : p.sets) {
    if (cfg.balance_mode == BalanceMode::Aggregate) {
      double w = 0.0;
      for (int id : set) w += aggregate(dag.tasks[index.position(id)].demand);
      sum += std::pow(w * scale, cfg.theta);
    } else {
      ResourceVector w(dag.resource_count(), 0.0);
      for (int id : set) add_in_place(w, dag.tasks[index.position(id)].demand);
      for (double wk : w) sum += std::pow(wk * scale, cfg.theta);
    }
  }
  return sum;
}

// Weight of cross-set edges, each counted once. Edges with an unassigned
// endpoint count from their assigned side; fully unassigned edges do not
// appear in any cut.
double cut_weight(const WorkflowDag& dag, const DagIndex& index,
                  const std::vector<int>& assign) {
  double cut = 0.0;
  for (const Edge& e : dag.edges) {
    const int a = assign[index.position(e.src)];
    const int b = assign[index.position(e.dst)];
    if (a == b) continue;            // same set, or both unassigned
    if (a == -1 || b == -1) {
      if (a != -1 || b != -1) cut += e.weight;
    } else {
      cut += e.weight;
    }
  }
  return cut;
}

}  // namespace

ScoreBreakdown objective_f(const Partition& p, const WorkflowDag& dag,
                           const SchedulerConfig& cfg) {
  check_config(cfg);
  if (p.set_count() != cfg.container_count)
    throw ModelError("partition has " + std::to_string(p.set_count()) +
                     " sets, config expects " + std::to_string(cfg.container_count));
  if (dag.task_count() == 0) throw ModelError("empty workflow");
  DagIndex index(dag);
  const std::vector<int> assign = assignment_of(p, index);

  ScoreBreakdown score;
  const double e = static_cast<double>(dag.edge_count());
  score.comm_term = e > 0.0 ? cfg.mu_c * cut_weight(dag, index, assign) / e : 0.0;
  score.balance_term =
      cfg.mu_b * balance_sum(p, dag, cfg, index) / static_cast<double>(cfg.container_count);
  score.total = score.comm_term + score.balance_term;
  return score;
}

namespace {

Partition seeds_to_partition(const std::vector<int>& seed_ids) {
  Partition p;
  p.sets.reserve(seed_ids.size());
  for (int id : seed_ids) p.sets.push_back({id});
  return p;
}

void check_seed_count(const WorkflowDag& dag, const SchedulerConfig& cfg) {
  check_config(cfg);
  if (cfg.container_count > dag.task_count())
    throw ModelError("container_count " + std::to_string(cfg.container_count) +
                     " exceeds task count " + std::to_string(dag.task_count()));
}

}  // namespace

Partition init_random(const WorkflowDag& dag, const SchedulerConfig& cfg) {
  check_seed_count(dag, cfg);
  std::vector<int> ids;
  ids.reserve(dag.tasks.size());
  for (const Task& t : dag.tasks) ids.push_back(t.id);
  std::sort(ids.begin(), ids.end());

  Rng rng(cfg.seed);
  std::vector<int> seeds;
  for (int i : rng.sample_indices(dag.task_count(), cfg.container_count))
    seeds.push_back(ids[i]);
  return seeds_to_partition(seeds);
}

Partition init_ncpi(const WorkflowDag& dag, const SchedulerConfig& cfg) {
  check_seed_count(dag, cfg);
  const CriticalPath cp = critical_path(dag);
  const std::set<int> critical(cp.tasks.begin(), cp.tasks.end());

  DagIndex index(dag);
  auto by_incident_weight = [&](int a, int b) {
    const double wa = index.incident_weight(index.position(a));
    const double wb = index.incident_weight(index.position(b));
    if (wa != wb) return wa < wb;
    return a < b;
  };

  std::vector<int> non_critical, essential;
  for (const Task& t : dag.tasks)
    (critical.count(t.id) ? essential : non_critical).push_back(t.id);
  std::sort(non_critical.begin(), non_critical.end(), by_incident_weight);
  std::sort(essential.begin(), essential.end(), by_incident_weight);

  std::vector<int> seeds;
  for (int id : non_critical) {
    if (static_cast<int>(seeds.size()) == cfg.container_count) break;
    seeds.push_back(id);
  }
  // not enough tasks off the critical path: top up from the essential ones
  for (int id : essential) {
    if (static_cast<int>(seeds.size()) == cfg.container_count) break;
    seeds.push_back(id);
  }
  return seeds_to_partition(seeds);
}

ScoreBreakdown delta_score(int task_id, int target_set, const Partition& p,
                           const WorkflowDag& dag, const SchedulerConfig& cfg) {
  check_config(cfg);
  DagIndex index(dag);
  const std::vector<int> assign = assignment_of(p, index);
  const int pos = index.position(task_id);
  if (assign[pos] != -1)
    throw ModelError("task " + std::to_string(task_id) + " is already assigned");
  if (target_set < 0 || target_set >= p.set_count())
    throw ModelError("target set index out of range");

  const BalanceFunctionParams params = BalanceFunctionParams::derive(dag, cfg);

  double link_weight = 0.0;
  for (const auto& [q, w] : index.out(pos))
    if (assign[q] == target_set) link_weight += w;
  for (const auto& [q, w] : index.in(pos))
    if (assign[q] == target_set) link_weight += w;

  double penalty = 0.0;
  if (cfg.balance_mode == BalanceMode::Aggregate) {
    const double before = vertex_weight(p.sets[target_set], dag);
    const double task_w = aggregate(dag.tasks[pos].demand);
    penalty = params.g(before + task_w) - params.g(before);
  } else {
    const ResourceVector before = vertex_weight_by_resource(p.sets[target_set], dag);
    for (int k = 0; k < dag.resource_count(); ++k)
      penalty += params.g(before[k] + dag.tasks[pos].demand[k]) - params.g(before[k]);
  }

  ScoreBreakdown score;
  score.comm_term = cfg.mu_c * link_weight;
  score.balance_term = -cfg.mu_b * penalty;
  score.total = score.comm_term + score.balance_term;
  return score;
}

Partition partition_tasks(const WorkflowDag& dag, const SchedulerConfig& cfg,
                          InitMode init, const PartitionStepObserver& observer) {
  Partition p = init == InitMode::Random ? init_random(dag, cfg) : init_ncpi(dag, cfg);

  DagIndex index(dag);
  std::vector<int> assign = assignment_of(p, index);

  std::vector<int> remaining;
  if (cfg.assignment_order == AssignmentOrder::ById) {
    for (const Task& t : dag.tasks)
      if (assign[index.position(t.id)] == -1) remaining.push_back(t.id);
    std::sort(remaining.begin(), remaining.end());
  } else {
    for (int id : topological_order(dag))
      if (assign[index.position(id)] == -1) remaining.push_back(id);
  }

  for (int id : remaining) {
    std::vector<ScoreBreakdown> scores(p.set_count());
    int best = 0;
    for (int i = 0; i < p.set_count(); ++i) {
      scores[i] = delta_score(id, i, p, dag, cfg);
      if (scores[i].total > scores[best].total) best = i;
    }
    if (observer) observer(id, best, scores, p);

    auto& target = p.sets[best];
    target.insert(std::upper_bound(target.begin(), target.end(), id), id);
    assign[index.position(id)] = best;
  }
  return p;
}

double normalized_max_load(const Partition& p, const WorkflowDag& dag) {
  if (p.set_count() < 1) throw ModelError("partition has no sets");
  if (!is_complete(p, dag)) throw ModelError("partition is not complete");
  if (has_empty_set(p)) throw ModelError("normalized load is undefined for empty sets");

  double total = 0.0;
  double max_load = 0.0;
  for (const std::vector<int>& set : p.sets) {
    const double w = vertex_weight(set, dag);
    total += w;
    max_load = std::max(max_load, w);
  }
  if (total == 0.0) return 1.0;  // all sets carry equal (zero) demand
  return static_cast<double>(p.set_count()) * max_load / total;
}

}  // namespace mecsched
