#include "mecsched/metrics.hpp"

#include <cmath>

namespace mecsched {

Matrix container_dependency(const Partition& p, const WorkflowDag& dag) {
  DagIndex index(dag);
  const std::vector<int> assign = assignment_of(p, index);
  const int c = p.set_count();

  Matrix f(c, std::vector<double>(c, 0.0));
  for (const Edge& e : dag.edges) {
    const int i = assign[index.position(e.src)];
    const int j = assign[index.position(e.dst)];
    if (i < 0 || j < 0)
      throw ModelError("container dependency requires a complete partition");
    if (i != j) f[i][j] += e.weight;
  }
  return f;
}

Matrix server_dependency(const PlacementMap& m, const Matrix& f, int server_count) {
  const int c = static_cast<int>(f.size());
  if (m.container_count() != c)
    throw ModelError("placement covers a different number of containers than F");

  Matrix g(server_count, std::vector<double>(server_count, 0.0));
  for (int p = 0; p < c; ++p) {
    for (int q = 0; q < c; ++q) {
      if (f[p][q] == 0.0) continue;
      const int i = m.server_of[p];
      const int j = m.server_of[q];
      if (i < 0 || j < 0 || i >= server_count || j >= server_count)
        throw ModelError("container in F is not assigned to a server");
      if (i != j) g[i][j] += f[p][q];
    }
  }
  return g;
}

double comm_overhead(const Matrix& g, const WorkflowDag& dag, CommNormalization norm) {
  double cross = 0.0;
  for (const auto& row : g)
    for (double v : row) cross += v;

  double denom = 0.0;
  if (norm == CommNormalization::TotalEdgeWeight) {
    denom = total_edge_weight(dag);
  } else {
    for (const Task& t : dag.tasks) denom += t.send_time;
  }
  if (denom == 0.0) {
    if (cross > 0.0)
      throw ModelError("communication overhead is undefined: zero total communication time");
    return 0.0;
  }
  return cross / denom;
}

ServerBalance server_balance(const PlacementMap& m,
                             const std::vector<ContainerProfile>& containers,
                             const ServerFleet& fleet) {
  const int s = fleet.server_count();
  const int r = fleet.resource_count();

  std::vector<ResourceVector> used(s, ResourceVector(r, 0.0));
  for (const ContainerProfile& c : containers) {
    const int server = m.server_of.at(c.id);
    if (server < 0 || server >= s) throw ModelError("container assigned to unknown server");
    add_in_place(used[server], c.demand);
  }

  ServerBalance balance;
  balance.per_server.assign(s, 0.0);
  for (int i = 0; i < s; ++i) {
    double mean = 0.0;
    std::vector<double> util(r, 0.0);
    for (int k = 0; k < r; ++k) {
      util[k] = used[i][k] / fleet.servers[i].capacity[k];
      if (util[k] > 1.0 + 1e-9)
        throw ConstraintError("server " + std::to_string(fleet.servers[i].id) +
                              " utilization exceeds capacity");
      mean += util[k];
    }
    mean /= static_cast<double>(r);
    double b = 0.0;
    for (int k = 0; k < r; ++k) b += (util[k] - mean) * (util[k] - mean);
    balance.per_server[i] = b / static_cast<double>(r);
    balance.total += balance.per_server[i];
  }
  return balance;
}

UtilizationAverages utilization_averages(const PlacementMap& m,
                                         const std::vector<ContainerProfile>& containers,
                                         const ServerFleet& fleet) {
  const int cpu = fleet.resource_index("cpu");
  const int mem = fleet.resource_index("mem");
  if (cpu < 0 || mem < 0)
    throw ModelError("fleet does not declare both 'cpu' and 'mem' resources");

  const int s = fleet.server_count();
  std::vector<ResourceVector> used(s, ResourceVector(fleet.resource_count(), 0.0));
  std::vector<int> hosted(s, 0);
  for (const ContainerProfile& c : containers) {
    const int server = m.server_of.at(c.id);
    if (server < 0 || server >= s) throw ModelError("container assigned to unknown server");
    add_in_place(used[server], c.demand);
    hosted[server]++;
  }

  UtilizationAverages avg;
  for (int i = 0; i < s; ++i) {
    if (hosted[i] == 0) continue;
    avg.occupied++;
    avg.cpu += used[i][cpu] / fleet.servers[i].capacity[cpu];
    avg.mem += used[i][mem] / fleet.servers[i].capacity[mem];
  }
  if (avg.occupied > 0) {
    avg.cpu /= static_cast<double>(avg.occupied);
    avg.mem /= static_cast<double>(avg.occupied);
  }
  return avg;
}

double joint_objective(const Partition& p, const PlacementMap& m,
                       const WorkflowDag& dag, const ServerFleet& fleet,
                       const SchedulerConfig& cfg) {
  check_config(cfg);
  const Matrix f = container_dependency(p, dag);
  const Matrix g = server_dependency(m, f, fleet.server_count());
  const double c_oh = comm_overhead(g, dag);
  const ServerBalance balance =
      server_balance(m, containers_from_partition(p, dag), fleet);
  return cfg.mu_c * c_oh + cfg.mu_b * balance.total;
}

ScheduleMetrics evaluate_schedule(const Partition& p, const PlacementMap& m,
                                  const WorkflowDag& dag, const ServerFleet& fleet,
                                  const SchedulerConfig& cfg) {
  check_config(cfg);
  const std::vector<ContainerProfile> containers = containers_from_partition(p, dag);
  const Matrix f = container_dependency(p, dag);
  const Matrix g = server_dependency(m, f, fleet.server_count());
  const ServerBalance balance = server_balance(m, containers, fleet);
  const UtilizationAverages util = utilization_averages(m, containers, fleet);

  ScheduleMetrics metrics;
  metrics.comm_overhead = comm_overhead(g, dag);
  metrics.balance_total = balance.total;
  metrics.per_server_balance = balance.per_server;
  metrics.cpu_util = util.cpu;
  metrics.mem_util = util.mem;
  metrics.occupied_servers = util.occupied;
  metrics.joint_objective = cfg.mu_c * metrics.comm_overhead + cfg.mu_b * metrics.balance_total;
  return metrics;
}

}  // namespace mecsched
