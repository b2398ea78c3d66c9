#include "mecsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

namespace mecsched {

double aggregate(const ResourceVector& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

void add_in_place(ResourceVector& lhs, const ResourceVector& rhs) {
  if (lhs.size() != rhs.size())
    throw ModelError("resource vector arity mismatch in add");
  for (std::size_t k = 0; k < lhs.size(); ++k) lhs[k] += rhs[k];
}

void subtract_in_place(ResourceVector& lhs, const ResourceVector& rhs) {
  if (lhs.size() != rhs.size())
    throw ModelError("resource vector arity mismatch in subtract");
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    lhs[k] -= rhs[k];
    // exact fits leave floating-point dust behind; keep residuals clean
    if (lhs[k] < 0.0 && lhs[k] > -1e-12) lhs[k] = 0.0;
  }
}

int ServerFleet::resource_index(const std::string& name) const {
  for (int k = 0; k < resource_count(); ++k)
    if (resource_names[k] == name) return k;
  return -1;
}

void check_config(const SchedulerConfig& cfg) {
  if (cfg.mu_c < 0.0 || cfg.mu_c > 1.0)
    throw ModelError("mu_c must lie in [0,1]");
  if (cfg.mu_b < 0.0 || cfg.mu_b > 1.0)
    throw ModelError("mu_b must lie in [0,1]");
  if (cfg.theta < 1.0) throw ModelError("theta must be >= 1");
  if (cfg.container_count < 1) throw ModelError("container_count must be >= 1");
}

bool ValidationReport::has(const std::string& code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const Violation& v : violations) os << v.code << ": " << v.message << "\n";
  return os.str();
}

namespace {

void append(ValidationReport& r, std::string code, std::string msg) {
  r.violations.push_back({std::move(code), std::move(msg)});
}

}  // namespace

ValidationReport validate_dag(const WorkflowDag& dag) {
  ValidationReport report;

  std::set<int> ids;
  for (const Task& t : dag.tasks) {
    if (!ids.insert(t.id).second)
      append(report, "duplicate-task-id", "task id " + std::to_string(t.id) + " appears more than once");
    if (t.send_time < 0.0)
      append(report, "negative-send-time", "task " + std::to_string(t.id) + " has negative send_time");
    for (double d : t.demand) {
      if (d < 0.0 || d > 1.0) {
        append(report, "demand-range",
               "task " + std::to_string(t.id) + " demand component outside [0,1]");
        break;
      }
    }
    if (!dag.tasks.empty() && t.demand.size() != dag.tasks.front().demand.size())
      append(report, "demand-arity", "task " + std::to_string(t.id) + " demand arity differs");
  }

  std::set<std::pair<int, int>> seen_edges;
  bool structurally_sound = !report.has("duplicate-task-id");
  for (const Edge& e : dag.edges) {
    std::string name = std::to_string(e.src) + "->" + std::to_string(e.dst);
    if (e.src == e.dst)
      append(report, "self-loop", "edge " + name + " is a self-loop");
    if (!ids.count(e.src) || !ids.count(e.dst)) {
      append(report, "dangling-edge", "edge " + name + " references an unknown task");
      structurally_sound = false;
    }
    if (!seen_edges.insert({e.src, e.dst}).second)
      append(report, "duplicate-edge", "edge " + name + " appears more than once");
    if (e.weight < 0.0)
      append(report, "negative-edge-weight", "edge " + name + " has negative weight");
  }

  if (structurally_sound) {
    try {
      topological_order(dag);
    } catch (const CycleError& c) {
      append(report, "cycle",
             "graph contains a cycle through task " + std::to_string(c.cycle_member));
    }
  }
  return report;
}

ValidationReport validate_fleet(const ServerFleet& fleet) {
  ValidationReport report;
  std::set<int> ids;
  for (const Server& s : fleet.servers) {
    if (!ids.insert(s.id).second)
      append(report, "duplicate-server-id", "server id " + std::to_string(s.id) + " appears more than once");
    if (s.capacity.size() != static_cast<std::size_t>(fleet.resource_count()))
      append(report, "fleet-arity", "server " + std::to_string(s.id) + " capacity arity differs from resource list");
    for (double c : s.capacity) {
      if (c <= 0.0) {
        append(report, "capacity-nonpositive",
               "server " + std::to_string(s.id) + " has a non-positive capacity component");
        break;
      }
    }
  }
  return report;
}

ValidationReport validate(const WorkflowDag& dag, const ServerFleet& fleet) {
  ValidationReport report = validate_dag(dag);
  ValidationReport fleet_report = validate_fleet(fleet);
  report.violations.insert(report.violations.end(), fleet_report.violations.begin(),
                           fleet_report.violations.end());
  if (!dag.tasks.empty() && dag.resource_count() != fleet.resource_count())
    append(report, "resource-mismatch",
           "workflow demands have " + std::to_string(dag.resource_count()) +
               " resource types, fleet declares " + std::to_string(fleet.resource_count()));
  return report;
}

DagIndex::DagIndex(const WorkflowDag& dag) {
  ids_.reserve(dag.tasks.size());
  for (const Task& t : dag.tasks) {
    if (!pos_.emplace(t.id, static_cast<int>(ids_.size())).second)
      throw ModelError("duplicate task id " + std::to_string(t.id));
    ids_.push_back(t.id);
  }
  out_.resize(ids_.size());
  in_.resize(ids_.size());
  for (const Edge& e : dag.edges) {
    auto s = pos_.find(e.src);
    auto d = pos_.find(e.dst);
    if (s == pos_.end() || d == pos_.end())
      throw ModelError("edge " + std::to_string(e.src) + "->" + std::to_string(e.dst) +
                       " references an unknown task");
    out_[s->second].push_back({d->second, e.weight});
    in_[d->second].push_back({s->second, e.weight});
  }
}

int DagIndex::position(int task_id) const {
  auto it = pos_.find(task_id);
  if (it == pos_.end()) throw ModelError("unknown task id " + std::to_string(task_id));
  return it->second;
}

bool DagIndex::contains(int task_id) const { return pos_.count(task_id) > 0; }

double DagIndex::incident_weight(int pos) const {
  double w = 0.0;
  for (const auto& [q, weight] : out_[pos]) w += weight;
  for (const auto& [p, weight] : in_[pos]) w += weight;
  return w;
}

std::vector<int> topological_order(const WorkflowDag& dag) {
  DagIndex index(dag);
  const int n = index.size();

  std::vector<int> indegree(n, 0);
  for (int p = 0; p < n; ++p)
    for (const auto& [q, w] : index.out(p)) indegree[q]++;

  // min-heap on task id for the deterministic tie-break
  auto cmp = [&](int a, int b) { return index.id_at(a) > index.id_at(b); };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
  for (int p = 0; p < n; ++p)
    if (indegree[p] == 0) ready.push(p);

  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    int p = ready.top();
    ready.pop();
    order.push_back(index.id_at(p));
    for (const auto& [q, w] : index.out(p))
      if (--indegree[q] == 0) ready.push(q);
  }

  if (static_cast<int>(order.size()) != n) {
    int member = -1;
    for (int p = 0; p < n; ++p)
      if (indegree[p] > 0 && (member < 0 || index.id_at(p) < member)) member = index.id_at(p);
    throw CycleError("workflow graph contains a cycle through task " + std::to_string(member),
                     member);
  }
  return order;
}

CriticalPath critical_path(const WorkflowDag& dag) {
  const std::vector<int> order = topological_order(dag);  // throws on cycles
  DagIndex index(dag);
  const int n = index.size();

  // forward pass: h[v] = heaviest path weight from any source to v
  std::vector<double> h(n, 0.0);
  for (int id : order) {
    const int v = index.position(id);
    for (const auto& [p, w] : index.in(v)) h[v] = std::max(h[v], h[p] + w);
  }
  double length = 0.0;
  for (int v = 0; v < n; ++v) length = std::max(length, h[v]);

  // backward pass: u[v] = latest start, initialized to the global maximum
  std::vector<double> u(n, length);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = index.position(*it);
    for (const auto& [q, w] : index.out(v)) u[v] = std::min(u[v], u[q] - w);
  }

  // zero-slack edges are exactly the edges of maximum source-to-sink paths
  const double tol = 1e-9 * std::max(1.0, length);
  CriticalPath result;
  result.length = length;
  std::set<int> critical_tasks;
  for (const Edge& e : dag.edges) {
    const int p = index.position(e.src);
    const int q = index.position(e.dst);
    if (std::abs((u[q] - e.weight) - h[p]) <= tol) {
      result.edges.push_back({e.src, e.dst});
      critical_tasks.insert(e.src);
      critical_tasks.insert(e.dst);
    }
  }
  std::sort(result.edges.begin(), result.edges.end());
  result.tasks.assign(critical_tasks.begin(), critical_tasks.end());
  return result;
}

double total_edge_weight(const WorkflowDag& dag) {
  double total = 0.0;
  for (const Edge& e : dag.edges) total += e.weight;
  return total;
}

}  // namespace mecsched
