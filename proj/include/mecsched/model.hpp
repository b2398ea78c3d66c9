#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mecsched {

/// Normalized resource shares, one component per resource type.
/// Each component is a task demand (or server capacity) expressed as a
/// fraction of the fleet-wide total for that resource.
using ResourceVector = std::vector<double>;

double aggregate(const ResourceVector& v);
void add_in_place(ResourceVector& lhs, const ResourceVector& rhs);
void subtract_in_place(ResourceVector& lhs, const ResourceVector& rhs);

struct Task {
  int id = 0;
  ResourceVector demand;
  double send_time = 0.0;  // transmission time of the task's output
};

struct Edge {
  int src = 0;
  int dst = 0;
  double weight = 0.0;  // communication time from src to dst
};

struct WorkflowDag {
  std::vector<Task> tasks;
  std::vector<Edge> edges;

  int task_count() const { return static_cast<int>(tasks.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int resource_count() const {
    return tasks.empty() ? 0 : static_cast<int>(tasks.front().demand.size());
  }
};

struct Server {
  int id = 0;
  ResourceVector capacity;
};

struct ServerFleet {
  std::vector<std::string> resource_names;
  std::vector<Server> servers;

  int server_count() const { return static_cast<int>(servers.size()); }
  int resource_count() const { return static_cast<int>(resource_names.size()); }
  // index of a named resource, or -1
  int resource_index(const std::string& name) const;
};

enum class BalanceMode { Aggregate, PerResource };
enum class AssignmentOrder { ById, Topological };

struct SchedulerConfig {
  double mu_c = 0.5;
  double mu_b = 0.5;
  double theta = 1.5;
  int container_count = 1;
  std::uint64_t seed = 0;
  BalanceMode balance_mode = BalanceMode::Aggregate;
  AssignmentOrder assignment_order = AssignmentOrder::ById;
};

// Throws ModelError if a config field is out of its allowed range.
void check_config(const SchedulerConfig& cfg);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model input or violated operation precondition.
class ModelError : public Error {
 public:
  using Error::Error;
};

class CycleError : public ModelError {
 public:
  CycleError(const std::string& msg, int member)
      : ModelError(msg), cycle_member(member) {}
  int cycle_member;  // id of one task on a cycle
};

/// Oracle instance-size guard exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// No feasible server for a container.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& msg, int container)
      : Error(msg), container_id(container) {}
  int container_id;
};

/// Capacity constraint found breached after the fact.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& code) const;
  std::string to_string() const;
};

ValidationReport validate_dag(const WorkflowDag& dag);
ValidationReport validate_fleet(const ServerFleet& fleet);
// Full model check: dag invariants, fleet invariants, and dag/fleet
// resource-arity agreement. Violations are data, never exceptions.
ValidationReport validate(const WorkflowDag& dag, const ServerFleet& fleet);

/// Positional adjacency index over a structurally sound dag.
/// Construction throws ModelError on duplicate task ids or edges that
/// reference unknown tasks; cycles are permitted (detected by the
/// traversal operations instead).
class DagIndex {
 public:
  explicit DagIndex(const WorkflowDag& dag);

  int size() const { return static_cast<int>(out_.size()); }
  int position(int task_id) const;  // throws ModelError on unknown id
  bool contains(int task_id) const;
  int id_at(int pos) const { return ids_[pos]; }
  const std::vector<std::pair<int, double>>& out(int pos) const { return out_[pos]; }
  const std::vector<std::pair<int, double>>& in(int pos) const { return in_[pos]; }
  // total weight of all edges incident to the task (in + out)
  double incident_weight(int pos) const;

 private:
  std::vector<int> ids_;                                // pos -> id
  std::unordered_map<int, int> pos_;                    // id -> pos
  std::vector<std::vector<std::pair<int, double>>> out_;  // (dst pos, weight)
  std::vector<std::vector<std::pair<int, double>>> in_;   // (src pos, weight)
};

/// Task ids in dependency order; ties broken by ascending id.
/// Throws CycleError naming one cycle member if the graph is cyclic.
std::vector<int> topological_order(const WorkflowDag& dag);

struct CriticalPath {
  std::vector<std::pair<int, int>> edges;  // (src,dst), sorted
  std::vector<int> tasks;                  // endpoints of critical edges, sorted
  double length = 0.0;                     // max source-to-sink path weight
};

/// Maximum-total-edge-weight source-to-sink path structure: forward pass h,
/// backward pass u initialized to max(h), zero-slack edge test. Isolated
/// vertices are never critical.
CriticalPath critical_path(const WorkflowDag& dag);

double total_edge_weight(const WorkflowDag& dag);

}  // namespace mecsched
