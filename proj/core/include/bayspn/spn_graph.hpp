#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bayspn/leaf_models.hpp"
#include "bayspn/region_graph.hpp"
#include "bayspn/scope.hpp"
#include "bayspn/util.hpp"

namespace bayspn {

/// One data row: values plus missing mask (true = unobserved).
struct InstanceView {
  std::span<const double> values;
  std::span<const uint8_t> missing;
};

enum class NodeKind : uint8_t { Sum, Product, Leaf };

struct SpnNode {
  NodeKind kind = NodeKind::Leaf;
  int32_t origin = -1;      // region id for sums/leaves, partition id for products
  int32_t leaf_index = -1;  // dense leaf numbering into ThetaTable
  std::vector<int32_t> children;
  std::vector<double> log_weights;  // sums only, aligned with children
};

struct NodeSpan {
  int32_t first = 0;
  int32_t count = 0;
};

// Children of every sum in a region are grouped by source partition (all
// products of that partition, contiguous). partition == -1 marks the
// depth-0 case where the root sum mixes the region's own leaves directly.
struct SumGroup {
  int32_t partition = -1;
  NodeSpan span;
};

struct ScheduleItem {
  enum Kind : uint8_t { LeafRegion, Products, SumRegion } kind;
  int32_t id;  // region or partition id
};

// Computational graph laid out from a region graph: node ids are assigned
// bottom-up (children always precede parents), nodes of one region or
// partition are contiguous, and `schedule` lists the evaluation order.
struct SpnGraph {
  std::vector<SpnNode> nodes;
  int32_t root = -1;
  int num_dims = 0;
  int num_leaves = 0;
  int num_sums = 0;

  std::vector<NodeSpan> region_sums;    // per region; root always has one sum
  std::vector<NodeSpan> region_leaves;  // per region; nonempty for leaf regions
  std::vector<NodeSpan> partition_nodes;
  std::vector<std::vector<SumGroup>> region_groups;  // per region
  std::vector<ScheduleItem> schedule;
  std::vector<int32_t> sum_ids;    // sums in node-id order
  std::vector<int32_t> sum_index;  // node id -> dense sum index, -1 otherwise

  std::vector<ColumnSpec> columns;
  ThetaTable theta;

  const SpnNode& node(int32_t id) const { return nodes[id]; }
  SpnNode& node(int32_t id) { return nodes[id]; }
  int num_nodes() const { return static_cast<int>(nodes.size()); }

  /// Attaches column metadata and allocates leaf parameter slots.
  void init_leaves(std::vector<ColumnSpec> cols);
};

// All cross-products per partition, wired as children of every sum in the
// parent region; leaf regions contribute I leaves, the root region one sum,
// every other region J sums. Sum weights start uniform.
SpnGraph build_spn(const RegionGraph& rg, int leaves_per_region,
                   int sums_per_region);

// Feed-forward evaluation in the log domain (log-sum-exp at sums). Missing
// and out-of-scope dimensions contribute zero at the leaves, so any
// marginalization query is one pass. Returns per-node log values; the root
// entry is the log density.
std::vector<double> log_evaluate(const SpnGraph& spn, const ScopeTable& table,
                                 const InstanceView& instance);

/// Root log density only.
double log_density(const SpnGraph& spn, const ScopeTable& table,
                   const InstanceView& instance);

/// Number of induced trees (one kept edge per reachable sum).
double count_induced_trees(const SpnGraph& spn);

// One induced tree: the kept (sum node, child position) per reachable sum,
// in ascending sum-id order.
struct InducedTree {
  std::vector<std::pair<int32_t, int32_t>> choices;
};

// Every distinct induced tree exactly once. Guarded: throws CapacityError if
// the count exceeds `max_trees` (default 1e6).
std::vector<InducedTree> enumerate_induced_trees(const SpnGraph& spn,
                                                 double max_trees = 1e6);

// Brute-force mixture evaluation: log of the sum over induced trees of
// (kept weights product) x (leaf values product). Same guard as enumeration.
double evaluate_via_induced_trees(const SpnGraph& spn, const ScopeTable& table,
                                  const InstanceView& instance,
                                  double max_trees = 1e6);

/// Per-node scopes from a region/partition scope table via node origins.
std::vector<DimSet> node_scopes_from_table(const SpnGraph& spn,
                                           const ScopeTable& table);

// SPN-level structural and scope validation (completeness, decomposability,
// normalized weights, leaves childless, single root). Used for graphs whose
// region structure is synthetic, e.g. assembled predictive SPNs.
std::vector<std::string> validate_spn(const SpnGraph& spn,
                                      const std::vector<DimSet>& node_scopes);

}  // namespace bayspn
