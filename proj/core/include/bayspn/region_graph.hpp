#pragma once

#include <string>
#include <vector>

#include "bayspn/util.hpp"

namespace bayspn {

// Tree-shaped bipartite skeleton of regions and partitions. The scope
// function is learned on top of it; the SPN graph is laid out from it.
struct Region {
  int id = -1;
  int parent_partition = -1;  // -1 for the root
  std::vector<int> child_partitions;
  bool leaf = false;
  int layer = 0;  // depth below root; derived, 0 for root
};

struct Partition {
  int id = -1;
  int parent_region = -1;
  std::vector<int> child_regions;
};

struct GraphConfig {
  int depth = 2;                    // region layers below root
  int num_partitions_per_region = 2;
  int children_per_partition = 2;
  int sums_per_region = 4;          // J
  int leaves_per_region = 4;        // I

  void validate() const;
};

class RegionGraph {
 public:
  RegionGraph() = default;
  RegionGraph(std::vector<Region> regions, std::vector<Partition> partitions,
              int root_region, int num_dims)
      : regions_(std::move(regions)),
        partitions_(std::move(partitions)),
        root_region_(root_region),
        num_dims_(num_dims) {}

  const std::vector<Region>& regions() const { return regions_; }
  const std::vector<Partition>& partitions() const { return partitions_; }
  const Region& region(int id) const { return regions_[id]; }
  const Partition& partition(int id) const { return partitions_[id]; }
  int root_region() const { return root_region_; }
  int num_regions() const { return static_cast<int>(regions_.size()); }
  int num_partitions() const { return static_cast<int>(partitions_.size()); }
  int num_dims() const { return num_dims_; }

 private:
  std::vector<Region> regions_;
  std::vector<Partition> partitions_;
  int root_region_ = 0;
  int num_dims_ = 0;
};

// Uniform-arity layered builder: every non-leaf region gets exactly
// num_partitions_per_region child partitions, every partition exactly
// children_per_partition child regions; regions at layer `depth` are leaves.
// Region/partition ids are assigned in breadth-first order, so parents always
// precede children.
RegionGraph build_region_graph(const GraphConfig& config, int num_dims);

// Structural validation; violations are data, not errors. Empty result means
// all Def.-4-style invariants hold (bipartite links, single root, at most one
// parent, partitions with >= 2 children, referential integrity, connected,
// acyclic).
std::vector<std::string> validate_region_graph(const RegionGraph& rg);

}  // namespace bayspn
