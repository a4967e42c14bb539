#pragma once

#include <string>
#include <vector>

#include "bayspn/region_graph.hpp"
#include "bayspn/rng.hpp"
#include "bayspn/util.hpp"

namespace bayspn {

// Dense per-(partition, dimension) child choices. Every pair is stored, even
// ones whose dimension never reaches the partition; those entries are inert
// but still part of the generative model's state. Child indices are 0-based
// in memory and 1-based in the serialized form.
struct ScopeAssignment {
  int num_partitions = 0;
  int num_dims = 0;
  double beta = 1.0;  // symmetric Dirichlet concentration for the collapsed v
  std::vector<int32_t> y;  // row-major [num_partitions][num_dims]

  ScopeAssignment() = default;
  ScopeAssignment(int partitions, int dims, double beta_in)
      : num_partitions(partitions),
        num_dims(dims),
        beta(beta_in),
        y(static_cast<size_t>(partitions) * dims, 0) {}

  int32_t at(int p, int d) const {
    return y[static_cast<size_t>(p) * num_dims + d];
  }
  int32_t& at(int p, int d) {
    return y[static_cast<size_t>(p) * num_dims + d];
  }
};

/// Materialized scope per region/partition.
struct ScopeTable {
  std::vector<DimSet> region_scope;
  std::vector<DimSet> partition_scope;
};

// Per partition: v ~ Dirichlet(beta,...), then each y_{P,d} iid Cat(v);
// v is discarded (it is integrated out everywhere else).
ScopeAssignment sample_scope_prior(const RegionGraph& rg, double beta,
                                   Rng& rng);

// Scope induced by y: the root carries all dimensions; a partition inherits
// its parent region's scope; child k of a partition receives the dimensions
// the partition routes to it.
ScopeTable induced_scope(const RegionGraph& rg, const ScopeAssignment& y);

// Checks root fullness, region/partition equality, child-union and pairwise
// disjointness. Empty result iff the table is a proper scope function.
std::vector<std::string> validate_scope(const RegionGraph& rg,
                                        const ScopeTable& table);

// ScopeTable plus the bookkeeping the collapsed y-sweep needs: per-partition
// counts of dimensions assigned to each child, and O(graph) single-dimension
// refresh when one y entry changes.
class ScopeState {
 public:
  ScopeState() = default;
  static ScopeState materialize(const RegionGraph& rg,
                                const ScopeAssignment& y);

  const ScopeTable& table() const { return table_; }
  bool partition_has_dim(int p, int d) const {
    return table_.partition_scope[p].test(d);
  }
  bool region_has_dim(int r, int d) const {
    return table_.region_scope[r].test(d);
  }
  /// #{d in scope(P) : y_{P,d} = k}
  int assigned_count(int p, int k) const { return counts_[p][k]; }

  /// Applies y_{P,d} = k and refreshes dimension d's memberships everywhere.
  void set_assignment(const RegionGraph& rg, ScopeAssignment& y, int p, int d,
                      int k);

 private:
  ScopeTable table_;
  std::vector<std::vector<int>> counts_;
};

}  // namespace bayspn
