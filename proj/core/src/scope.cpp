#include "bayspn/scope.hpp"

#include <algorithm>

namespace bayspn {

ScopeAssignment sample_scope_prior(const RegionGraph& rg, double beta,
                                   Rng& rng) {
  if (!(beta > 0.0)) throw ConfigError("sample_scope_prior: beta must be > 0");
  ScopeAssignment out(rg.num_partitions(), rg.num_dims(), beta);
  std::vector<double> v;
  std::vector<double> alpha;
  for (const Partition& p : rg.partitions()) {
    const int k = static_cast<int>(p.child_regions.size());
    alpha.assign(k, beta);
    v.resize(k);
    dirichlet_draw(alpha, v, rng);
    for (int d = 0; d < rg.num_dims(); ++d)
      out.at(p.id, d) = categorical_from_weights(v, rng);
  }
  return out;
}

ScopeTable induced_scope(const RegionGraph& rg, const ScopeAssignment& y) {
  const int dims = rg.num_dims();
  ScopeTable table;
  table.region_scope.assign(rg.num_regions(), DimSet(dims));
  table.partition_scope.assign(rg.num_partitions(), DimSet(dims));
  table.region_scope[rg.root_region()].set_all();

  // Ids are breadth-first, so a region's scope is final before its children's.
  for (const Region& r : rg.regions()) {
    const DimSet& rs = table.region_scope[r.id];
    for (int pid : r.child_partitions) {
      table.partition_scope[pid] = rs;
      const Partition& p = rg.partition(pid);
      for (int d = 0; d < dims; ++d) {
        if (!rs.test(d)) continue;
        table.region_scope[p.child_regions[y.at(pid, d)]].set(d);
      }
    }
  }
  return table;
}

std::vector<std::string> validate_scope(const RegionGraph& rg,
                                        const ScopeTable& table) {
  std::vector<std::string> out;
  const auto bad = [&](const std::string& m) { out.push_back(m); };
  if (static_cast<int>(table.region_scope.size()) != rg.num_regions() ||
      static_cast<int>(table.partition_scope.size()) != rg.num_partitions()) {
    bad("scope table size does not match the region graph");
    return out;
  }

  if (table.region_scope[rg.root_region()].count() != rg.num_dims())
    bad("root region scope is not the full dimension set");

  for (const Region& r : rg.regions()) {
    for (int pid : r.child_partitions) {
      if (!(table.partition_scope[pid] == table.region_scope[r.id]))
        bad("partition " + std::to_string(pid) +
            " scope differs from its parent region " + std::to_string(r.id));
    }
  }

  for (const Partition& p : rg.partitions()) {
    DimSet u(rg.num_dims());
    for (size_t i = 0; i < p.child_regions.size(); ++i) {
      const DimSet& a = table.region_scope[p.child_regions[i]];
      for (size_t j = i + 1; j < p.child_regions.size(); ++j) {
        if (a.intersects(table.region_scope[p.child_regions[j]]))
          bad("decomposability violation at partition " + std::to_string(p.id) +
              ": children " + std::to_string(p.child_regions[i]) + " and " +
              std::to_string(p.child_regions[j]) + " share dimensions");
      }
      u.unite(a);
    }
    if (!(u == table.partition_scope[p.id]))
      bad("completeness violation at partition " + std::to_string(p.id) +
          ": child scopes do not union to the partition scope");
  }
  return out;
}

ScopeState ScopeState::materialize(const RegionGraph& rg,
                                   const ScopeAssignment& y) {
  ScopeState st;
  st.table_ = induced_scope(rg, y);
  st.counts_.resize(rg.num_partitions());
  for (const Partition& p : rg.partitions()) {
    st.counts_[p.id].assign(p.child_regions.size(), 0);
    for (int d = 0; d < rg.num_dims(); ++d)
      if (st.table_.partition_scope[p.id].test(d))
        ++st.counts_[p.id][y.at(p.id, d)];
  }
  return st;
}

void ScopeState::set_assignment(const RegionGraph& rg, ScopeAssignment& y,
                                int p, int d, int k) {
  const int k_old = y.at(p, d);
  const bool p_in = table_.partition_scope[p].test(d);
  y.at(p, d) = k;
  if (p_in && k_old != k) {
    --counts_[p][k_old];
    ++counts_[p][k];
  }
  if (k_old == k) return;

  // Recompute dimension d's membership top-down; partitions other than p keep
  // their assignment, so membership flips adjust their counts directly.
  std::vector<uint8_t> in_region(rg.num_regions(), 0);
  in_region[rg.root_region()] = 1;
  for (const Region& r : rg.regions()) {
    const bool rin = in_region[r.id];
    if (rin != table_.region_scope[r.id].test(d))
      table_.region_scope[r.id].assign(d, rin);
    for (int pid : r.child_partitions) {
      if (rin != table_.partition_scope[pid].test(d)) {
        table_.partition_scope[pid].assign(d, rin);
        const int kk = y.at(pid, d);
        counts_[pid][kk] += rin ? 1 : -1;
      }
      if (rin) {
        const Partition& part = rg.partition(pid);
        in_region[part.child_regions[y.at(pid, d)]] = 1;
      }
    }
  }
}

}  // namespace bayspn
