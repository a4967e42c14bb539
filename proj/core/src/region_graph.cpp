#include "bayspn/region_graph.hpp"

#include <deque>

namespace bayspn {

void GraphConfig::validate() const {
  if (depth < 0) throw ConfigError("GraphConfig: depth must be >= 0");
  if (num_partitions_per_region < 1)
    throw ConfigError("GraphConfig: num_partitions_per_region must be >= 1");
  if (children_per_partition < 2)
    throw ConfigError("GraphConfig: children_per_partition must be >= 2");
  if (sums_per_region < 1)
    throw ConfigError("GraphConfig: sums_per_region (J) must be >= 1");
  if (leaves_per_region < 1)
    throw ConfigError("GraphConfig: leaves_per_region (I) must be >= 1");
}

RegionGraph build_region_graph(const GraphConfig& config, int num_dims) {
  config.validate();
  if (num_dims < 1) throw ConfigError("build_region_graph: D must be >= 1");

  std::vector<Region> regions;
  std::vector<Partition> partitions;

  regions.push_back(Region{0, -1, {}, config.depth == 0, 0});
  std::deque<int> frontier{0};

  while (!frontier.empty()) {
    const int rid = frontier.front();
    frontier.pop_front();
    if (regions[rid].layer == config.depth) continue;  // leaf layer
    for (int p = 0; p < config.num_partitions_per_region; ++p) {
      const int pid = static_cast<int>(partitions.size());
      partitions.push_back(Partition{pid, rid, {}});
      regions[rid].child_partitions.push_back(pid);
      for (int c = 0; c < config.children_per_partition; ++c) {
        const int cid = static_cast<int>(regions.size());
        const int layer = regions[rid].layer + 1;
        regions.push_back(Region{cid, pid, {}, layer == config.depth, layer});
        partitions[pid].child_regions.push_back(cid);
        frontier.push_back(cid);
      }
    }
  }
  return RegionGraph(std::move(regions), std::move(partitions), 0, num_dims);
}

std::vector<std::string> validate_region_graph(const RegionGraph& rg) {
  std::vector<std::string> out;
  const auto bad = [&](const std::string& msg) { out.push_back(msg); };
  const int nr = rg.num_regions();
  const int np = rg.num_partitions();
  if (nr == 0) {
    bad("graph has no regions");
    return out;
  }

  const auto region_ok = [&](int id) { return id >= 0 && id < nr; };
  const auto part_ok = [&](int id) { return id >= 0 && id < np; };

  if (!region_ok(rg.root_region()))
    bad("root region id " + std::to_string(rg.root_region()) +
        " does not exist");

  std::vector<int> region_parents(nr, 0), part_parents(np, 0);

  for (const Region& r : rg.regions()) {
    if (r.parent_partition != -1) {
      if (!part_ok(r.parent_partition)) {
        bad("region " + std::to_string(r.id) +
            " references missing parent partition " +
            std::to_string(r.parent_partition));
      }
    } else if (r.id != rg.root_region()) {
      bad("region " + std::to_string(r.id) +
          " has no parent but is not the root: not a single-root graph");
    }
    if (r.leaf && !r.child_partitions.empty())
      bad("region " + std::to_string(r.id) +
          " is flagged leaf but has child partitions");
    if (!r.leaf && r.child_partitions.empty())
      bad("region " + std::to_string(r.id) +
          " has no child partitions but is not flagged leaf");
    for (int pid : r.child_partitions) {
      if (!part_ok(pid)) {
        bad("region " + std::to_string(r.id) +
            " references missing partition " + std::to_string(pid));
        continue;
      }
      ++part_parents[pid];
      if (rg.partition(pid).parent_region != r.id)
        bad("partition " + std::to_string(pid) +
            " parent link does not match region " + std::to_string(r.id) +
            ": broken bipartite wiring");
    }
  }

  for (const Partition& p : rg.partitions()) {
    if (!region_ok(p.parent_region))
      bad("partition " + std::to_string(p.id) +
          " references missing parent region " +
          std::to_string(p.parent_region));
    if (static_cast<int>(p.child_regions.size()) < 2)
      bad("partition " + std::to_string(p.id) +
          " has fewer than 2 child regions: vacuous decomposition");
    for (int rid : p.child_regions) {
      if (!region_ok(rid)) {
        bad("partition " + std::to_string(p.id) +
            " references missing region " + std::to_string(rid));
        continue;
      }
      ++region_parents[rid];
      if (rg.region(rid).parent_partition != p.id)
        bad("region " + std::to_string(rid) +
            " parent link does not match partition " + std::to_string(p.id) +
            ": broken bipartite wiring");
    }
  }

  int roots = 0;
  for (const Region& r : rg.regions()) {
    if (region_parents[r.id] == 0 && r.parent_partition == -1) ++roots;
    if (region_parents[r.id] > 1)
      bad("region " + std::to_string(r.id) +
          " has multiple parent partitions: not tree-shaped");
  }
  for (const Partition& p : rg.partitions())
    if (part_parents[p.id] > 1)
      bad("partition " + std::to_string(p.id) +
          " has multiple parent regions: not tree-shaped");
  if (roots != 1)
    bad("expected exactly one root region, found " + std::to_string(roots));

  // Connectivity and acyclicity via traversal from the root.
  if (region_ok(rg.root_region())) {
    std::vector<bool> seen_r(nr, false), seen_p(np, false);
    std::deque<std::pair<bool, int>> queue{{true, rg.root_region()}};
    size_t steps = 0;
    const size_t limit = static_cast<size_t>(nr) + np + 1;
    while (!queue.empty() && steps <= limit) {
      auto [is_region, id] = queue.front();
      queue.pop_front();
      ++steps;
      if (is_region) {
        if (seen_r[id]) continue;
        seen_r[id] = true;
        for (int pid : rg.region(id).child_partitions)
          if (part_ok(pid)) queue.emplace_back(false, pid);
      } else {
        if (seen_p[id]) continue;
        seen_p[id] = true;
        for (int rid : rg.partition(id).child_regions)
          if (region_ok(rid)) queue.emplace_back(true, rid);
      }
    }
    for (int i = 0; i < nr; ++i)
      if (!seen_r[i])
        bad("region " + std::to_string(i) + " unreachable from the root");
    for (int i = 0; i < np; ++i)
      if (!seen_p[i])
        bad("partition " + std::to_string(i) + " unreachable from the root");
  }
  return out;
}

}  // namespace bayspn
