#include "bayspn/spn_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bayspn {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logsumexp(std::span<const double> v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}
}  // namespace

void SpnGraph::init_leaves(std::vector<ColumnSpec> cols) {
  if (static_cast<int>(cols.size()) != num_dims)
    throw ConfigError("init_leaves: column count does not match D");
  for (const ColumnSpec& c : cols) c.validate();
  columns = std::move(cols);
  theta = ThetaTable(num_leaves, columns);
}

SpnGraph build_spn(const RegionGraph& rg, int leaves_per_region,
                   int sums_per_region) {
  if (leaves_per_region < 1 || sums_per_region < 1)
    throw ConfigError("build_spn: I and J must be >= 1");

  SpnGraph spn;
  spn.num_dims = rg.num_dims();
  spn.region_nodes.resize(rg.num_regions());
  spn.partition_nodes.resize(rg.num_partitions());
  spn.region_groups.resize(rg.num_regions());

  // Deepest regions first so children always exist before parents.
  std::vector<int> order(rg.num_regions());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return rg.region(a).layer > rg.region(b).layer;
  });

  const auto add_node = [&](SpnNode n) {
    spn.nodes.push_back(std::move(n));
    return static_cast<int32_t>(spn.nodes.size() - 1);
  };

  for (int rid : order) {
    const Region& r = rg.region(rid);
    const bool is_root = rid == rg.root_region();

    if (r.leaf) {
      NodeSpan span{static_cast<int32_t>(spn.nodes.size()), leaves_per_region};
      for (int i = 0; i < leaves_per_region; ++i) {
        SpnNode n;
        n.kind = NodeKind::Leaf;
        n.origin = rid;
        n.leaf_index = spn.num_leaves++;
        add_node(std::move(n));
      }
      spn.region_nodes[rid] = span;
      spn.schedule.push_back({ScheduleItem::LeafRegion, rid});
      if (!is_root) continue;
      // depth-0: the root region is also the leaf region; a single root sum
      // mixes the leaves directly
      SpnNode root;
      root.kind = NodeKind::Sum;
      root.origin = rid;
      for (int i = 0; i < span.count; ++i)
        root.children.push_back(span.first + i);
      root.log_weights.assign(span.count, -std::log(double(span.count)));
      spn.root = add_node(std::move(root));
      spn.region_groups[rid] = {SumGroup{-1, span}};
      spn.region_nodes[rid] = {span.first, span.count + 1};
      spn.schedule.push_back({ScheduleItem::SumRegion, rid});
      continue;
    }

    // products of the child partitions (cross-products, last child region's
    // index varying fastest)
    std::vector<SumGroup> groups;
    for (int pid : r.child_partitions) {
      const Partition& part = rg.partition(pid);
      const int k = static_cast<int>(part.child_regions.size());
      int total = 1;
      for (int cid : part.child_regions) total *= spn.region_nodes[cid].count;

      NodeSpan span{static_cast<int32_t>(spn.nodes.size()), total};
      std::vector<int> idx(k, 0);
      for (int p = 0; p < total; ++p) {
        SpnNode n;
        n.kind = NodeKind::Product;
        n.origin = pid;
        for (int c = 0; c < k; ++c)
          n.children.push_back(spn.region_nodes[part.child_regions[c]].first +
                               idx[c]);
        add_node(std::move(n));
        for (int c = k - 1; c >= 0; --c) {
          if (++idx[c] < spn.region_nodes[part.child_regions[c]].count) break;
          idx[c] = 0;
        }
      }
      spn.partition_nodes[pid] = span;
      groups.push_back(SumGroup{pid, span});
      spn.schedule.push_back({ScheduleItem::Products, pid});
    }
    spn.region_groups[rid] = groups;

    // sums: a single output sum for the root, J otherwise
    const int num_sums = is_root ? 1 : sums_per_region;
    std::vector<int32_t> children;
    for (const SumGroup& g : groups)
      for (int i = 0; i < g.span.count; ++i)
        children.push_back(g.span.first + i);
    NodeSpan span{static_cast<int32_t>(spn.nodes.size()), num_sums};
    for (int s = 0; s < num_sums; ++s) {
      SpnNode n;
      n.kind = NodeKind::Sum;
      n.origin = rid;
      n.children = children;
      n.log_weights.assign(children.size(),
                           -std::log(double(children.size())));
      add_node(std::move(n));
    }
    spn.region_nodes[rid] = span;
    if (is_root) spn.root = span.first;
    spn.schedule.push_back({ScheduleItem::SumRegion, rid});
  }

  spn.sum_index.assign(spn.nodes.size(), -1);
  for (int32_t i = 0; i < spn.num_nodes(); ++i) {
    if (spn.nodes[i].kind == NodeKind::Sum) {
      spn.sum_index[i] = static_cast<int32_t>(spn.sum_ids.size());
      spn.sum_ids.push_back(i);
    }
  }
  spn.num_sums = static_cast<int>(spn.sum_ids.size());
  return spn;
}

std::vector<double> log_evaluate(const SpnGraph& spn, const ScopeTable& table,
                                 const InstanceView& instance) {
  if (spn.theta.num_leaves() != spn.num_leaves)
    throw NumericError("log_evaluate: leaf parameters are not populated");
  std::vector<double> value(spn.nodes.size(), 0.0);
  std::vector<double> tmp;

  for (int32_t id = 0; id < spn.num_nodes(); ++id) {
    const SpnNode& n = spn.nodes[id];
    switch (n.kind) {
      case NodeKind::Leaf: {
        double v = 0.0;
        const DimSet& scope = table.region_scope[n.origin];
        for (int d = 0; d < spn.num_dims; ++d) {
          if (!scope.test(d) || instance.missing[d]) continue;
          v += leaf_log_density(spn.columns[d], spn.theta.at(n.leaf_index, d),
                                instance.values[d]);
        }
        value[id] = v;
        break;
      }
      case NodeKind::Product: {
        double v = 0.0;
        for (int32_t c : n.children) v += value[c];
        value[id] = v;
        break;
      }
      case NodeKind::Sum: {
        tmp.resize(n.children.size());
        for (size_t k = 0; k < n.children.size(); ++k)
          tmp[k] = n.log_weights[k] + value[n.children[k]];
        value[id] = logsumexp(tmp);
        break;
      }
    }
  }
  return value;
}

double log_density(const SpnGraph& spn, const ScopeTable& table,
                   const InstanceView& instance) {
  return log_evaluate(spn, table, instance)[spn.root];
}

double count_induced_trees(const SpnGraph& spn) {
  std::vector<double> count(spn.nodes.size(), 1.0);
  for (int32_t id = 0; id < spn.num_nodes(); ++id) {
    const SpnNode& n = spn.nodes[id];
    if (n.kind == NodeKind::Product) {
      double c = 1.0;
      for (int32_t ch : n.children) c *= count[ch];
      count[id] = c;
    } else if (n.kind == NodeKind::Sum) {
      double c = 0.0;
      for (int32_t ch : n.children) c += count[ch];
      count[id] = c;
    }
  }
  return count[spn.root];
}

std::vector<InducedTree> enumerate_induced_trees(const SpnGraph& spn,
                                                 double max_trees) {
  const double total = count_induced_trees(spn);
  if (total > max_trees)
    throw CapacityError("enumerate_induced_trees: " + std::to_string(total) +
                        " trees exceed the guard of " +
                        std::to_string(max_trees));

  // Bottom-up: per node, the list of partial trees rooted there (node ids are
  // topological). A partial tree is its sorted (sum, choice) list.
  using Choices = std::vector<std::pair<int32_t, int32_t>>;
  std::vector<std::vector<Choices>> trees(spn.nodes.size());
  for (int32_t id = 0; id < spn.num_nodes(); ++id) {
    const SpnNode& n = spn.nodes[id];
    if (n.kind == NodeKind::Leaf) {
      trees[id] = {Choices{}};
    } else if (n.kind == NodeKind::Sum) {
      std::vector<Choices> out;
      for (size_t k = 0; k < n.children.size(); ++k) {
        for (const Choices& sub : trees[n.children[k]]) {
          Choices t;
          t.reserve(sub.size() + 1);
          t.push_back({id, static_cast<int32_t>(k)});
          t.insert(t.end(), sub.begin(), sub.end());
          out.push_back(std::move(t));
        }
      }
      trees[id] = std::move(out);
    } else {
      std::vector<Choices> out = {Choices{}};
      for (int32_t ch : n.children) {
        std::vector<Choices> next;
        next.reserve(out.size() * trees[ch].size());
        for (const Choices& a : out) {
          for (const Choices& b : trees[ch]) {
            Choices t;
            t.reserve(a.size() + b.size());
            std::merge(a.begin(), a.end(), b.begin(), b.end(),
                       std::back_inserter(t));
            next.push_back(std::move(t));
          }
        }
        out = std::move(next);
      }
      trees[id] = std::move(out);
    }
  }

  std::vector<InducedTree> result;
  result.reserve(trees[spn.root].size());
  for (Choices& c : trees[spn.root]) {
    std::sort(c.begin(), c.end());
    result.push_back(InducedTree{std::move(c)});
  }
  return result;
}

double evaluate_via_induced_trees(const SpnGraph& spn, const ScopeTable& table,
                                  const InstanceView& instance,
                                  double max_trees) {
  const std::vector<InducedTree> trees = enumerate_induced_trees(spn, max_trees);

  // Leaf log values are shared across trees.
  std::vector<double> leaf_log(spn.nodes.size(), 0.0);
  for (int32_t id = 0; id < spn.num_nodes(); ++id) {
    const SpnNode& n = spn.nodes[id];
    if (n.kind != NodeKind::Leaf) continue;
    double v = 0.0;
    const DimSet& scope = table.region_scope[n.origin];
    for (int d = 0; d < spn.num_dims; ++d) {
      if (!scope.test(d) || instance.missing[d]) continue;
      v += leaf_log_density(spn.columns[d], spn.theta.at(n.leaf_index, d),
                            instance.values[d]);
    }
    leaf_log[id] = v;
  }

  std::vector<double> per_tree;
  per_tree.reserve(trees.size());
  std::vector<int32_t> stack;
  for (const InducedTree& t : trees) {
    double lv = 0.0;
    stack.assign(1, spn.root);
    while (!stack.empty()) {
      const int32_t id = stack.back();
      stack.pop_back();
      const SpnNode& n = spn.nodes[id];
      if (n.kind == NodeKind::Leaf) {
        lv += leaf_log[id];
      } else if (n.kind == NodeKind::Product) {
        for (int32_t c : n.children) stack.push_back(c);
      } else {
        const auto it = std::lower_bound(
            t.choices.begin(), t.choices.end(), std::make_pair(id, int32_t(0)),
            [](const auto& a, const auto& b) { return a.first < b.first; });
        const int32_t k = it->second;
        lv += n.log_weights[k];
        stack.push_back(n.children[k]);
      }
    }
    per_tree.push_back(lv);
  }
  return logsumexp(per_tree);
}

std::vector<DimSet> node_scopes_from_table(const SpnGraph& spn,
                                           const ScopeTable& table) {
  std::vector<DimSet> out(spn.nodes.size());
  for (int32_t id = 0; id < spn.num_nodes(); ++id) {
    const SpnNode& n = spn.nodes[id];
    out[id] = n.kind == NodeKind::Product ? table.partition_scope[n.origin]
                                          : table.region_scope[n.origin];
  }
  return out;
}

std::vector<std::string> validate_spn(const SpnGraph& spn,
                                      const std::vector<DimSet>& node_scopes) {
  std::vector<std::string> out;
  const auto bad = [&](const std::string& m) { out.push_back(m); };
  if (spn.root < 0 || spn.root >= spn.num_nodes()) {
    bad("root node id out of range");
    return out;
  }
  std::vector<int> parents(spn.nodes.size(), 0);
  for (int32_t id = 0; id < spn.num_nodes(); ++id) {
    const SpnNode& n = spn.nodes[id];
    for (int32_t c : n.children) ++parents[c];
    if (n.kind == NodeKind::Leaf) {
      if (!n.children.empty())
        bad("leaf node " + std::to_string(id) + " has children");
      continue;
    }
    if (n.children.empty())
      bad("internal node " + std::to_string(id) + " has no children");
    if (n.kind == NodeKind::Sum) {
      if (n.log_weights.size() != n.children.size())
        bad("sum node " + std::to_string(id) + " weight/child size mismatch");
      double total = 0.0;
      for (double lw : n.log_weights) {
        if (!(lw <= 0.0) && !(lw > 0.0))
          bad("sum node " + std::to_string(id) + " has NaN log-weight");
        total += std::exp(lw);
      }
      if (std::abs(total - 1.0) > 1e-12)
        bad("sum node " + std::to_string(id) + " weights sum to " +
            std::to_string(total));
      for (int32_t c : n.children)
        if (!(node_scopes[c] == node_scopes[id]))
          bad("completeness violation at sum " + std::to_string(id) +
              ": child " + std::to_string(c) + " scope differs");
    } else {
      DimSet u(spn.num_dims);
      for (size_t i = 0; i < n.children.size(); ++i) {
        const DimSet& a = node_scopes[n.children[i]];
        for (size_t j = i + 1; j < n.children.size(); ++j)
          if (a.intersects(node_scopes[n.children[j]]))
            bad("decomposability violation at product " + std::to_string(id));
        u.unite(a);
      }
      if (!(u == node_scopes[id]))
        bad("product " + std::to_string(id) +
            " scope is not the union of child scopes");
    }
  }
  int roots = 0;
  for (int32_t id = 0; id < spn.num_nodes(); ++id)
    if (parents[id] == 0) ++roots;
  if (roots != 1)
    bad("expected exactly one parentless node, found " + std::to_string(roots));
  return out;
}

}  // namespace bayspn
