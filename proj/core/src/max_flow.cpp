#include "edvwcut/max_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "edvwcut/reduction.hpp"

namespace edvw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Residual representation: arc i of the input becomes entries 2i (forward)
// and 2i+1 (reverse). Infinite arcs keep an unbounded residual forever; flow
// pushed along them only accumulates on the reverse entry.
class PushRelabel {
 public:
  PushRelabel(const FlowNetwork& g, int s, int t)
      : g_(g), n_(static_cast<int>(g.num_nodes())), s_(s), t_(t) {
    build();
  }

  // Closure of s under infinite arcs. Every s-t cut crosses an infinite arc
  // iff t lies inside it.
  std::vector<char> infinite_closure() const {
    std::vector<char> seen(n_, 0);
    std::queue<int> q;
    seen[s_] = 1;
    q.push(s_);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e = start_[u]; e < start_[u + 1]; ++e)
        if (is_inf_[e] && !seen[to_[e]]) {
          seen[to_[e]] = 1;
          q.push(to_[e]);
        }
    }
    return seen;
  }

  double solve() {
    global_relabel();
    // initial saturation of every arc out of s; infinite arcs get the
    // injection bound, which exceeds any finite max-flow value
    for (int e = start_[s_]; e < start_[s_ + 1]; ++e) {
      // reverse entries at s start with zero residual and are skipped
      double delta = is_inf_[e] ? bound_ : res_[e];
      if (delta <= 0.0) continue;
      push(s_, e, delta);
    }
    while (highest_ >= 0) {
      while (highest_ >= 0 && buckets_[highest_].empty()) --highest_;
      if (highest_ < 0) break;
      int v = buckets_[highest_].back();
      buckets_[highest_].pop_back();
      if (v == s_ || v == t_ || excess_[v] <= 0.0 || height_[v] != highest_)
        continue;
      discharge(v);
      if (relabels_since_update_ >= n_) {
        global_relabel();
        relabels_since_update_ = 0;
      }
    }
    return excess_[t_];
  }

  // Nodes reachable from s in the final residual graph.
  std::vector<NodeIndex> residual_source_side() const {
    std::vector<char> seen(n_, 0);
    std::queue<int> q;
    seen[s_] = 1;
    q.push(s_);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e = start_[u]; e < start_[u + 1]; ++e) {
        int w = to_[e];
        if (!seen[w] && residual(e) > 0.0) {
          seen[w] = 1;
          q.push(w);
        }
      }
    }
    std::vector<NodeIndex> side;
    for (int v = 0; v < n_; ++v)
      if (seen[v]) side.push_back(v);
    return side;
  }

 private:
  void build() {
    int m = static_cast<int>(g_.arcs.size());
    to_.resize(2 * m);
    res_.resize(2 * m);
    is_inf_.assign(2 * m, 0);
    pair_pos_.resize(2 * m);
    std::vector<int> deg(n_ + 1, 0);
    for (const auto& a : g_.arcs) {
      ++deg[a.tail];
      ++deg[a.head];
    }
    start_.assign(n_ + 2, 0);
    for (int v = 0; v < n_; ++v) start_[v + 1] = start_[v] + deg[v];
    std::vector<int> cursor(start_.begin(), start_.end() - 1);
    bound_ = 1.0;
    for (int i = 0; i < m; ++i) {
      const Arc& a = g_.arcs[i];
      int fwd = cursor[a.tail]++;
      int bwd = cursor[a.head]++;
      to_[fwd] = a.head;
      to_[bwd] = a.tail;
      res_[fwd] = a.infinite ? 0.0 : a.capacity;
      res_[bwd] = 0.0;
      is_inf_[fwd] = a.infinite;
      pair_pos_[fwd] = bwd;
      pair_pos_[bwd] = fwd;
      if (!a.infinite) bound_ += a.capacity;
    }
    excess_.assign(n_, 0.0);
    height_.assign(n_, 0);
    current_.assign(n_, 0);
    height_count_.assign(2 * n_ + 2, 0);
    buckets_.assign(2 * n_ + 2, {});
    highest_ = -1;
  }

  double residual(int e) const { return is_inf_[e] ? kInf : res_[e]; }

  void push(int u, int e, double delta) {
    if (!is_inf_[e]) res_[e] -= delta;
    res_[pair_pos_[e]] += delta;
    int w = to_[e];
    excess_[u] -= delta;
    bool was_idle = excess_[w] <= 0.0;
    excess_[w] += delta;
    if (was_idle && w != s_ && w != t_ && excess_[w] > 0.0) activate(w);
  }

  void activate(int v) {
    buckets_[height_[v]].push_back(v);
    highest_ = std::max(highest_, height_[v]);
  }

  void set_height(int v, int h) {
    --height_count_[height_[v]];
    height_[v] = h;
    ++height_count_[h];
  }

  void discharge(int v) {
    while (excess_[v] > 0.0) {
      if (current_[v] >= start_[v + 1]) {
        if (!relabel(v)) return;  // excess parked; gap or ceiling handled it
        continue;
      }
      int e = current_[v];
      if (residual(e) > 0.0 && height_[v] == height_[to_[e]] + 1) {
        push(v, e, std::min(excess_[v], residual(e)));
      } else {
        ++current_[v];
      }
    }
  }

  bool relabel(int v) {
    int old_h = height_[v];
    int min_h = 2 * n_ + 1;
    for (int e = start_[v]; e < start_[v + 1]; ++e)
      if (residual(e) > 0.0) min_h = std::min(min_h, height_[to_[e]] + 1);
    ++relabels_since_update_;
    if (min_h > 2 * n_) {
      set_height(v, 2 * n_ + 1);  // isolated excess; cannot occur with valid preflows
      return false;
    }
    set_height(v, min_h);
    current_[v] = start_[v];
    if (old_h < n_ && height_count_[old_h] == 0) gap(old_h);
    if (height_[v] <= 2 * n_) activate(v);
    return true;
  }

  void gap(int h) {
    // nodes stranded above an empty level below n can never reach t again
    for (int v = 0; v < n_; ++v)
      if (v != s_ && height_[v] > h && height_[v] < n_) {
        set_height(v, n_ + 1);
        if (excess_[v] > 0.0) activate(v);
      }
  }

  void global_relabel() {
    std::vector<int> dist_t(n_, -1), dist_s(n_, -1);
    reverse_bfs(t_, dist_t);
    reverse_bfs(s_, dist_s);
    for (auto& b : buckets_) b.clear();
    highest_ = -1;
    height_count_.assign(2 * n_ + 2, 0);
    for (int v = 0; v < n_; ++v) {
      int h;
      if (v == s_)
        h = n_;
      else if (dist_t[v] >= 0)
        h = dist_t[v];
      else if (dist_s[v] >= 0)
        h = n_ + dist_s[v];
      else
        h = 2 * n_ + 1;
      height_[v] = h;
      ++height_count_[h];
      current_[v] = start_[v];
      if (v != s_ && v != t_ && excess_[v] > 0.0 && h <= 2 * n_) activate(v);
    }
  }

  // BFS over reversed residual arcs: dist[v] = residual distance v -> root.
  void reverse_bfs(int root, std::vector<int>& dist) const {
    dist[root] = 0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e = start_[v]; e < start_[v + 1]; ++e) {
        int u = to_[e];
        // u -> v residual arc is the pair entry of e
        if (dist[u] < 0 && residual(pair_pos_[e]) > 0.0) {
          dist[u] = dist[v] + 1;
          q.push(u);
        }
      }
    }
  }

  const FlowNetwork& g_;
  int n_, s_, t_;
  double bound_ = 1.0;
  std::vector<int> to_, pair_pos_, start_, current_, height_, height_count_;
  std::vector<double> res_, excess_;
  std::vector<char> is_inf_;
  std::vector<std::vector<int>> buckets_;
  int highest_ = -1;
  int relabels_since_update_ = 0;
};

double cut_value_of(const FlowNetwork& g, const std::vector<char>& in_S,
                    bool* crosses_infinite = nullptr) {
  double value = 0.0;
  bool infinite = false;
  for (const auto& a : g.arcs)
    if (in_S[a.tail] && !in_S[a.head]) {
      if (a.infinite)
        infinite = true;
      else
        value += a.capacity;
    }
  if (crosses_infinite) *crosses_infinite = infinite;
  return infinite ? kInf : value;
}

void check_terminals(const FlowNetwork& g, NodeIndex s, NodeIndex t) {
  if (s < 0 || t < 0 || static_cast<std::size_t>(s) >= g.num_nodes() ||
      static_cast<std::size_t>(t) >= g.num_nodes())
    throw DomainError("terminal index out of range");
  if (s == t) throw SameTerminal("source and sink must differ");
}

}  // namespace

CutResult max_flow_min_cut(const FlowNetwork& g, NodeIndex s, NodeIndex t) {
  check_terminals(g, s, t);
  PushRelabel solver(g, s, t);
  CutResult r;
  auto closure = solver.infinite_closure();
  if (closure[t]) {
    for (std::size_t v = 0; v < closure.size(); ++v)
      if (closure[v]) r.source_side.push_back(static_cast<NodeIndex>(v));
    r.value = kInf;
    r.flow_value = kInf;
    r.infinite = true;
    return r;
  }
  r.flow_value = solver.solve();
  r.source_side = solver.residual_source_side();
  std::vector<char> in_S(g.num_nodes(), 0);
  for (NodeIndex v : r.source_side) in_S[v] = 1;
  bool crosses_infinite = false;
  r.value = cut_value_of(g, in_S, &crosses_infinite);
  if (crosses_infinite)
    throw DomainError("internal error: residual cut crossed an infinite arc");
  return r;
}

CutResult brute_force_min_cut(const FlowNetwork& g, NodeIndex s, NodeIndex t) {
  check_terminals(g, s, t);
  std::size_t n = g.num_nodes();
  if (n > 22) throw GraphTooLarge("brute force limited to 22 nodes");
  std::vector<NodeIndex> free_nodes;
  for (std::size_t v = 0; v < n; ++v)
    if (static_cast<NodeIndex>(v) != s && static_cast<NodeIndex>(v) != t)
      free_nodes.push_back(static_cast<NodeIndex>(v));
  std::size_t k = free_nodes.size();
  CutResult best;
  best.value = kInf;
  best.infinite = true;
  std::vector<char> in_S(n, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::fill(in_S.begin(), in_S.end(), 0);
    in_S[s] = 1;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) in_S[free_nodes[i]] = 1;
    double value = cut_value_of(g, in_S);
    if (value < best.value) {
      best.value = value;
      best.infinite = false;
      best.source_side.clear();
      for (std::size_t v = 0; v < n; ++v)
        if (in_S[v]) best.source_side.push_back(static_cast<NodeIndex>(v));
    }
  }
  if (std::isinf(best.value)) {
    best.infinite = true;
    best.source_side = {s};
  }
  best.flow_value = best.value;
  return best;
}

TerminalAttachment attach_terminals(const FlowNetwork& g,
                                    const std::vector<NodeIndex>& sources,
                                    const std::vector<NodeIndex>& sinks) {
  if (sources.empty() || sinks.empty())
    throw EmptySeeds("both seed sets must be nonempty");
  std::vector<char> is_source(g.num_nodes(), 0);
  for (NodeIndex v : sources) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.num_nodes())
      throw DomainError("seed node index " + std::to_string(v) + " out of range");
    is_source[v] = 1;
  }
  for (NodeIndex v : sinks) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.num_nodes())
      throw DomainError("seed node index " + std::to_string(v) + " out of range");
    if (is_source[v])
      throw OverlappingSeeds("node " + std::to_string(v) + " appears in both seed sets");
  }
  TerminalAttachment out;
  out.graph = g;
  NodeTag src_tag;
  src_tag.kind = NodeKind::TerminalSource;
  NodeTag sink_tag;
  sink_tag.kind = NodeKind::TerminalSink;
  out.source = out.graph.add_node(src_tag);
  out.sink = out.graph.add_node(sink_tag);
  for (NodeIndex v : sources) out.graph.add_infinite_arc(out.source, v);
  for (NodeIndex v : sinks) out.graph.add_infinite_arc(v, out.sink);
  return out;
}

ProjectedCut hypergraph_min_st_cut(const Hypergraph& h,
                                   const SplittingSpec& spec,
                                   const std::vector<VertexId>& sources,
                                   const std::vector<VertexId>& sinks,
                                   ReduceMode mode, double epsilon,
                                   const ReduceCaps& caps) {
  for (VertexId v : sources)
    if (v < 0 || static_cast<std::size_t>(v) >= h.num_vertices())
      throw UnknownVertex("seed vertex id " + std::to_string(v) + " out of range");
  for (VertexId v : sinks)
    if (v < 0 || static_cast<std::size_t>(v) >= h.num_vertices())
      throw UnknownVertex("seed vertex id " + std::to_string(v) + " out of range");
  Reduction red = reduce_hypergraph(h, spec, mode, epsilon, caps);
  // reduce_hypergraph places Original node i at index i
  auto attached = attach_terminals(red.graph, sources, sinks);
  CutResult cut = max_flow_min_cut(attached.graph, attached.source, attached.sink);
  if (cut.infinite)
    throw InfeasibleSeeds("no finite cut separates the seed sets");
  ProjectedCut out;
  out.value = cut.value;
  for (NodeIndex node : cut.source_side)
    if (static_cast<std::size_t>(node) < attached.graph.num_nodes() &&
        attached.graph.nodes[node].kind == NodeKind::Original)
      out.S.push_back(attached.graph.nodes[node].vertex);
  std::sort(out.S.begin(), out.S.end());
  return out;
}

}  // namespace edvw
