#pragma once

#include <vector>

#include "edvwcut/flow_network.hpp"
#include "edvwcut/hypergraph.hpp"
#include "edvwcut/splitting.hpp"

namespace edvw {

struct CutResult {
  std::vector<NodeIndex> source_side;  // sorted, contains s
  double value = 0.0;                  // sum of crossing capacities
  double flow_value = 0.0;             // equals value when finite
  bool infinite = false;               // no finite s-t cut exists
};

// Highest-label push-relabel with gap heuristic and periodic global
// relabeling. Infinite arcs are handled natively in the residual logic and
// are never cut arcs when a finite cut exists. The reported source side is
// the set of nodes reachable from s in the final residual graph (the
// canonical minimal min-cut), so results are deterministic.
CutResult max_flow_min_cut(const FlowNetwork& g, NodeIndex s, NodeIndex t);

// Exhaustive minimum over all 2^(n-2) bipartitions; n <= 22.
CutResult brute_force_min_cut(const FlowNetwork& g, NodeIndex s, NodeIndex t);

struct TerminalAttachment {
  FlowNetwork graph;
  NodeIndex source = -1;
  NodeIndex sink = -1;
};

// Adds a super-source and super-sink with infinite arcs to the seed nodes.
TerminalAttachment attach_terminals(const FlowNetwork& g,
                                    const std::vector<NodeIndex>& sources,
                                    const std::vector<NodeIndex>& sinks);

struct ProjectedCut {
  std::vector<VertexId> S;  // hypergraph vertices on the source side
  double value = 0.0;
};

enum class ReduceMode { Exact, Sparsified };

struct ReduceCaps {
  int q_enum_max_size = 20;        // 2^|e| subset-sum enumeration cap
  int expansion_max_terms = 4096;  // |Q_a| cap before expansion
  int sparse_discrete_max = 12;    // discrete sparsifier edge-size cap
  int threads = 1;
};

// Reduce, attach terminals for the seed sets, solve, project the source side
// back to hypergraph vertices. Throws InfeasibleSeeds when no finite cut
// separates the seeds.
ProjectedCut hypergraph_min_st_cut(const Hypergraph& h,
                                   const SplittingSpec& spec,
                                   const std::vector<VertexId>& sources,
                                   const std::vector<VertexId>& sinks,
                                   ReduceMode mode, double epsilon = 0.1,
                                   const ReduceCaps& caps = {});

}  // namespace edvw
