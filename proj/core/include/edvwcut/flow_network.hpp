#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "edvwcut/errors.hpp"

namespace edvw {

using NodeIndex = std::int32_t;

enum class NodeKind { Original, Auxiliary, TerminalSource, TerminalSink };

struct NodeTag {
  NodeKind kind = NodeKind::Original;
  std::int32_t vertex = -1;   // Original: hypergraph vertex id
  std::string edge_id;        // Auxiliary: owning hyperedge
  std::int32_t aux_index = 0; // Auxiliary: position within the edge's gadgets
};

// Directed arc; infinite capacity is an explicit flag, never a large number.
struct Arc {
  NodeIndex tail = 0;
  NodeIndex head = 0;
  double capacity = 0.0;
  bool infinite = false;
};

struct FlowNetwork {
  std::vector<NodeTag> nodes;
  std::vector<Arc> arcs;

  NodeIndex add_node(NodeTag tag);
  void add_arc(NodeIndex tail, NodeIndex head, double capacity);
  void add_infinite_arc(NodeIndex tail, NodeIndex head);
  // Undirected edge stored as two opposing arcs of equal capacity.
  void add_undirected(NodeIndex u, NodeIndex v, double capacity);

  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t num_arcs() const { return arcs.size(); }
};

// Copy with every finite capacity multiplied by 10^k and rounded to an
// integer value (still stored as double). k <= 9. Intended for exact
// comparisons on small instances.
FlowNetwork with_integer_capacities(const FlowNetwork& g, int k);

// Text format: `n <index> <provenance>` lines, then `a <tail> <head>
// <capacity|inf>` lines. `#` starts a comment.
void write_flow_network(std::ostream& out, const FlowNetwork& g);
FlowNetwork parse_flow_network(std::istream& in);
FlowNetwork parse_flow_network_file(const std::string& path);

}  // namespace edvw
