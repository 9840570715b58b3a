#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "edvwcut/errors.hpp"

namespace edvw {

using VertexId = std::int32_t;

// A hyperedge with edge-dependent vertex weights. gamma(v) > 0 for every
// member; gamma_total caches the full-edge sum accumulated in member order.
struct Hyperedge {
  std::string id;
  double kappa = 1.0;
  std::vector<VertexId> members;       // ascending vertex id
  std::vector<double> gamma;           // parallel to members
  double gamma_total = 0.0;

  std::size_t size() const { return members.size(); }
  // index of v within members, or -1
  int member_index(VertexId v) const;
  double gamma_of(VertexId v) const;
};

struct Hypergraph {
  std::vector<std::string> vertex_names;
  std::unordered_map<std::string, VertexId> vertex_ids;
  std::vector<Hyperedge> edges;

  std::size_t num_vertices() const { return vertex_names.size(); }
  std::size_t num_edges() const { return edges.size(); }
  VertexId vertex_id(const std::string& name) const;
};

struct EdgeInput {
  std::string id;
  double kappa = 1.0;
  std::vector<std::pair<std::string, double>> weights;  // member name -> gamma
};

// Validates names, positivity and duplicates; interns vertices to dense ids.
Hypergraph build_hypergraph(const std::vector<std::string>& vertex_names,
                            const std::vector<EdgeInput>& edges);

// Sum of gamma over S, accumulated in stored member order so repeated calls
// are bit-identical. S must be a subset of members(e).
double gamma_sum(const Hyperedge& e, const std::vector<VertexId>& S);

// Member-order accumulation over a bitmask of member positions.
double gamma_sum_mask(const Hyperedge& e, std::uint32_t member_mask);

// Text format: `v <name>` and `e <id> <kappa> <name>:<gamma> ...` records,
// `#` starts a comment. Duplicate declarations are errors.
Hypergraph parse_hypergraph(std::istream& in);
Hypergraph parse_hypergraph_file(const std::string& path);
void write_hypergraph(std::ostream& out, const Hypergraph& h);

}  // namespace edvw
