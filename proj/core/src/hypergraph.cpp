#include "edvwcut/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace edvw {

int Hyperedge::member_index(VertexId v) const {
  auto it = std::lower_bound(members.begin(), members.end(), v);
  if (it == members.end() || *it != v) return -1;
  return static_cast<int>(it - members.begin());
}

double Hyperedge::gamma_of(VertexId v) const {
  int i = member_index(v);
  if (i < 0) throw VertexNotInEdge("vertex id " + std::to_string(v) + " is not a member of edge " + id);
  return gamma[i];
}

VertexId Hypergraph::vertex_id(const std::string& name) const {
  auto it = vertex_ids.find(name);
  if (it == vertex_ids.end()) throw UnknownVertex("unknown vertex '" + name + "'");
  return it->second;
}

Hypergraph build_hypergraph(const std::vector<std::string>& vertex_names,
                            const std::vector<EdgeInput>& edges) {
  Hypergraph h;
  h.vertex_names.reserve(vertex_names.size());
  for (const auto& name : vertex_names) {
    if (h.vertex_ids.count(name))
      throw DuplicateMember("duplicate vertex '" + name + "'");
    h.vertex_ids.emplace(name, static_cast<VertexId>(h.vertex_names.size()));
    h.vertex_names.push_back(name);
  }
  std::unordered_map<std::string, bool> edge_ids;
  h.edges.reserve(edges.size());
  for (const auto& in : edges) {
    if (edge_ids.count(in.id))
      throw DuplicateMember("duplicate edge '" + in.id + "'");
    edge_ids.emplace(in.id, true);
    if (!(in.kappa > 0.0))
      throw NonPositiveWeight("edge " + in.id + ": kappa must be positive");
    Hyperedge e;
    e.id = in.id;
    e.kappa = in.kappa;
    std::vector<std::pair<VertexId, double>> mem;
    mem.reserve(in.weights.size());
    for (const auto& [name, gamma] : in.weights) {
      auto it = h.vertex_ids.find(name);
      if (it == h.vertex_ids.end())
        throw UnknownVertex("edge " + in.id + ": unknown vertex '" + name + "'");
      if (!(gamma > 0.0))
        throw NonPositiveWeight("edge " + in.id + ": gamma(" + name + ") must be positive");
      mem.emplace_back(it->second, gamma);
    }
    std::sort(mem.begin(), mem.end());
    for (std::size_t i = 1; i < mem.size(); ++i)
      if (mem[i].first == mem[i - 1].first)
        throw DuplicateMember("edge " + in.id + ": duplicate member '" +
                              h.vertex_names[mem[i].first] + "'");
    for (const auto& [v, g] : mem) {
      e.members.push_back(v);
      e.gamma.push_back(g);
      e.gamma_total += g;
    }
    h.edges.push_back(std::move(e));
  }
  return h;
}

double gamma_sum(const Hyperedge& e, const std::vector<VertexId>& S) {
  // validate first so accumulation order is exactly member order
  for (VertexId v : S)
    if (e.member_index(v) < 0)
      throw VertexNotInEdge("vertex id " + std::to_string(v) + " is not a member of edge " + e.id);
  std::uint64_t mask = 0;
  for (VertexId v : S) mask |= std::uint64_t{1} << e.member_index(v);
  double sum = 0.0;
  for (std::size_t i = 0; i < e.members.size(); ++i)
    if (mask >> i & 1) sum += e.gamma[i];
  return sum;
}

double gamma_sum_mask(const Hyperedge& e, std::uint32_t member_mask) {
  double sum = 0.0;
  for (std::size_t i = 0; i < e.members.size() && (member_mask >> i) != 0; ++i)
    if (member_mask >> i & 1) sum += e.gamma[i];
  return sum;
}

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

double parse_real(const std::string& tok, int line_no, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + tok + "'");
  }
}

}  // namespace

Hypergraph parse_hypergraph(std::istream& in) {
  std::vector<std::string> names;
  std::vector<EdgeInput> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(strip_comment(line));
    std::string kind;
    if (!(ss >> kind)) continue;
    if (kind == "v") {
      std::string name;
      if (!(ss >> name))
        throw ParseError("line " + std::to_string(line_no) + ": vertex record needs a name");
      std::string extra;
      if (ss >> extra)
        throw ParseError("line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
      names.push_back(name);
    } else if (kind == "e") {
      EdgeInput e;
      std::string kappa_tok;
      if (!(ss >> e.id >> kappa_tok))
        throw ParseError("line " + std::to_string(line_no) + ": edge record needs an id and kappa");
      e.kappa = parse_real(kappa_tok, line_no, "kappa");
      std::string pair;
      while (ss >> pair) {
        auto colon = pair.rfind(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == pair.size())
          throw ParseError("line " + std::to_string(line_no) + ": expected <name>:<gamma>, got '" + pair + "'");
        e.weights.emplace_back(pair.substr(0, colon),
                               parse_real(pair.substr(colon + 1), line_no, "gamma"));
      }
      if (e.weights.empty())
        throw ParseError("line " + std::to_string(line_no) + ": edge " + e.id + " has no members");
      edges.push_back(std::move(e));
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown record '" + kind + "'");
    }
  }
  try {
    return build_hypergraph(names, edges);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& err) {
    throw ParseError(err.what());
  }
}

Hypergraph parse_hypergraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_hypergraph(in);
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << std::setprecision(12);
  for (const auto& name : h.vertex_names) out << "v " << name << "\n";
  for (const auto& e : h.edges) {
    out << "e " << e.id << " " << e.kappa;
    for (std::size_t i = 0; i < e.members.size(); ++i)
      out << " " << h.vertex_names[e.members[i]] << ":" << e.gamma[i];
    out << "\n";
  }
}

}  // namespace edvw
