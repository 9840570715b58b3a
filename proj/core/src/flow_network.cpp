#include "edvwcut/flow_network.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace edvw {

namespace {

void check_node(const FlowNetwork& g, NodeIndex v, const char* what) {
  if (v < 0 || static_cast<std::size_t>(v) >= g.nodes.size())
    throw DomainError(std::string(what) + " node index " + std::to_string(v) +
                      " out of range");
}

}  // namespace

NodeIndex FlowNetwork::add_node(NodeTag tag) {
  nodes.push_back(std::move(tag));
  return static_cast<NodeIndex>(nodes.size() - 1);
}

void FlowNetwork::add_arc(NodeIndex tail, NodeIndex head, double capacity) {
  check_node(*this, tail, "tail");
  check_node(*this, head, "head");
  if (tail == head) throw DomainError("self-loop arc at node " + std::to_string(tail));
  if (!(capacity >= 0.0) || !std::isfinite(capacity))
    throw NonPositiveWeight("arc capacity must be a finite non-negative real");
  arcs.push_back({tail, head, capacity, false});
}

void FlowNetwork::add_infinite_arc(NodeIndex tail, NodeIndex head) {
  check_node(*this, tail, "tail");
  check_node(*this, head, "head");
  if (tail == head) throw DomainError("self-loop arc at node " + std::to_string(tail));
  arcs.push_back({tail, head, 0.0, true});
}

void FlowNetwork::add_undirected(NodeIndex u, NodeIndex v, double capacity) {
  add_arc(u, v, capacity);
  add_arc(v, u, capacity);
}

FlowNetwork with_integer_capacities(const FlowNetwork& g, int k) {
  if (k < 0 || k > 9) throw DomainError("scaling exponent must lie in [0, 9]");
  double factor = std::pow(10.0, k);
  FlowNetwork out = g;
  for (auto& a : out.arcs)
    if (!a.infinite) a.capacity = std::round(a.capacity * factor);
  return out;
}

namespace {

std::string tag_text(const NodeTag& t) {
  switch (t.kind) {
    case NodeKind::Original:
      return "orig:" + std::to_string(t.vertex);
    case NodeKind::Auxiliary:
      return "aux:" + t.edge_id + ":" + std::to_string(t.aux_index);
    case NodeKind::TerminalSource:
      return "terminal:source";
    case NodeKind::TerminalSink:
      return "terminal:sink";
  }
  return "?";
}

NodeTag parse_tag(const std::string& text, int line_no) {
  NodeTag t;
  if (text == "terminal:source") {
    t.kind = NodeKind::TerminalSource;
    return t;
  }
  if (text == "terminal:sink") {
    t.kind = NodeKind::TerminalSink;
    return t;
  }
  if (text.rfind("orig:", 0) == 0) {
    t.kind = NodeKind::Original;
    try {
      t.vertex = std::stoi(text.substr(5));
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": bad vertex id in '" + text + "'");
    }
    return t;
  }
  if (text.rfind("aux:", 0) == 0) {
    auto last = text.rfind(':');
    if (last <= 4)
      throw ParseError("line " + std::to_string(line_no) + ": bad auxiliary tag '" + text + "'");
    t.kind = NodeKind::Auxiliary;
    t.edge_id = text.substr(4, last - 4);
    try {
      t.aux_index = std::stoi(text.substr(last + 1));
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": bad auxiliary index in '" + text + "'");
    }
    return t;
  }
  throw ParseError("line " + std::to_string(line_no) + ": unknown provenance '" + text + "'");
}

}  // namespace

void write_flow_network(std::ostream& out, const FlowNetwork& g) {
  out << std::setprecision(12);
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    out << "n " << i << " " << tag_text(g.nodes[i]) << "\n";
  for (const auto& a : g.arcs) {
    out << "a " << a.tail << " " << a.head << " ";
    if (a.infinite)
      out << "inf";
    else
      out << a.capacity;
    out << "\n";
  }
}

FlowNetwork parse_flow_network(std::istream& in) {
  FlowNetwork g;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind)) continue;
    if (kind == "n") {
      long index = -1;
      std::string tag;
      if (!(ss >> index >> tag))
        throw ParseError("line " + std::to_string(line_no) + ": node record needs index and provenance");
      if (index != static_cast<long>(g.nodes.size()))
        throw ParseError("line " + std::to_string(line_no) + ": node index " +
                         std::to_string(index) + " out of order");
      g.nodes.push_back(parse_tag(tag, line_no));
    } else if (kind == "a") {
      long tail = -1, head = -1;
      std::string cap;
      if (!(ss >> tail >> head >> cap))
        throw ParseError("line " + std::to_string(line_no) + ": arc record needs tail, head, capacity");
      if (tail < 0 || head < 0 || tail >= static_cast<long>(g.nodes.size()) ||
          head >= static_cast<long>(g.nodes.size()))
        throw ParseError("line " + std::to_string(line_no) + ": arc endpoint out of range");
      try {
        if (cap == "inf")
          g.add_infinite_arc(static_cast<NodeIndex>(tail), static_cast<NodeIndex>(head));
        else
          g.add_arc(static_cast<NodeIndex>(tail), static_cast<NodeIndex>(head), std::stod(cap));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& err) {
        throw ParseError("line " + std::to_string(line_no) + ": " + err.what());
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad capacity '" + cap + "'");
      }
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown record '" + kind + "'");
    }
  }
  return g;
}

FlowNetwork parse_flow_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_flow_network(in);
}

}  // namespace edvw
