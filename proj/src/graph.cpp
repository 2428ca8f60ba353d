#include "pmod/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"

namespace pmod {

namespace {

// Component id per node, numbered in order of smallest member.
std::vector<std::size_t> components(std::size_t n, std::span<const std::size_t> offsets,
                                    std::span<const Incidence> adjacency) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(n, unset);
  std::size_t next = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] != unset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (std::size_t i = offsets[v]; i < offsets[v + 1]; ++i) {
        NodeId w = adjacency[i].neighbor;
        if (comp[w] == unset) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

}  // namespace

Graph::Graph(std::size_t node_count, std::vector<Edge> edges, std::vector<std::string> labels)
    : node_count_(node_count), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (node_count_ == 0) throw GraphError("graph must have at least one node");
  if (labels_.empty()) {
    labels_.reserve(node_count_);
    for (std::size_t i = 0; i < node_count_; ++i) labels_.push_back(std::to_string(i));
  } else if (labels_.size() != node_count_) {
    throw GraphError("label count does not match node count");
  }

  std::set<std::pair<NodeId, NodeId>> seen;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto [u, v] = edges_[e];
    if (u >= node_count_ || v >= node_count_) {
      throw GraphError("edge " + std::to_string(e) + " references a node outside [0, " +
                       std::to_string(node_count_) + ")");
    }
    if (u == v) throw GraphError("self-loop at node '" + labels_[u] + "'");
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
      throw GraphError("duplicate edge {" + labels_[u] + ", " + labels_[v] + "}");
    }
  }

  offsets_.assign(node_count_ + 1, 0);
  for (const auto& [u, v] : edges_) {
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    auto [u, v] = edges_[e];
    adjacency_[fill[u]++] = {v, e};
    adjacency_[fill[v]++] = {u, e};
  }
  for (NodeId v = 0; v < node_count_; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
              [](const Incidence& x, const Incidence& y) { return x.neighbor < y.neighbor; });
  }

  auto comp = components(node_count_, offsets_, adjacency_);
  std::size_t count = *std::max_element(comp.begin(), comp.end()) + 1;
  if (count > 1) {
    NodeId stray = static_cast<NodeId>(std::find(comp.begin(), comp.end(), 1) - comp.begin());
    throw GraphError("graph is disconnected: " + std::to_string(count) + " components; node '" +
                     labels_[stray] + "' is not reachable from '" + labels_[0] + "'");
  }
}

std::span<const Incidence> Graph::neighbors(NodeId v) const {
  check_node(v);
  return std::span<const Incidence>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::optional<EdgeId> Graph::find_edge(NodeId u, NodeId v) const {
  for (const auto& inc : neighbors(u)) {
    if (inc.neighbor == v) return inc.edge;
  }
  return std::nullopt;
}

std::optional<NodeId> Graph::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<NodeId>(it - labels_.begin());
}

NodeId Graph::node(std::string_view label) const {
  if (auto v = find(label)) return *v;
  throw GraphError("unknown node '" + std::string(label) + "'");
}

void Graph::check_node(NodeId v) const {
  if (v >= node_count_) {
    throw std::out_of_range("node index " + std::to_string(v) + " outside [0, " +
                            std::to_string(node_count_) + ")");
  }
}

Density::Density(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t e = 0; e < values_.size(); ++e) {
    if (!(values_[e] >= 0.0) || std::isinf(values_[e])) {
      throw std::invalid_argument("density must be finite and nonnegative; edge " +
                                  std::to_string(e) + " has " + std::to_string(values_[e]));
    }
  }
}

Density Density::constant(std::size_t edge_count, double value) {
  return Density(std::vector<double>(edge_count, value));
}

double Density::max() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

Density Density::scaled(double factor) const {
  std::vector<double> out(values_);
  for (auto& x : out) x *= factor;
  return Density(std::move(out));
}

bool Path::is_simple() const {
  std::vector<NodeId> sorted(vertices);
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

std::vector<int> Path::usage(std::size_t edge_count) const {
  std::vector<int> n(edge_count, 0);
  for (EdgeId e : edges) ++n.at(e);
  return n;
}

double Path::length(const Density& rho) const {
  double total = 0.0;
  for (EdgeId e : edges) total += rho[e];
  return total;
}

bool is_connected(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t groups = n;
  for (const auto& [u, v] : edges) {
    auto ru = root(u);
    auto rv = root(v);
    if (ru != rv) {
      parent[ru] = rv;
      --groups;
    }
  }
  return groups <= 1;
}

Path path_from_vertices(const Graph& g, std::vector<NodeId> vertices) {
  Path path;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    auto e = g.find_edge(vertices[i], vertices[i + 1]);
    if (!e) {
      throw GraphError("no edge between '" + g.label(vertices[i]) + "' and '" +
                       g.label(vertices[i + 1]) + "'");
    }
    path.edges.push_back(*e);
  }
  path.vertices = std::move(vertices);
  return path;
}

bool is_valid_walk(const Graph& g, const Path& path) {
  if (path.vertices.size() != path.edges.size() + 1) return false;
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    if (path.edges[i] >= g.edge_count()) return false;
    const Edge& e = g.edge(path.edges[i]);
    NodeId x = path.vertices[i];
    NodeId y = path.vertices[i + 1];
    if (!((e.u == x && e.v == y) || (e.u == y && e.v == x))) return false;
  }
  return true;
}

bool CutResult::contains(NodeId v) const { return std::binary_search(side.begin(), side.end(), v); }

std::vector<EdgeId> CutResult::boundary(const Graph& g) const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (contains(g.edge(e).u) != contains(g.edge(e).v)) out.push_back(e);
  }
  return out;
}

namespace {

class LabelTable {
public:
  NodeId intern(const std::string& label) {
    auto [it, inserted] = index_.emplace(label, labels_.size());
    if (inserted) labels_.push_back(label);
    return it->second;
  }
  std::optional<NodeId> lookup(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::vector<std::string> release() { return std::move(labels_); }
  std::size_t size() const { return labels_.size(); }

private:
  std::map<std::string, NodeId> index_;
  std::vector<std::string> labels_;
};

std::string json_label(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  throw GraphError("JSON node labels must be strings or integers, got " + value.dump());
}

Graph parse_json_graph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw GraphError(std::string("invalid JSON graph: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array()) {
    throw GraphError("JSON graph must be an object with an \"edges\" array");
  }
  LabelTable table;
  if (doc.contains("nodes")) {
    if (!doc["nodes"].is_array()) throw GraphError("JSON \"nodes\" must be an array");
    for (const auto& node : doc["nodes"]) {
      std::string label = json_label(node);
      if (table.lookup(label)) throw GraphError("duplicate node '" + label + "' in JSON \"nodes\"");
      table.intern(label);
    }
  }
  std::vector<Edge> edges;
  std::set<std::pair<NodeId, NodeId>> seen;
  std::size_t index = 0;
  for (const auto& item : doc["edges"]) {
    if (!item.is_array() || item.size() != 2) {
      throw GraphError("JSON edge " + std::to_string(index) + " must be a pair [u, v]");
    }
    std::string lu = json_label(item[0]);
    std::string lv = json_label(item[1]);
    if (lu == lv) throw GraphError("self-loop at node '" + lu + "' (JSON edge " + std::to_string(index) + ")");
    NodeId u = table.intern(lu);
    NodeId v = table.intern(lv);
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
      throw GraphError("duplicate edge {" + lu + ", " + lv + "} (JSON edge " + std::to_string(index) + ")");
    }
    edges.push_back({u, v});
    ++index;
  }
  std::size_t n = table.size();
  return Graph(n, std::move(edges), table.release());
}

}  // namespace

Graph parse_graph(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json_graph(text);

  LabelTable table;
  std::vector<Edge> edges;
  std::map<std::pair<NodeId, NodeId>, std::size_t> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      throw GraphError("line " + std::to_string(line_no) + ": expected \"u v\", got " +
                           std::to_string(tokens.size()) + " fields",
                       line_no);
    }
    if (tokens[0] == tokens[1]) {
      throw GraphError("line " + std::to_string(line_no) + ": self-loop at node '" + tokens[0] + "'", line_no);
    }
    NodeId u = table.intern(tokens[0]);
    NodeId v = table.intern(tokens[1]);
    auto [it, inserted] = seen.emplace(std::pair{std::min(u, v), std::max(u, v)}, line_no);
    if (!inserted) {
      throw GraphError("line " + std::to_string(line_no) + ": duplicate edge {" + tokens[0] + ", " +
                           tokens[1] + "} (first seen on line " + std::to_string(it->second) + ")",
                       line_no);
    }
    edges.push_back({u, v});
  }
  if (table.size() == 0) throw GraphError("graph text contains no edges");
  std::size_t n = table.size();
  return Graph(n, std::move(edges), table.release());
}

}  // namespace pmod
