#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pmod {

using NodeId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  NodeId u;
  NodeId v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  NodeId neighbor;
  EdgeId edge;
};

/// Rejection of a graph or of graph input. `line()` is set when the problem
/// can be traced to a line of edge-list text.
class GraphError : public std::runtime_error {
public:
  explicit GraphError(const std::string& what, std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(what), line_(line) {}
  std::optional<std::size_t> line() const noexcept { return line_; }

private:
  std::optional<std::size_t> line_;
};

/// Simple, undirected, connected graph. Immutable after construction.
/// Adjacency lists are sorted by neighbor index.
class Graph {
public:
  /// Validates: indices in range, no self-loops, no duplicate edges, connected.
  /// Labels default to the decimal node index.
  Graph(std::size_t node_count, std::vector<Edge> edges, std::vector<std::string> labels = {});

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Incidence> neighbors(NodeId v) const;
  std::size_t degree(NodeId v) const { return neighbors(v).size(); }

  /// Edge joining u and v, if any.
  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;

  const std::string& label(NodeId v) const { return labels_.at(v); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;
  /// Throws GraphError if the label is unknown.
  NodeId node(std::string_view label) const;

  /// Throws std::out_of_range for an invalid index.
  void check_node(NodeId v) const;

private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> adjacency_;
};

/// Nonnegative edge costs, indexed by EdgeId.
class Density {
public:
  Density() = default;
  explicit Density(std::vector<double> values);
  static Density constant(std::size_t edge_count, double value);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](EdgeId e) const { return values_[e]; }
  std::span<const double> values() const noexcept { return values_; }
  double max() const;

  Density scaled(double factor) const;

private:
  std::vector<double> values_;
};

/// Walk given as alternating vertices and edges; vertices.size() == edges.size() + 1.
struct Path {
  std::vector<NodeId> vertices;
  std::vector<EdgeId> edges;

  std::size_t hops() const noexcept { return edges.size(); }
  NodeId source() const { return vertices.front(); }
  NodeId target() const { return vertices.back(); }
  bool is_simple() const;
  /// Traversal counts N(gamma, .) over all edges of a graph with `edge_count` edges.
  std::vector<int> usage(std::size_t edge_count) const;
  double length(const Density& rho) const;

  friend bool operator==(const Path&, const Path&) = default;
};

/// Connectivity of an edge list over nodes [0, n), without building a Graph.
bool is_connected(std::size_t n, std::span<const Edge> edges);

/// Builds a path from its vertex sequence; throws GraphError if two
/// consecutive vertices are not adjacent.
Path path_from_vertices(const Graph& g, std::vector<NodeId> vertices);

/// Checks that consecutive vertices are joined by the listed edges.
bool is_valid_walk(const Graph& g, const Path& path);

struct CutResult {
  std::size_t value = 0;
  /// Sorted node set S with a in S, b not in S.
  std::vector<NodeId> side;

  bool contains(NodeId v) const;
  /// Edges with exactly one endpoint in `side`.
  std::vector<EdgeId> boundary(const Graph& g) const;
};

/// Edge-list text: one "u v" pair per line, '#' starts a comment. Input
/// starting with '{' is read as JSON {"nodes": [...], "edges": [[u, v], ...]}.
/// Labels are assigned dense indices in order of first appearance.
Graph parse_graph(std::string_view text);

}  // namespace pmod
