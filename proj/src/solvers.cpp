#include "pmod/solvers.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace pmod {

std::vector<std::size_t> hop_distances(const Graph& g, NodeId source) {
  g.check_node(source);
  constexpr auto unreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.node_count(), unreached);
  std::queue<NodeId> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    NodeId v = frontier.front();
    frontier.pop();
    for (const auto& inc : g.neighbors(v)) {
      if (dist[inc.neighbor] == unreached) {
        dist[inc.neighbor] = dist[v] + 1;
        frontier.push(inc.neighbor);
      }
    }
  }
  return dist;
}

std::size_t shortest_path_hops(const Graph& g, NodeId a, NodeId b) {
  g.check_node(b);
  return hop_distances(g, a)[b];
}

namespace {

// Unit-capacity max flow on an undirected graph. flow[e] is +1 when edge e
// carries one unit from edge(e).u to edge(e).v, -1 for the reverse.
class UnitFlow {
public:
  UnitFlow(const Graph& g, NodeId a, NodeId b) : g_(g), a_(a), b_(b), flow_(g.edge_count(), 0) {
    g.check_node(a);
    g.check_node(b);
    if (a == b) throw std::invalid_argument("min cut needs distinct endpoints");
    while (augment()) ++value_;
  }

  std::size_t value() const { return value_; }

  std::vector<NodeId> reachable() const {
    std::vector<bool> seen(g_.node_count(), false);
    std::queue<NodeId> frontier;
    seen[a_] = true;
    frontier.push(a_);
    while (!frontier.empty()) {
      NodeId v = frontier.front();
      frontier.pop();
      for (const auto& inc : g_.neighbors(v)) {
        if (!seen[inc.neighbor] && residual(v, inc.edge) > 0) {
          seen[inc.neighbor] = true;
          frontier.push(inc.neighbor);
        }
      }
    }
    std::vector<NodeId> side;
    for (NodeId v = 0; v < g_.node_count(); ++v) {
      if (seen[v]) side.push_back(v);
    }
    return side;
  }

  std::vector<Path> paths() const {
    std::vector<int> flow(flow_);
    std::vector<Path> out;
    for (std::size_t k = 0; k < value_; ++k) {
      std::vector<NodeId> verts{a_};
      std::vector<EdgeId> edges;
      NodeId v = a_;
      while (v != b_) {
        bool moved = false;
        for (const auto& inc : g_.neighbors(v)) {
          if (outflow(flow, v, inc.edge) > 0) {
            flow[inc.edge] = 0;
            v = inc.neighbor;
            // drop a cycle if we came back to a visited node
            auto hit = std::find(verts.begin(), verts.end(), v);
            if (hit != verts.end()) {
              auto keep = static_cast<std::size_t>(hit - verts.begin());
              verts.resize(keep + 1);
              edges.resize(keep);
            } else {
              verts.push_back(v);
              edges.push_back(inc.edge);
            }
            moved = true;
            break;
          }
        }
        if (!moved) throw std::logic_error("flow decomposition stalled");
      }
      out.push_back({std::move(verts), std::move(edges)});
    }
    return out;
  }

private:
  int outflow(const std::vector<int>& flow, NodeId v, EdgeId e) const {
    return g_.edge(e).u == v ? flow[e] : -flow[e];
  }
  int residual(NodeId v, EdgeId e) const { return 1 - outflow(flow_, v, e); }

  bool augment() {
    constexpr auto none = std::numeric_limits<EdgeId>::max();
    std::vector<EdgeId> via(g_.node_count(), none);
    std::vector<bool> seen(g_.node_count(), false);
    std::queue<NodeId> frontier;
    seen[a_] = true;
    frontier.push(a_);
    while (!frontier.empty() && !seen[b_]) {
      NodeId v = frontier.front();
      frontier.pop();
      for (const auto& inc : g_.neighbors(v)) {
        if (!seen[inc.neighbor] && residual(v, inc.edge) > 0) {
          seen[inc.neighbor] = true;
          via[inc.neighbor] = inc.edge;
          frontier.push(inc.neighbor);
        }
      }
    }
    if (!seen[b_]) return false;
    for (NodeId v = b_; v != a_;) {
      EdgeId e = via[v];
      const Edge& edge = g_.edge(e);
      NodeId prev = edge.u == v ? edge.v : edge.u;
      flow_[e] += edge.u == prev ? 1 : -1;
      v = prev;
    }
    return true;
  }

  const Graph& g_;
  NodeId a_;
  NodeId b_;
  std::vector<int> flow_;
  std::size_t value_ = 0;
};

}  // namespace

CutResult min_cut(const Graph& g, NodeId a, NodeId b) {
  UnitFlow flow(g, a, b);
  return {flow.value(), flow.reachable()};
}

std::vector<Path> edge_disjoint_paths(const Graph& g, NodeId a, NodeId b) {
  return UnitFlow(g, a, b).paths();
}

Eigen::MatrixXd laplacian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    auto iu = static_cast<Eigen::Index>(u);
    auto iv = static_cast<Eigen::Index>(v);
    lap(iu, iu) += 1.0;
    lap(iv, iv) += 1.0;
    lap(iu, iv) -= 1.0;
    lap(iv, iu) -= 1.0;
  }
  return lap;
}

ResistanceSolver::ResistanceSolver(const Graph& g) : n_(g.node_count()) {
  const double shift = 1.0 / static_cast<double>(n_);
  Eigen::MatrixXd deflated = laplacian(g).array() + shift;
  factor_.compute(deflated);
  if (factor_.info() != Eigen::Success) throw std::runtime_error("Laplacian factorization failed");
}

Eigen::VectorXd ResistanceSolver::solve(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd x = factor_.solve(rhs);
  x.array() -= x.mean();
  return x;
}

double ResistanceSolver::resistance(NodeId a, NodeId b) const {
  if (a >= n_ || b >= n_) throw std::out_of_range("node index out of range");
  if (a == b) return 0.0;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
  rhs(static_cast<Eigen::Index>(a)) = -1.0;
  rhs(static_cast<Eigen::Index>(b)) = 1.0;
  return rhs.dot(solve(rhs));
}

Eigen::VectorXd ResistanceSolver::voltage(NodeId a, NodeId b) const {
  if (a == b) throw std::invalid_argument("voltage needs distinct endpoints");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
  const auto ia = static_cast<Eigen::Index>(a);
  const auto ib = static_cast<Eigen::Index>(b);
  rhs(ia) = -1.0;
  rhs(ib) = 1.0;
  Eigen::VectorXd x = solve(rhs);
  const double drop = x(ib) - x(ia);
  Eigen::VectorXd phi = (x.array() - x(ia)) / drop;
  phi(ia) = 0.0;
  phi(ib) = 1.0;
  return phi;
}

Eigen::MatrixXd ResistanceSolver::pseudoinverse() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd inv = factor_.solve(Eigen::MatrixXd::Identity(n, n));
  inv.array() -= 1.0 / static_cast<double>(n_);
  return inv;
}

double effective_resistance(const Graph& g, NodeId a, NodeId b) {
  g.check_node(a);
  g.check_node(b);
  if (a == b) return 0.0;
  return ResistanceSolver(g).resistance(a, b);
}

std::vector<Path> enumerate_simple_paths(const Graph& g, NodeId a, NodeId b, std::size_t cap) {
  g.check_node(a);
  g.check_node(b);
  if (a == b) throw std::invalid_argument("path enumeration needs distinct endpoints");

  std::vector<Path> out;
  std::vector<bool> on_path(g.node_count(), false);
  Path current{{a}, {}};
  on_path[a] = true;
  // next neighbor position to try at each depth
  std::vector<std::size_t> cursor{0};

  while (!cursor.empty()) {
    NodeId v = current.vertices.back();
    auto nbrs = g.neighbors(v);
    std::size_t& pos = cursor.back();
    if (v == b || pos >= nbrs.size()) {
      on_path[v] = false;
      current.vertices.pop_back();
      if (!current.edges.empty()) current.edges.pop_back();
      cursor.pop_back();
      continue;
    }
    const Incidence inc = nbrs[pos++];
    if (on_path[inc.neighbor]) continue;
    current.vertices.push_back(inc.neighbor);
    current.edges.push_back(inc.edge);
    on_path[inc.neighbor] = true;
    cursor.push_back(0);
    if (inc.neighbor == b) {
      if (out.size() == cap) {
        throw PathLimitExceeded("more than " + std::to_string(cap) + " simple paths between '" + g.label(a) +
                                "' and '" + g.label(b) + "'");
      }
      out.push_back(current);
    }
  }
  return out;
}

}  // namespace pmod
