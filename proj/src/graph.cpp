#include "qst/graph.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>

#include <fmt/format.h>

#include "qst/error.hpp"

namespace qst {

namespace {

void check_vertex(const Graph& g, Vertex v) {
  if (v >= g.vertex_count()) {
    throw Error(ErrorCode::Index, fmt::format("vertex {} out of range for n={}", v, g.vertex_count()));
  }
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), adjacency_(n) {
  std::sort(edges_.begin(), edges_.end());
  for (const auto& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

Graph Graph::from_edge_list(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
  if (n < 1) throw Error(ErrorCode::InvalidSize, "graph needs at least one vertex");
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      throw Error(ErrorCode::Index, fmt::format("edge {{{},{}}} has an endpoint outside [0,{})", a, b, n));
    }
    if (a == b) throw Error(ErrorCode::InvalidEdge, fmt::format("self-loop at vertex {}", a));
    normalized.push_back({std::min(a, b), std::max(a, b)});
  }
  std::vector<Edge> sorted = normalized;
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw Error(ErrorCode::DuplicateEdge, fmt::format("edge {{{},{}}} listed twice", dup->u, dup->v));
  }
  return Graph(n, std::move(sorted));
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
  check_vertex(*this, v);
  return adjacency_[v];
}

bool Graph::adjacent(Vertex a, Vertex b) const {
  check_vertex(*this, a);
  check_vertex(*this, b);
  const auto& nb = adjacency_[a];
  return std::binary_search(nb.begin(), nb.end(), b);
}

Graph complete(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidSize, "complete graph needs n >= 1");
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(n * (n - 1) / 2);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  return Graph::from_edge_list(n, edges);
}

Graph complete_minus_edge(std::size_t n, Vertex i, Vertex j) {
  if (n < 3) throw Error(ErrorCode::InvalidSize, "complete graph minus an edge needs n >= 3");
  if (i >= n || j >= n) throw Error(ErrorCode::Index, fmt::format("pair ({},{}) out of range for n={}", i, j, n));
  if (i == j) throw Error(ErrorCode::InvalidPair, "removed edge needs two distinct endpoints");
  const Edge removed{std::min(i, j), std::max(i, j)};
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (Edge{a, b} != removed) edges.emplace_back(a, b);
  return Graph::from_edge_list(n, edges);
}

Graph path(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidSize, "path needs n >= 1");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex k = 0; k + 1 < n; ++k) edges.emplace_back(k, k + 1);
  return Graph::from_edge_list(n, edges);
}

Vertex theta_antipode(std::size_t l, std::size_t n) {
  if (l < 1 || n < 3) throw Error(ErrorCode::InvalidParameter, fmt::format("theta needs l >= 1 and n >= 3, got l={} n={}", l, n));
  return 1 + (n - 2) * l;
}

Graph theta(std::size_t l, std::size_t n) {
  const Vertex far = theta_antipode(l, n);
  std::vector<std::pair<Vertex, Vertex>> edges;
  Vertex next = 1;
  for (std::size_t p = 0; p < l; ++p) {
    Vertex prev = 0;
    for (std::size_t k = 0; k < n - 2; ++k) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
    edges.emplace_back(prev, far);
  }
  return Graph::from_edge_list(far + 1, edges);
}

GeodesicCount count_geodesics(const Graph& g, Vertex i, Vertex j) {
  check_vertex(g, i);
  check_vertex(g, j);
  constexpr auto unseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.vertex_count(), unseen);
  std::vector<std::uint64_t> paths(g.vertex_count(), 0);
  std::queue<Vertex> frontier;
  dist[i] = 0;
  paths[i] = 1;
  frontier.push(i);
  while (!frontier.empty()) {
    const Vertex v = frontier.front();
    frontier.pop();
    if (dist[v] >= dist[j]) break;  // everything closer than j is settled
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == unseen) {
        dist[w] = dist[v] + 1;
        frontier.push(w);
      }
      if (dist[w] == dist[v] + 1) paths[w] += paths[v];
    }
  }
  if (dist[j] == unseen) throw Error(ErrorCode::NoPath, fmt::format("vertices {} and {} are disconnected", i, j));
  return {dist[j], paths[j]};
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<std::pair<Vertex, Vertex>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    fields.seekg(0);
    if (!n) {
      long long value = 0;
      std::string rest;
      if (!(fields >> value) || (fields >> rest) || value < 1) {
        throw Error(ErrorCode::Parse, fmt::format("line {}: expected vertex count", line_no));
      }
      n = static_cast<std::size_t>(value);
      continue;
    }
    long long a = 0, b = 0;
    std::string rest;
    if (!(fields >> a >> b) || (fields >> rest) || a < 0 || b < 0) {
      throw Error(ErrorCode::Parse, fmt::format("line {}: expected 'i j'", line_no));
    }
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  if (!n) throw Error(ErrorCode::Parse, "edge list has no vertex count");
  return Graph::from_edge_list(*n, edges);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, fmt::format("cannot open edge list '{}'", path));
  return read_edge_list(in);
}

}  // namespace qst
