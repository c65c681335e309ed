#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qst {

using Vertex = std::size_t;

/// Unordered vertex pair, always stored with u < v.
struct Edge {
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  /// Validates and normalizes the pairs; throws on self-loops, duplicates
  /// and out-of-range endpoints.
  static Graph from_edge_list(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  bool adjacent(Vertex a, Vertex b) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t n_ = 0;
  std::vector<Edge> edges_;  // sorted
  std::vector<std::vector<Vertex>> adjacency_;
};

Graph complete(std::size_t n);
/// K_n with the edge {i, j} removed.
Graph complete_minus_edge(std::size_t n, Vertex i, Vertex j);
Graph path(std::size_t n);

/// Two antipodal vertices joined by `l` internally disjoint paths, each with
/// n-2 internal vertices. Antipodal vertices are 0 and theta_antipode(l, n).
Graph theta(std::size_t l, std::size_t n);
Vertex theta_antipode(std::size_t l, std::size_t n);

struct GeodesicCount {
  std::size_t distance = 0;
  std::uint64_t count = 0;

  friend bool operator==(const GeodesicCount&, const GeodesicCount&) = default;
};

/// Shortest-path length and number of distinct shortest paths between i and j.
GeodesicCount count_geodesics(const Graph& g, Vertex i, Vertex j);

/// Edge-list text: first line "n", then one "i j" per line; '#' starts a comment.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

}  // namespace qst
