// Copyright 2026 The qarch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <compare>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qarch {

/// Unordered vertex pair, stored normalized with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool touches(int w) const { return u == w || v == w; }
  bool shares_vertex(const Edge& o) const {
    return touches(o.u) || touches(o.v);
  }
  int other(int w) const { return w == u ? v : u; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::string to_string(const Edge& e);

struct Point {
  long long x = 0;
  long long y = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
};

struct Vertex {
  int id = 0;
  int x = 0;
  int y = 0;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Physical qubits with planar coordinates and their couplings. Vertex ids
/// equal their index in `vertices()`; edges are kept sorted.
class CouplingGraph {
 public:
  CouplingGraph() = default;
  CouplingGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const {
    return adjacency_[static_cast<std::size_t>(v)];
  }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  Point coord(int v) const;

  bool has_edge(const Edge& e) const;
  std::optional<int> edge_index(const Edge& e) const;

  /// Hop distances from `source`; unreachable vertices get -1.
  std::vector<int> bfs(int source) const;
  std::vector<std::vector<int>> all_pairs_distances() const;

  friend bool operator==(const CouplingGraph& a, const CouplingGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// Base graph, optional couplings that may be switched on, and pairs of
/// optional couplings that may not coexist (indices into `flexible`).
struct ArchitectureSpace {
  CouplingGraph base;
  std::vector<Edge> flexible;
  std::vector<std::pair<int, int>> collisions;

  /// Fixed edges first, then flexible edges, in their stored order.
  std::vector<Edge> all_edges() const;
  std::optional<int> flexible_index(const Edge& e) const;
  bool is_flexible(const Edge& e) const { return flexible_index(e).has_value(); }
  void validate() const;
};

/// Segments p1p2 and q1q2 cross when their relative interiors meet: either a
/// proper crossing or a collinear overlap of positive length. Touching at an
/// endpoint never counts.
bool segments_cross(Point p1, Point p2, Point q1, Point q2);

/// Index pairs (i < j) of crossing edges.
std::vector<std::pair<int, int>> crossing_pairs(std::span<const Edge> edges,
                                                const CouplingGraph& coords);

ArchitectureSpace gen_grid_space(int rows, int cols);

/// Heavy-hexagon tile: 18 qubits, 18 couplings, four degree-one stubs.
CouplingGraph heavyhex_tile();

struct FlexibleDerivation {
  std::vector<Edge> flexible;
  std::vector<std::pair<int, int>> collisions;
};

/// Vertices at graph distance two lying in different rows and columns.
std::vector<Edge> distance_two_diagonals(const CouplingGraph& base);
FlexibleDerivation derive_heavyhex_flexible(const CouplingGraph& base);
ArchitectureSpace gen_heavyhex_space();

/// Base graph plus the given flexible edges. Throws on an unknown edge or
/// when both edges of a collision pair are requested.
CouplingGraph activate(const ArchitectureSpace& space,
                       std::span<const Edge> used);

/// Edges at hop distance 1..n_max from each edge of a graph, where the
/// distance between two edges is the shortest path between any of their
/// endpoints. Edges sharing a vertex are at distance 0 and listed nowhere.
class EdgeDistanceTables {
 public:
  EdgeDistanceTables() = default;
  EdgeDistanceTables(std::vector<Edge> edges,
                     std::vector<std::vector<std::vector<int>>> by_distance);

  const std::vector<Edge>& edges() const { return edges_; }
  int max_distance() const { return max_distance_; }
  std::optional<int> index_of(const Edge& e) const;
  /// Edge indices at exactly distance k (1-based) from edge i.
  const std::vector<int>& at_distance(int i, int k) const;
  const std::vector<int>& d1(int i) const { return at_distance(i, 1); }
  const std::vector<int>& d2(int i) const { return at_distance(i, 2); }
  /// Distance between edges i and j if within the tables, else nullopt.
  std::optional<int> distance(int i, int j) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<std::vector<int>>> by_distance_;
  int max_distance_ = 0;
};

EdgeDistanceTables build_distance_tables(const CouplingGraph& graph,
                                         int n_max = 2);

nlohmann::json space_to_json(const ArchitectureSpace& space);
ArchitectureSpace space_from_json(const nlohmann::json& doc);
ArchitectureSpace load_space(const std::filesystem::path& path);
void save_space(const ArchitectureSpace& space,
                const std::filesystem::path& path);

nlohmann::json edges_to_json(std::span<const Edge> edges);
std::vector<Edge> edges_from_json(const nlohmann::json& doc);

/// Graphviz rendering; edges listed in `highlighted` are drawn dashed blue.
std::string graph_to_dot(const CouplingGraph& graph,
                         std::span<const Edge> highlighted,
                         const std::string& name = "arch");

}  // namespace qarch
