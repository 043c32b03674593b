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


#include "qarch/arch.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "qarch/error.hpp"
#include "qarch/json_io.hpp"

namespace qarch {

std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

CouplingGraph::CouplingGraph(std::vector<Vertex> vertices,
                             std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::set<std::pair<int, int>> coords;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].id != static_cast<int>(i)) {
      throw InputError("vertex ids must be 0..n-1 in order (vertex " +
                       std::to_string(i) + " has id " +
                       std::to_string(vertices_[i].id) + ")");
    }
    if (!coords.insert({vertices_[i].x, vertices_[i].y}).second) {
      throw InputError("duplicate coordinate at vertex " + std::to_string(i));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw InputError("duplicate edge in coupling graph");
  }
  adjacency_.assign(vertices_.size(), {});
  for (const Edge& e : edges_) {
    if (e.u == e.v) throw InputError("self-loop " + to_string(e));
    if (e.u < 0 || e.v >= num_vertices()) {
      throw InputError("edge " + to_string(e) + " references unknown vertex");
    }
    adjacency_[static_cast<std::size_t>(e.u)].push_back(e.v);
    adjacency_[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

Point CouplingGraph::coord(int v) const {
  const Vertex& vx = vertices_.at(static_cast<std::size_t>(v));
  return Point{vx.x, vx.y};
}

bool CouplingGraph::has_edge(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::optional<int> CouplingGraph::edge_index(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<int>(it - edges_.begin());
}

std::vector<int> CouplingGraph::bfs(int source) const {
  std::vector<int> dist(vertices_.size(), -1);
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : neighbors(v)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<std::vector<int>> CouplingGraph::all_pairs_distances() const {
  std::vector<std::vector<int>> out;
  out.reserve(vertices_.size());
  for (int v = 0; v < num_vertices(); ++v) out.push_back(bfs(v));
  return out;
}

std::vector<Edge> ArchitectureSpace::all_edges() const {
  std::vector<Edge> out = base.edges();
  out.insert(out.end(), flexible.begin(), flexible.end());
  return out;
}

std::optional<int> ArchitectureSpace::flexible_index(const Edge& e) const {
  auto it = std::find(flexible.begin(), flexible.end(), e);
  if (it == flexible.end()) return std::nullopt;
  return static_cast<int>(it - flexible.begin());
}

void ArchitectureSpace::validate() const {
  std::set<Edge> seen;
  for (const Edge& e : flexible) {
    if (e.u == e.v) throw InputError("flexible self-loop " + to_string(e));
    if (e.u < 0 || e.v >= base.num_vertices()) {
      throw InputError("flexible edge " + to_string(e) +
                       " references unknown vertex");
    }
    if (base.has_edge(e)) {
      throw InputError("flexible edge " + to_string(e) + " is also fixed");
    }
    if (!seen.insert(e).second) {
      throw InputError("duplicate flexible edge " + to_string(e));
    }
  }
  const int nf = static_cast<int>(flexible.size());
  for (auto [a, b] : collisions) {
    if (a < 0 || b < 0 || a >= nf || b >= nf) {
      throw InputError("collision references unknown flexible edge index");
    }
    if (a == b) throw InputError("collision pair of an edge with itself");
  }
}

namespace {

int orientation(Point a, Point b, Point c) {
  const long long cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return (cross > 0) - (cross < 0);
}

}  // namespace

bool segments_cross(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 != 0 || o2 != 0) return false;
  // Collinear: overlap of the open intervals along the dominant axis.
  const bool use_x = p1.x != p2.x || q1.x != q2.x;
  auto key = [use_x](Point p) { return use_x ? p.x : p.y; };
  const long long plo = std::min(key(p1), key(p2));
  const long long phi = std::max(key(p1), key(p2));
  const long long qlo = std::min(key(q1), key(q2));
  const long long qhi = std::max(key(q1), key(q2));
  return std::max(plo, qlo) < std::min(phi, qhi);
}

std::vector<std::pair<int, int>> crossing_pairs(std::span<const Edge> edges,
                                                const CouplingGraph& coords) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Edge& a = edges[i];
      const Edge& b = edges[j];
      if (segments_cross(coords.coord(a.u), coords.coord(a.v),
                         coords.coord(b.u), coords.coord(b.v))) {
        out.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return out;
}

ArchitectureSpace gen_grid_space(int rows, int cols) {
  if (rows < 2 || cols < 2) {
    throw InputError("grid needs at least 2 rows and 2 columns");
  }
  auto id = [cols](int r, int c) { return r * cols + c; };
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      vertices.push_back({id(r, c), c, r});
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  ArchitectureSpace space;
  space.base = CouplingGraph(std::move(vertices), std::move(edges));
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      space.flexible.emplace_back(id(r, c), id(r + 1, c + 1));
      space.flexible.emplace_back(id(r, c + 1), id(r + 1, c));
    }
  }
  space.collisions = crossing_pairs(space.flexible, space.base);
  space.validate();
  return space;
}

CouplingGraph heavyhex_tile() {
  // Two rows of seven qubits (y = 1 and y = 3) joined by bridge qubits at
  // x = 0 and x = 4, closing one heavy hexagon over x = 0..4. The row tails
  // at x = 6 and the stubs above and below x = 2 are the four degree-one
  // qubits that keep the hexagon corners at degree three.
  std::vector<Vertex> vertices;
  std::map<std::pair<int, int>, int> at;
  auto add = [&](int x, int y) {
    const int id = static_cast<int>(vertices.size());
    vertices.push_back({id, x, y});
    at[{x, y}] = id;
  };
  add(2, 0);
  for (int x = 0; x <= 6; ++x) add(x, 1);
  add(0, 2);
  add(4, 2);
  for (int x = 0; x <= 6; ++x) add(x, 3);
  add(2, 4);

  std::vector<Edge> edges;
  for (int y : {1, 3}) {
    for (int x = 0; x < 6; ++x) edges.emplace_back(at[{x, y}], at[{x + 1, y}]);
  }
  for (int x : {0, 4}) {
    edges.emplace_back(at[{x, 1}], at[{x, 2}]);
    edges.emplace_back(at[{x, 2}], at[{x, 3}]);
  }
  edges.emplace_back(at[{2, 0}], at[{2, 1}]);
  edges.emplace_back(at[{2, 3}], at[{2, 4}]);
  return CouplingGraph(std::move(vertices), std::move(edges));
}

std::vector<Edge> distance_two_diagonals(const CouplingGraph& base) {
  std::vector<Edge> out;
  const auto dist = base.all_pairs_distances();
  for (int a = 0; a < base.num_vertices(); ++a) {
    for (int b = a + 1; b < base.num_vertices(); ++b) {
      const Point pa = base.coord(a);
      const Point pb = base.coord(b);
      if (dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == 2 &&
          pa.x != pb.x && pa.y != pb.y) {
        out.emplace_back(a, b);
      }
    }
  }
  return out;
}

namespace {

void check_heavyhex_base(const CouplingGraph& base) {
  if (base.num_vertices() != 18 || base.num_edges() != 18) {
    throw InputError("heavy-hexagon base must have 18 vertices and 18 edges");
  }
  int leaves = 0;
  for (int v = 0; v < base.num_vertices(); ++v) {
    if (base.degree(v) > 3) {
      throw InputError("heavy-hexagon vertex " + std::to_string(v) +
                       " has degree above 3");
    }
    if (base.degree(v) == 1) ++leaves;
  }
  if (leaves != 4) {
    throw InputError("heavy-hexagon base must have exactly four degree-one "
                     "vertices, found " + std::to_string(leaves));
  }
}

}  // namespace

FlexibleDerivation derive_heavyhex_flexible(const CouplingGraph& base) {
  check_heavyhex_base(base);
  std::set<Edge> flexible;
  for (int a = 0; a < base.num_vertices(); ++a) {
    for (int b = a + 1; b < base.num_vertices(); ++b) {
      const Edge e(a, b);
      if (base.coord(a).x != base.coord(b).x || base.has_edge(e)) continue;
      if (base.degree(a) == 1 && base.degree(b) == 1) continue;
      flexible.insert(e);
    }
  }
  for (const Edge& e : distance_two_diagonals(base)) flexible.insert(e);
  FlexibleDerivation out;
  out.flexible.assign(flexible.begin(), flexible.end());
  out.collisions = crossing_pairs(out.flexible, base);
  return out;
}

ArchitectureSpace gen_heavyhex_space() {
  ArchitectureSpace space;
  space.base = heavyhex_tile();
  auto derived = derive_heavyhex_flexible(space.base);
  space.flexible = std::move(derived.flexible);
  space.collisions = std::move(derived.collisions);
  space.validate();
  return space;
}

CouplingGraph activate(const ArchitectureSpace& space,
                       std::span<const Edge> used) {
  std::vector<bool> on(space.flexible.size(), false);
  for (const Edge& e : used) {
    auto idx = space.flexible_index(e);
    if (!idx) throw InputError("edge " + to_string(e) + " is not flexible");
    on[static_cast<std::size_t>(*idx)] = true;
  }
  for (auto [a, b] : space.collisions) {
    if (on[static_cast<std::size_t>(a)] && on[static_cast<std::size_t>(b)]) {
      throw InputError(
          "colliding flexible edges " +
          to_string(space.flexible[static_cast<std::size_t>(a)]) + " and " +
          to_string(space.flexible[static_cast<std::size_t>(b)]));
    }
  }
  std::vector<Edge> edges = space.base.edges();
  for (std::size_t i = 0; i < on.size(); ++i) {
    if (on[i]) edges.push_back(space.flexible[i]);
  }
  return CouplingGraph(space.base.vertices(), std::move(edges));
}

EdgeDistanceTables::EdgeDistanceTables(
    std::vector<Edge> edges,
    std::vector<std::vector<std::vector<int>>> by_distance)
    : edges_(std::move(edges)), by_distance_(std::move(by_distance)) {
  max_distance_ =
      by_distance_.empty() ? 0 : static_cast<int>(by_distance_.front().size());
}

std::optional<int> EdgeDistanceTables::index_of(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<int>(it - edges_.begin());
}

const std::vector<int>& EdgeDistanceTables::at_distance(int i, int k) const {
  static const std::vector<int> kEmpty;
  if (k < 1 || k > max_distance_) return kEmpty;
  return by_distance_.at(static_cast<std::size_t>(i))
      [static_cast<std::size_t>(k - 1)];
}

std::optional<int> EdgeDistanceTables::distance(int i, int j) const {
  for (int k = 1; k <= max_distance_; ++k) {
    const auto& list = at_distance(i, k);
    if (std::binary_search(list.begin(), list.end(), j)) return k;
  }
  return std::nullopt;
}

EdgeDistanceTables build_distance_tables(const CouplingGraph& graph,
                                         int n_max) {
  if (n_max < 1) throw InputError("n_max must be at least 1");
  const auto dist = graph.all_pairs_distances();
  const auto& edges = graph.edges();
  auto hop = [&dist](int a, int b) {
    return dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  };
  std::vector<std::vector<std::vector<int>>> tables(
      edges.size(),
      std::vector<std::vector<int>>(static_cast<std::size_t>(n_max)));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (i == j || edges[i].shares_vertex(edges[j])) continue;
      int best = -1;
      for (int a : {edges[i].u, edges[i].v}) {
        for (int b : {edges[j].u, edges[j].v}) {
          const int d = hop(a, b);
          if (d >= 0 && (best < 0 || d < best)) best = d;
        }
      }
      if (best >= 1 && best <= n_max) {
        tables[i][static_cast<std::size_t>(best - 1)].push_back(
            static_cast<int>(j));
      }
    }
  }
  return EdgeDistanceTables(edges, std::move(tables));
}

nlohmann::json edges_to_json(std::span<const Edge> edges) {
  nlohmann::json out = nlohmann::json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

std::vector<Edge> edges_from_json(const nlohmann::json& doc) {
  std::vector<Edge> out;
  for (const auto& pair : doc) {
    if (!pair.is_array() || pair.size() != 2) {
      throw InputError("edge must be a two-element array");
    }
    out.emplace_back(pair[0].get<int>(), pair[1].get<int>());
  }
  return out;
}

nlohmann::json space_to_json(const ArchitectureSpace& space) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const Vertex& v : space.base.vertices()) {
    vertices.push_back({{"id", v.id}, {"x", v.x}, {"y", v.y}});
  }
  nlohmann::json collisions = nlohmann::json::array();
  for (auto [a, b] : space.collisions) collisions.push_back({a, b});
  return {{"vertices", std::move(vertices)},
          {"fixed_edges", edges_to_json(space.base.edges())},
          {"flexible_edges", edges_to_json(space.flexible)},
          {"collisions", std::move(collisions)}};
}

ArchitectureSpace space_from_json(const nlohmann::json& doc) {
  try {
    ArchitectureSpace space;
    std::vector<Vertex> vertices;
    for (const auto& v : doc.at("vertices")) {
      vertices.push_back(
          {v.at("id").get<int>(), v.at("x").get<int>(), v.at("y").get<int>()});
    }
    std::sort(vertices.begin(), vertices.end(),
              [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
    space.base = CouplingGraph(std::move(vertices),
                               edges_from_json(doc.at("fixed_edges")));

    const auto& flex = doc.at("flexible_edges");
    if (flex.is_object()) {
      const auto rule = flex.at("derive").get<std::string>();
      if (rule == "grid_diagonals") {
        space.flexible = distance_two_diagonals(space.base);
      } else if (rule == "heavyhex_rules") {
        space.flexible = derive_heavyhex_flexible(space.base).flexible;
      } else {
        throw InputError("unknown flexible_edges rule '" + rule + "'");
      }
    } else {
      space.flexible = edges_from_json(flex);
    }

    const auto& coll = doc.contains("collisions") ? doc.at("collisions")
                                                  : nlohmann::json::array();
    if (coll.is_object()) {
      const auto rule = coll.at("derive").get<std::string>();
      if (rule != "geometric_crossings") {
        throw InputError("unknown collisions rule '" + rule + "'");
      }
      space.collisions = crossing_pairs(space.flexible, space.base);
    } else {
      for (const auto& pair : coll) {
        if (!pair.is_array() || pair.size() != 2) {
          throw InputError("collision must be a two-element array");
        }
        const int a = pair[0].get<int>();
        const int b = pair[1].get<int>();
        space.collisions.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
    space.validate();
    return space;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("space: ") + e.what());
  }
}

ArchitectureSpace load_space(const std::filesystem::path& path) {
  try {
    return space_from_json(read_json_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void save_space(const ArchitectureSpace& space,
                const std::filesystem::path& path) {
  write_json_file(space_to_json(space), path);
}

std::string graph_to_dot(const CouplingGraph& graph,
                         std::span<const Edge> highlighted,
                         const std::string& name) {
  std::set<Edge> hi(highlighted.begin(), highlighted.end());
  std::ostringstream out;
  out << "graph " << name << " {\n";
  out << "  node [shape=circle];\n";
  for (const Vertex& v : graph.vertices()) {
    out << "  " << v.id << " [pos=\"" << v.x << "," << -v.y << "!\"];\n";
  }
  for (const Edge& e : graph.edges()) {
    out << "  " << e.u << " -- " << e.v;
    if (hi.count(e)) out << " [color=blue, style=dashed]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace qarch
