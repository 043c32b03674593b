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


#include <gtest/gtest.h>

#include <queue>
#include <random>
#include <set>

#include "qarch/arch.hpp"
#include "qarch/error.hpp"
#include "support.hpp"

namespace qarch {
namespace {

CouplingGraph random_graph(std::mt19937_64& rng, int n, double p) {
  std::vector<Vertex> vertices;
  for (int v = 0; v < n; ++v) vertices.push_back({v, v % 5, v / 5});
  std::vector<Edge> edges;
  std::bernoulli_distribution coin(p);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (coin(rng)) edges.emplace_back(a, b);
    }
  }
  return CouplingGraph(vertices, edges);
}

// Floyd-Warshall over the edge list as a reference for BFS distances.
std::vector<std::vector<int>> floyd(const CouplingGraph& g) {
  const int n = g.num_vertices();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (const Edge& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (int& x : row)
      if (x == inf) x = -1;
  return d;
}

TEST(CouplingGraph, RejectsBadInput) {
  EXPECT_THROW(CouplingGraph({{0, 0, 0}, {1, 0, 0}}, {}), InputError);
  EXPECT_THROW(CouplingGraph({{0, 0, 0}, {1, 1, 0}}, {{0, 0}}), InputError);
  EXPECT_THROW(CouplingGraph({{0, 0, 0}, {1, 1, 0}}, {{0, 1}, {1, 0}}), InputError);
  EXPECT_THROW(CouplingGraph({{0, 0, 0}, {1, 1, 0}}, {{0, 2}}), InputError);
}

TEST(CouplingGraph, BfsMatchesFloydWarshall) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 30; ++round) {
    const CouplingGraph g = random_graph(rng, 2 + round % 15, 0.2);
    EXPECT_EQ(g.all_pairs_distances(), floyd(g));
  }
}

TEST(Geometry, SegmentCrossingCases) {
  // Proper crossing of the two diagonals of a unit square.
  EXPECT_TRUE(segments_cross({0, 0}, {1, 1}, {1, 0}, {0, 1}));
  // Shared endpoint only.
  EXPECT_FALSE(segments_cross({0, 0}, {1, 1}, {1, 1}, {2, 0}));
  // T-junction: meeting at an endpoint of one segment is not proper.
  EXPECT_FALSE(segments_cross({0, 0}, {2, 0}, {1, 0}, {1, 1}));
  // Diagonal against a grid edge from the same corner.
  EXPECT_FALSE(segments_cross({0, 0}, {1, 1}, {0, 0}, {1, 0}));
  // Collinear overlap of positive length.
  EXPECT_TRUE(segments_cross({0, 0}, {2, 0}, {1, 0}, {3, 0}));
  // Collinear, touching at one endpoint.
  EXPECT_FALSE(segments_cross({0, 0}, {1, 0}, {1, 0}, {2, 0}));
  // Parallel and disjoint.
  EXPECT_FALSE(segments_cross({0, 0}, {1, 0}, {0, 1}, {1, 1}));
}

// Reference predicate by Cramer's rule on p1 + t(p2 - p1) = q1 + u(q2 - q1),
// with a projection-interval test for the collinear case.
bool cramer_cross(Point p1, Point p2, Point q1, Point q2) {
  const long long rx = p2.x - p1.x, ry = p2.y - p1.y;
  const long long sx = q2.x - q1.x, sy = q2.y - q1.y;
  const long long wx = q1.x - p1.x, wy = q1.y - p1.y;
  const long long den = rx * sy - ry * sx;
  if (den != 0) {
    long long tn = wx * sy - wy * sx;
    long long un = wx * ry - wy * rx;
    long long d = den;
    if (d < 0) { d = -d; tn = -tn; un = -un; }
    return tn > 0 && tn < d && un > 0 && un < d;
  }
  if (wx * ry - wy * rx != 0) return false;  // parallel, distinct lines
  // Collinear: project onto the direction and intersect the intervals.
  const long long len = rx * rx + ry * ry;
  long long a = wx * rx + wy * ry;
  long long b = (q2.x - p1.x) * rx + (q2.y - p1.y) * ry;
  if (a > b) std::swap(a, b);
  return std::min(b, len) - std::max(a, 0LL) > 0;
}

TEST(Geometry, CrossingAgreesWithCramerOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coord(0, 4);
  for (int round = 0; round < 5000; ++round) {
    Point p1{coord(rng), coord(rng)}, p2{coord(rng), coord(rng)};
    Point q1{coord(rng), coord(rng)}, q2{coord(rng), coord(rng)};
    if (p1 == p2 || q1 == q2) continue;
    EXPECT_EQ(segments_cross(p1, p2, q1, q2), cramer_cross(p1, p2, q1, q2))
        << p1.x << ',' << p1.y << ' ' << p2.x << ',' << p2.y << " / " << q1.x
        << ',' << q1.y << ' ' << q2.x << ',' << q2.y;
  }
}

TEST(Space, GridConstants) {
  const ArchitectureSpace s = gen_grid_space(4, 4);
  EXPECT_EQ(s.base.num_vertices(), 16);
  EXPECT_EQ(s.base.num_edges(), 24);
  EXPECT_EQ(s.flexible.size(), 18u);
  EXPECT_EQ(s.collisions.size(), 9u);
  const ArchitectureSpace s3 = gen_grid_space(3, 5);
  EXPECT_EQ(s3.base.num_edges(), 3 * 4 + 2 * 5);
  EXPECT_EQ(s3.flexible.size(), 2u * 2 * 4);
  EXPECT_EQ(s3.collisions.size(), 8u);
}

TEST(Space, HeavyHexDataFileMatchesBuiltInTile) {
  const ArchitectureSpace file = load_space(testing::data_path("heavyhex_tile.json"));
  const ArchitectureSpace built = gen_heavyhex_space();
  EXPECT_EQ(file.base, built.base);
  EXPECT_EQ(file.flexible, built.flexible);
  EXPECT_EQ(file.collisions, built.collisions);
  EXPECT_EQ(file.base.num_vertices(), 18);
  EXPECT_EQ(file.base.num_edges(), 18);
  int leaves = 0;
  for (int v = 0; v < 18; ++v) {
    EXPECT_LE(file.base.degree(v), 3);
    leaves += file.base.degree(v) == 1;
  }
  EXPECT_EQ(leaves, 4);
}

TEST(Space, HeavyHexFlexibleEdgesFollowTheRules) {
  const ArchitectureSpace s = gen_heavyhex_space();
  const auto dist = s.base.all_pairs_distances();
  for (const Edge& e : s.flexible) {
    EXPECT_FALSE(s.base.has_edge(e));
    const Point a = s.base.coord(e.u), b = s.base.coord(e.v);
    const bool vertical = a.x == b.x;
    const bool diagonal = dist[e.u][e.v] == 2 && a.x != b.x && a.y != b.y;
    EXPECT_TRUE(vertical || diagonal) << to_string(e);
    if (vertical) EXPECT_FALSE(s.base.degree(e.u) == 1 && s.base.degree(e.v) == 1);
  }
  for (auto [i, j] : s.collisions) {
    const Edge& a = s.flexible[i];
    const Edge& b = s.flexible[j];
    EXPECT_TRUE(segments_cross(s.base.coord(a.u), s.base.coord(a.v),
                               s.base.coord(b.u), s.base.coord(b.v)));
  }
}

TEST(Space, ActivateChecksMembershipAndCollisions) {
  const ArchitectureSpace s = gen_grid_space(2, 2);
  ASSERT_EQ(s.flexible.size(), 2u);
  ASSERT_EQ(s.collisions.size(), 1u);
  EXPECT_EQ(activate(s, std::vector<Edge>{s.flexible[0]}).num_edges(), 5);
  EXPECT_THROW(activate(s, s.flexible), InputError);
  EXPECT_THROW(activate(s, std::vector<Edge>{Edge(0, 1)}), InputError);
}

TEST(Space, JsonRoundTripAndDerivedEntries) {
  const ArchitectureSpace s = gen_grid_space(3, 3);
  const ArchitectureSpace back = space_from_json(space_to_json(s));
  EXPECT_EQ(back.base, s.base);
  EXPECT_EQ(back.flexible, s.flexible);
  EXPECT_EQ(back.collisions, s.collisions);

  nlohmann::json derived = space_to_json(s);
  derived["flexible_edges"] = {{"derive", "grid_diagonals"}};
  derived["collisions"] = {{"derive", "geometric_crossings"}};
  const ArchitectureSpace d = space_from_json(derived);
  EXPECT_EQ(d.flexible.size(), s.flexible.size());
  EXPECT_EQ(d.collisions.size(), s.collisions.size());

  nlohmann::json bad = space_to_json(s);
  bad["collisions"] = {{0, 99}};
  EXPECT_THROW(space_from_json(bad), InputError);
}

// Reference: edge distance = min over endpoint pairs of BFS distance.
TEST(DistanceTables, MatchEndpointBfs) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 20; ++round) {
    const CouplingGraph g = random_graph(rng, 4 + round % 12, 0.3);
    const auto d = floyd(g);
    const EdgeDistanceTables t = build_distance_tables(g, 2);
    const auto& edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (std::size_t j = 0; j < edges.size(); ++j) {
        if (i == j) continue;
        int best = -1;
        for (int a : {edges[i].u, edges[i].v}) {
          for (int b : {edges[j].u, edges[j].v}) {
            const int x = d[a][b];
            if (x >= 0 && (best < 0 || x < best)) best = x;
          }
        }
        const auto got = t.distance(static_cast<int>(i), static_cast<int>(j));
        if (best == 1 || best == 2) {
          EXPECT_EQ(got, best);
        } else {
          EXPECT_FALSE(got.has_value());
        }
      }
    }
  }
}

TEST(Dot, HighlightsActivatedEdges) {
  const ArchitectureSpace s = gen_grid_space(2, 2);
  const std::vector<Edge> used{s.flexible[0]};
  const std::string dot = graph_to_dot(activate(s, used), used);
  EXPECT_NE(dot.find("graph"), std::string::npos);
  EXPECT_NE(dot.find("dashed"), std::string::npos);
}

}  // namespace
}  // namespace qarch
