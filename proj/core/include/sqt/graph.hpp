#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqt/modular.hpp"
#include "sqt/origami.hpp"
#include "sqt/rational.hpp"
#include "sqt/triangles.hpp"
#include "sqt/tess.hpp"
#include "sqt/veech.hpp"

namespace sqt {

// Bipartite graph on periodic directions and ideal triangles, an edge joining
// k to every triangle with vertex k; each edge has length 1/2.  Every slope
// has infinitely many triangles, so exploration is windowed: at a slope k
// only triangles whose interval in the chart of k meets a window around the
// chart image of a reference slope are followed.

struct BallEdge {
  Slope slope;
  IdealTriangle triangle;

  friend auto operator<=>(const BallEdge&, const BallEdge&) = default;
};

struct PeriodicDirectionBall {
  Slope center;
  Rational radius;
  Rational window;                               // half-width used away from the center
  std::map<Slope, Rational> c_vertices;          // slope -> distance
  std::map<IdealTriangle, Rational> i_vertices;  // triangle -> distance
  std::vector<BallEdge> edges;
};

// Triangles at the center are taken over one period of its stabilizer; at
// other slopes k, over (c - window, c + window) with c the image of the
// center in the chart of k.  Triangles enter only with their three slopes,
// so they sit at distance <= radius - 1/2.
PeriodicDirectionBall local_ball(const Origami& o, const Slope& center, const Rational& radius,
                                 const Rational& window = Rational(1), const Rational& max_radius = Rational(2));

struct ConnectingPath {
  std::vector<Slope> slopes;             // k1 = slopes.front(), k2 = slopes.back()
  std::vector<IdealTriangle> triangles;  // triangles[i] has vertices slopes[i], slopes[i+1]

  int length() const { return static_cast<int>(triangles.size()); }
};

// Breadth-first search over the windows around both endpoints; the explored
// subgraph is symmetric in (k1, k2).  nullopt when the distance exceeds cutoff.
std::optional<ConnectingPath> shortest_path(GeodesicOracle& oracle, const Slope& k1, const Slope& k2, int cutoff,
                                            const Rational& window = Rational(1));
std::optional<int> graph_distance(const Origami& o, const Slope& k1, const Slope& k2, int cutoff = 8,
                                  const Rational& window = Rational(1));
// Throws CapExceeded when nothing is found within cutoff.
ConnectingPath connecting_path(const Origami& o, const Slope& k1, const Slope& k2, int cutoff = 8);

struct QuotientEdge {
  int cusp;
  int triangle;
  int multiplicity;
};

struct QuotientGraph {
  std::vector<Slope> v_vertices;          // cusp class representatives, v_vertices[0] = inf
  std::vector<IdealTriangle> w_vertices;  // triangle class representatives
  std::vector<int> stabilizer_order;      // per triangle class, 1 or 3
  std::vector<QuotientEdge> edges;
  std::vector<int> distance;              // slope steps from inf, by breadth-first search
  std::vector<int> generation;            // discovery step of each cusp class in algorithm A

  std::int64_t edge_count() const;
};

QuotientGraph quotient_graph(const CoarseFundamentalDomain& domain);
QuotientGraph quotient_graph(const Origami& o);

std::string to_dot(const QuotientGraph& g);
std::string to_json(const QuotientGraph& g);
std::string to_dot(const PeriodicDirectionBall& b);
std::string to_json(const PeriodicDirectionBall& b);

}  // namespace sqt
