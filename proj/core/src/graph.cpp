#include "sqt/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sqt/error.hpp"

namespace sqt {

namespace {

// Triangles at k in the window around the chart image of ref.
std::vector<IdealTriangle> window_around(GeodesicOracle& oracle, const Slope& k, const Slope& ref,
                                         const Rational& w) {
  if (k == ref) return {};
  const Rational c = oracle.match(k).chart(ref).value();
  return oracle.triangles_at(k, c - w, c + w);
}

std::string triangle_label(const IdealTriangle& t) { return t.to_string(); }

// Search order among triangles at one slope: lowest total height first, then
// the larger triangle, which prefers (0, 1, inf) to (-1, 0, inf) on the torus.
void order_for_search(std::vector<IdealTriangle>& tris) {
  auto height = [](const IdealTriangle& t) {
    std::int64_t h = 0;
    for (const Slope& k : t.v) h += std::abs(k.x()) + k.y();
    return h;
  };
  std::sort(tris.begin(), tris.end(), [&](const IdealTriangle& a, const IdealTriangle& b) {
    const auto ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : b < a;
  });
}

}  // namespace

PeriodicDirectionBall local_ball(const Origami& o, const Slope& center, const Rational& radius,
                                 const Rational& window, const Rational& max_radius) {
  if (radius > max_radius)
    throw Error(ErrorKind::RadiusTooLarge, "ball radius " + radius.to_string() + " above cap " + max_radius.to_string());
  if (!(radius > Rational(0)) || !(radius * 2).is_integer())
    throw Error(ErrorKind::InvalidArgument, "ball radius must be a positive half-integer");
  if (!(window > Rational(0))) throw Error(ErrorKind::InvalidArgument, "window must be positive");

  GeodesicOracle oracle(o);
  PeriodicDirectionBall ball{center, radius, window, {}, {}, {}};
  ball.c_vertices[center] = Rational(0);
  std::vector<Slope> layer{center};
  std::set<BallEdge> edges;
  for (std::int64_t d = 0; Rational(d + 1) <= radius; ++d) {
    std::vector<Slope> next;
    for (const Slope& k : layer) {
      std::vector<IdealTriangle> tris;
      if (k == center) {
        const auto& m = oracle.match(k);
        tris = oracle.triangles_at(k, Rational(0), Rational(oracle.index().at(m.cls).period));
      } else {
        tris = window_around(oracle, k, center, window);
      }
      for (const auto& t : tris) {
        ball.i_vertices.emplace(t, Rational(2 * d + 1, 2));
        for (const Slope& u : t.v) {
          edges.insert({u, t});
          if (ball.c_vertices.emplace(u, Rational(d + 1)).second) next.push_back(u);
        }
      }
    }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  ball.edges.assign(edges.begin(), edges.end());
  // An edge met from one slope may shorten the way to a triangle another
  // slope's window missed, so distances are settled on the collected edges.
  std::map<Slope, std::vector<IdealTriangle>> at_slope;
  std::map<IdealTriangle, std::vector<Slope>> at_triangle;
  for (const auto& e : ball.edges) {
    at_slope[e.slope].push_back(e.triangle);
    at_triangle[e.triangle].push_back(e.slope);
  }
  for (auto& [k, d] : ball.c_vertices) d = Rational(-1);
  for (auto& [t, d] : ball.i_vertices) d = Rational(-1);
  ball.c_vertices[center] = Rational(0);
  std::deque<Slope> q{center};
  while (!q.empty()) {
    const Slope k = q.front();
    q.pop_front();
    const Rational dk = ball.c_vertices[k];
    for (const auto& t : at_slope[k]) {
      if (ball.i_vertices[t] >= Rational(0)) continue;
      ball.i_vertices[t] = dk + Rational(1, 2);
      for (const Slope& u : at_triangle[t])
        if (ball.c_vertices[u] < Rational(0)) ball.c_vertices[u] = dk + 1, q.push_back(u);
    }
  }
  return ball;
}

std::optional<ConnectingPath> shortest_path(GeodesicOracle& oracle, const Slope& k1, const Slope& k2, int cutoff,
                                            const Rational& window) {
  if (k1 == k2) return ConnectingPath{{k1}, {}};
  std::map<Slope, std::pair<Slope, IdealTriangle>> parent;
  std::set<Slope> seen{k1};
  std::vector<Slope> layer{k1};
  for (int d = 0; d < cutoff && !layer.empty(); ++d) {
    std::vector<Slope> next;
    for (const Slope& k : layer) {
      auto tris = window_around(oracle, k, k2, window);
      auto more = window_around(oracle, k, k1, window);
      tris.insert(tris.end(), more.begin(), more.end());
      std::sort(tris.begin(), tris.end());
      tris.erase(std::unique(tris.begin(), tris.end()), tris.end());
      order_for_search(tris);
      for (const auto& t : tris)
        for (const Slope& u : t.v) {
          if (!seen.insert(u).second) continue;
          parent.emplace(u, std::pair{k, t});
          next.push_back(u);
        }
    }
    if (seen.count(k2)) {
      ConnectingPath path;
      for (Slope at = k2; at != k1;) {
        const auto& [from, t] = parent.at(at);
        path.slopes.push_back(at);
        path.triangles.push_back(t);
        at = from;
      }
      path.slopes.push_back(k1);
      std::reverse(path.slopes.begin(), path.slopes.end());
      std::reverse(path.triangles.begin(), path.triangles.end());
      return path;
    }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  return std::nullopt;
}

std::optional<int> graph_distance(const Origami& o, const Slope& k1, const Slope& k2, int cutoff,
                                  const Rational& window) {
  if (cutoff < 1) throw Error(ErrorKind::InvalidArgument, "cutoff must be at least 1");
  GeodesicOracle oracle(o);
  auto p = shortest_path(oracle, k1, k2, cutoff, window);
  if (!p) return std::nullopt;
  return p->length();
}

ConnectingPath connecting_path(const Origami& o, const Slope& k1, const Slope& k2, int cutoff) {
  GeodesicOracle oracle(o);
  auto p = shortest_path(oracle, k1, k2, cutoff);
  if (!p)
    throw Error(ErrorKind::CapExceeded,
                "no path from " + k1.to_string() + " to " + k2.to_string() + " within " + std::to_string(cutoff));
  return *p;
}

std::int64_t QuotientGraph::edge_count() const {
  std::int64_t total = 0;
  for (const auto& e : edges) total += e.multiplicity;
  return total;
}

QuotientGraph quotient_graph(const CoarseFundamentalDomain& domain) {
  QuotientGraph g;
  for (const auto& c : domain.cusp_classes) {
    g.v_vertices.push_back(c.rep);
    g.generation.push_back(c.generation);
  }
  std::map<std::pair<int, int>, int> mult;
  for (std::size_t t = 0; t < domain.triangle_classes.size(); ++t) {
    const auto& tc = domain.triangle_classes[t];
    g.w_vertices.push_back(tc.rep);
    g.stabilizer_order.push_back(tc.stabilizer_order);
    // An order-3 stabilizer permutes the three incidences into one orbit.
    const int count = tc.stabilizer_order == 3 ? 1 : 3;
    for (int i = 0; i < count; ++i) ++mult[{tc.vertex_class[i], static_cast<int>(t)}];
  }
  for (const auto& [key, m] : mult) g.edges.push_back({key.first, key.second, m});

  std::vector<std::vector<int>> adj(g.v_vertices.size());
  std::map<int, std::vector<int>> by_triangle;
  for (const auto& e : g.edges) by_triangle[e.triangle].push_back(e.cusp);
  for (const auto& [t, cs] : by_triangle)
    for (int a : cs)
      for (int b : cs)
        if (a != b) adj[a].push_back(b);
  g.distance.assign(g.v_vertices.size(), -1);
  if (!g.v_vertices.empty()) {
    std::deque<int> q{0};
    g.distance[0] = 0;
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      for (int b : adj[a])
        if (g.distance[b] < 0) g.distance[b] = g.distance[a] + 1, q.push_back(b);
    }
  }
  return g;
}

QuotientGraph quotient_graph(const Origami& o) { return quotient_graph(algorithm_A(o)); }

std::string to_dot(const QuotientGraph& g) {
  std::ostringstream os;
  os << "graph quotient {\n";
  for (std::size_t i = 0; i < g.v_vertices.size(); ++i)
    os << "  v" << i << " [shape=circle,label=\"" << g.v_vertices[i].to_string() << "\"];\n";
  for (std::size_t i = 0; i < g.w_vertices.size(); ++i)
    os << "  w" << i << " [shape=triangle,label=\"" << triangle_label(g.w_vertices[i]) << "\"];\n";
  for (const auto& e : g.edges)
    for (int m = 0; m < e.multiplicity; ++m) os << "  v" << e.cusp << " -- w" << e.triangle << ";\n";
  os << "}\n";
  return os.str();
}

std::string to_json(const QuotientGraph& g) {
  nlohmann::json j;
  j["v"] = nlohmann::json::array();
  for (std::size_t i = 0; i < g.v_vertices.size(); ++i)
    j["v"].push_back({{"slope", g.v_vertices[i].to_string()},
                      {"distance", g.distance[i]},
                      {"generation", g.generation[i]}});
  j["w"] = nlohmann::json::array();
  for (std::size_t i = 0; i < g.w_vertices.size(); ++i)
    j["w"].push_back({{"triangle", triangle_label(g.w_vertices[i])}, {"stabilizer", g.stabilizer_order[i]}});
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back({{"v", e.cusp}, {"w", e.triangle}, {"multiplicity", e.multiplicity}});
  j["summary"] = {{"V", g.v_vertices.size()}, {"W", g.w_vertices.size()}, {"E", g.edge_count()}};
  return j.dump(2);
}

std::string to_dot(const PeriodicDirectionBall& b) {
  std::ostringstream os;
  std::map<Slope, int> sid;
  std::map<IdealTriangle, int> tid;
  os << "graph ball {\n";
  for (const auto& [k, d] : b.c_vertices) {
    const int i = static_cast<int>(sid.size());
    sid[k] = i;
    os << "  k" << i << " [shape=circle,label=\"" << k.to_string() << "\"];\n";
  }
  for (const auto& [t, d] : b.i_vertices) {
    const int i = static_cast<int>(tid.size());
    tid[t] = i;
    os << "  t" << i << " [shape=triangle,label=\"" << triangle_label(t) << "\"];\n";
  }
  for (const auto& e : b.edges) os << "  k" << sid.at(e.slope) << " -- t" << tid.at(e.triangle) << ";\n";
  os << "}\n";
  return os.str();
}

std::string to_json(const PeriodicDirectionBall& b) {
  nlohmann::json j;
  j["center"] = b.center.to_string();
  j["radius"] = b.radius.to_string();
  j["window"] = b.window.to_string();
  j["slopes"] = nlohmann::json::array();
  for (const auto& [k, d] : b.c_vertices) j["slopes"].push_back({{"slope", k.to_string()}, {"distance", d.to_string()}});
  j["triangles"] = nlohmann::json::array();
  for (const auto& [t, d] : b.i_vertices)
    j["triangles"].push_back({{"triangle", triangle_label(t)}, {"distance", d.to_string()}});
  j["edges"] = nlohmann::json::array();
  for (const auto& e : b.edges) j["edges"].push_back({e.slope.to_string(), triangle_label(e.triangle)});
  return j.dump(2);
}

}  // namespace sqt
