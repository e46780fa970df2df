#include "sqt/triangles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "sqt/error.hpp"

namespace sqt {

IdealTriangle IdealTriangle::of(Slope a, Slope b, Slope c) {
  IdealTriangle t{{a, b, c}};
  std::sort(t.v.begin(), t.v.end());
  return t;
}

std::string IdealTriangle::to_string() const {
  return "{" + v[0].to_string() + "," + v[1].to_string() + "," + v[2].to_string() + "}";
}

std::string_view to_string(Rejection r) {
  switch (r) {
    case Rejection::None: return "Accepted";
    case Rejection::AreaExceeded: return "AreaExceeded";
    case Rejection::ConeInside: return "ConeInside";
    case Rejection::MarkedPointInside: return "MarkedPointInside";
    case Rejection::MarkedPointOnSide: return "MarkedPointOnSide";
    case Rejection::ThirdSideBlocked: return "ThirdSideBlocked";
    case Rejection::EndpointNotMarked: return "EndpointNotMarked";
    case Rejection::SidesNotAdjacent: return "SidesNotAdjacent";
  }
  return "Unknown";
}

namespace {

using Cell = std::pair<std::int64_t, std::int64_t>;

struct PlaneTriangle {
  std::array<Vec2, 3> p;  // counterclockwise

  // Open unit cell with lower-left corner c meets the open triangle.
  bool meets_cell(Cell c) const {
    std::array<Vec2, 4> q{Vec2{c.first, c.second}, Vec2{c.first + 1, c.second},
                          Vec2{c.first + 1, c.second + 1}, Vec2{c.first, c.second + 1}};
    auto separated = [&](Vec2 axis) {
      auto dot = [&](Vec2 a) { return axis.x * a.x + axis.y * a.y; };
      std::int64_t tmin = dot(p[0]), tmax = tmin, smin = dot(q[0]), smax = smin;
      for (const auto& a : p) tmin = std::min(tmin, dot(a)), tmax = std::max(tmax, dot(a));
      for (const auto& a : q) smin = std::min(smin, dot(a)), smax = std::max(smax, dot(a));
      return tmax <= smin || smax <= tmin;
    };
    if (separated({1, 0}) || separated({0, 1})) return false;
    for (int i = 0; i < 3; ++i) {
      Vec2 e = p[(i + 1) % 3] - p[i];
      if (separated({-e.y, e.x})) return false;
    }
    return true;
  }

  // Edge functions; all positive in the open interior.
  std::array<std::int64_t, 3> edges(Vec2 x) const {
    return {cross(p[1] - p[0], x - p[0]), cross(p[2] - p[1], x - p[1]), cross(p[0] - p[2], x - p[2])};
  }
};

Corner corner_of(Cell c, Vec2 pt) {
  bool right = pt.x != c.first;
  bool top = pt.y != c.second;
  if (right) return top ? Corner::TR : Corner::BR;
  return top ? Corner::TL : Corner::BL;
}

}  // namespace

EmbedResult embed_check(const Origami& o, int base, Vec2 v1, Vec2 v2) {
  const std::int64_t det = cross(v1, v2);
  if (det == 0) throw Error(ErrorKind::InvalidArgument, "degenerate triangle: parallel sides");
  EmbedResult out;
  if (std::abs(det) > 2 * static_cast<std::int64_t>(o.n())) {
    out.reason = Rejection::AreaExceeded;
    return out;
  }
  if (!o.marked_at(base)) {
    out.reason = Rejection::EndpointNotMarked;
    return out;
  }
  const Vec2 origin{0, 0};
  PlaneTriangle tri{det > 0 ? std::array<Vec2, 3>{origin, v1, v2} : std::array<Vec2, 3>{origin, v2, v1}};

  // Breadth-first development from the cell containing the start of the bisector.
  const Vec2 u = v1 + v2;
  const int base_u = ray_rotate(o, base, v1, u);
  Cell start{u.x < 0 ? -1 : 0, u.y < 0 ? -1 : 0};
  std::map<Cell, int> dev;
  dev[start] = ray_start_square(o, base_u, u);
  std::deque<Cell> queue{start};
  bool consistent = true;
  while (!queue.empty()) {
    Cell c = queue.front();
    queue.pop_front();
    const int s = dev[c];
    const std::array<std::pair<Cell, int>, 4> nbrs{{{{c.first + 1, c.second}, o.right(s)},
                                                    {{c.first - 1, c.second}, o.left(s)},
                                                    {{c.first, c.second + 1}, o.up(s)},
                                                    {{c.first, c.second - 1}, o.down(s)}}};
    for (const auto& [nc, ns] : nbrs) {
      if (!tri.meets_cell(nc)) continue;
      auto it = dev.find(nc);
      if (it == dev.end()) {
        dev.emplace(nc, ns);
        queue.push_back(nc);
      } else if (it->second != ns) {
        consistent = false;
      }
    }
  }
  if (!consistent) {
    out.reason = Rejection::ConeInside;
    return out;
  }

  // Classify lattice points of the closed triangle through any cell touching them.
  std::map<Vec2, CornerRef> points;
  for (const auto& [c, s] : dev) {
    for (std::int64_t dx = 0; dx <= 1; ++dx)
      for (std::int64_t dy = 0; dy <= 1; ++dy) {
        Vec2 pt{c.first + dx, c.second + dy};
        points.emplace(pt, CornerRef{s, corner_of(c, pt)});
      }
  }
  bool inside = false, on_side = false, third = false, endpoint = false;
  for (const auto& [pt, ref] : points) {
    auto e = tri.edges(pt);
    if (e[0] < 0 || e[1] < 0 || e[2] < 0) continue;
    if (!o.vertices()[o.vertex_at(ref)].marked) continue;
    int zeros = (e[0] == 0) + (e[1] == 0) + (e[2] == 0);
    if (zeros == 0) {
      inside = true;
    } else if (zeros == 2) {
      continue;  // a vertex
    } else {
      // Which side: the side of the ccw triangle with zero edge function.
      int idx = e[0] == 0 ? 0 : (e[1] == 0 ? 1 : 2);
      Vec2 a = tri.p[idx], b = tri.p[(idx + 1) % 3];
      bool through_origin = a == origin || b == origin;
      (through_origin ? on_side : third) = true;
    }
  }
  for (Vec2 corner : {v1, v2}) {
    auto it = points.find(corner);
    if (it == points.end() || !o.vertices()[o.vertex_at(it->second)].marked) endpoint = true;
  }
  if (inside) {
    out.reason = Rejection::MarkedPointInside;
  } else if (on_side) {
    out.reason = Rejection::MarkedPointOnSide;
  } else if (endpoint) {
    out.reason = Rejection::EndpointNotMarked;
  } else if (third) {
    out.reason = Rejection::ThirdSideBlocked;
  }
  if (out.reason != Rejection::None) return out;

  // Oriented key of the side leaving lattice point p along w, read off the development.
  auto oriented_key = [&](Vec2 p, Vec2 w) {
    Vec2 d = primitive(w);
    Cell c{p.x + (d.x < 0 ? -1 : 0), p.y + (d.y < 0 ? -1 : 0)};
    int sq;
    auto it = dev.find(c);
    if (it != dev.end()) {
      sq = it->second;
    } else if (d.y == 0) {
      sq = o.up(dev.at({c.first, c.second - 1}));
    } else {
      sq = o.right(dev.at({c.first - 1, c.second}));
    }
    return SideKey{ray_base_from_cell(o, sq, d), w};
  };

  EmbeddedTriangle t;
  t.base = base;
  t.v1 = v1;
  t.v2 = v2;
  const auto& p = tri.p;
  t.side_keys = {oriented_key(p[0], p[1] - p[0]), oriented_key(p[1], p[2] - p[1]), oriented_key(p[2], p[0] - p[2])};
  auto first = std::min_element(t.side_keys.begin(), t.side_keys.end());
  std::rotate(t.side_keys.begin(), first, t.side_keys.end());
  t.development.reserve(dev.size());
  for (const auto& [c, s] : dev) t.development.push_back({c.first, c.second, s});
  out.triangle = std::move(t);
  return out;
}

EmbedResult embed_check(const Origami& o, const SaddleConnection& s1, const SaddleConnection& s2) {
  if (o.vertex_at(s1.start_base) != o.vertex_at(s2.start_base) ||
      ray_rotate(o, s1.start_base, s1.holonomy, s2.holonomy) != s2.start_base) {
    EmbedResult r;
    r.reason = Rejection::SidesNotAdjacent;
    return r;
  }
  return embed_check(o, s1.start_base, s1.holonomy, s2.holonomy);
}

EmbeddedTriangle canonical_triangle_over(const Origami& o, const SaddleConnection& s0) {
  if (s0.holonomy.y != 0) throw Error(ErrorKind::NotHorizontal, "saddle connection is not horizontal");
  const SaddleConnection s = s0.holonomy.x > 0 ? s0 : s0.reversed();
  const std::int64_t len = s.holonomy.x;
  std::vector<int> row(static_cast<std::size_t>(len));
  row[0] = s.start_base;
  for (std::int64_t j = 1; j < len; ++j) row[j] = o.right(row[j - 1]);
  for (std::int64_t m = 1; m <= o.n(); ++m) {
    // row holds the squares of height m - 1 over s; look at the line y = m.
    auto marked = [&](std::int64_t x) {
      CornerRef ref = x < len ? CornerRef{row[x], Corner::TL} : CornerRef{row[len - 1], Corner::TR};
      return o.vertices()[o.vertex_at(ref)].marked;
    };
    std::optional<std::int64_t> apex;
    for (std::int64_t x = 1; x < len && !apex; ++x)
      if (marked(x)) apex = x;
    if (!apex && marked(len)) apex = len;
    if (!apex && marked(0)) apex = 0;
    if (apex) {
      EmbedResult r = embed_check(o, s.start_base, s.holonomy, Vec2{*apex, m});
      if (!r.accepted()) {
        throw Error(ErrorKind::InvalidArgument,
                    "triangle over horizontal connection rejected: " + std::string(to_string(r.reason)));
      }
      return *r.triangle;
    }
    for (auto& sq : row) sq = o.up(sq);
  }
  throw Error(ErrorKind::InvalidArgument, "no marked point above horizontal connection");
}

std::vector<TriangleWitness> horizontal_triangles(const Origami& o, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "empty slope window");
  std::map<IdealTriangle, TriangleWitness> found;
  const std::int64_t two_n = 2 * static_cast<std::int64_t>(o.n());
  for (const SaddleConnection& s : horizontal_saddle_connections(o)) {
    const std::int64_t len = s.holonomy.x;
    for (std::int64_t m = 1; m * len <= two_n; ++m) {
      // Apex above at (wx, m): finite vertices (wx - len)/m and wx/m.
      // Apex below at (wx, -m): finite vertices -wx/m and (len - wx)/m.
      const Rational mm(m);
      std::int64_t above_lo = (lo * mm).floor() + 1;
      std::int64_t above_hi = (hi * mm + Rational(len)).ceil() - 1;
      std::int64_t below_lo = (-hi * mm).floor() + 1;
      std::int64_t below_hi = (Rational(len) - lo * mm).ceil() - 1;
      for (int side = 0; side < 2; ++side) {
        std::int64_t a = side == 0 ? above_lo : below_lo;
        std::int64_t b = side == 0 ? above_hi : below_hi;
        for (std::int64_t wx = a; wx <= b; ++wx) {
          Vec2 apex{wx, side == 0 ? m : -m};
          EmbedResult r = embed_check(o, s.start_base, s.holonomy, apex);
          if (!r.accepted()) continue;
          IdealTriangle ideal = r.triangle->ideal();
          found.emplace(ideal, TriangleWitness{ideal, Matrix2::identity(), std::move(*r.triangle)});
        }
      }
    }
  }
  std::vector<TriangleWitness> out;
  for (auto& [k, w] : found) out.push_back(std::move(w));
  return out;
}

std::vector<TriangleWitness> triangles_with_vertex(const Origami& o, const Slope& k, const Rational& lo,
                                                   const Rational& hi) {
  Matrix2 chart = direction_chart(k);
  Origami normalized = apply_matrix(o, chart);
  std::vector<TriangleWitness> out = horizontal_triangles(normalized, lo, hi);
  Matrix2 back = chart.inverse();
  for (auto& w : out) {
    w.chart = chart;
    w.ideal = w.ideal.transformed(back);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.ideal < b.ideal; });
  return out;
}

std::vector<EmbeddedTriangle> triangles_up_to(const Origami& o, const Rational& len2) {
  std::vector<SaddleConnection> scs = saddle_connections_up_to(o, len2);
  std::set<Vec2> directions;
  for (const auto& sc : scs) directions.insert(sc.holonomy);
  std::map<std::array<SideKey, 3>, EmbeddedTriangle> found;
  for (const auto& s1 : scs) {
    for (const Vec2& v2 : directions) {
      if (cross(s1.holonomy, v2) <= 0) continue;
      if (Rational((v2 - s1.holonomy).norm2()) > len2) continue;
      EmbedResult r = embed_check(o, s1.start_base, s1.holonomy, v2);
      if (!r.accepted()) continue;
      found.emplace(r.triangle->side_keys, std::move(*r.triangle));
    }
  }
  std::vector<EmbeddedTriangle> out;
  for (auto& [k, t] : found) out.push_back(std::move(t));
  return out;
}

}  // namespace sqt
