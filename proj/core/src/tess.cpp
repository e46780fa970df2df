#include "sqt/tess.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "sqt/error.hpp"

namespace sqt {

GeodesicLine GeodesicLine::of(const Slope& p, const Slope& q) {
  if (p == q) throw Error(ErrorKind::InvalidArgument, "geodesic with equal endpoints " + p.to_string());
  return p < q ? GeodesicLine{p, q} : GeodesicLine{q, p};
}

Rational GeodesicLine::center() const { return (a.value() + b.value()) / 2; }

Rational GeodesicLine::radius2() const {
  Rational r = (b.value() - a.value()) / 2;
  return r * r;
}

std::string GeodesicLine::to_string() const { return "(" + a.to_string() + "," + b.to_string() + ")"; }

Region Region::parse(const std::string& text) {
  std::vector<Rational> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(Rational::parse(part));
  if (v.size() != 4) throw Error(ErrorKind::ParseError, "region needs four values x1,x2,y1,y2: " + text);
  Region r{v[0], v[1], v[2], v[3]};
  if (!(r.y1 > Rational(0)) || !(r.y1 < r.y2) || !(r.x1 < r.x2))
    throw Error(ErrorKind::DegenerateRegion, "region needs x1 < x2 and 0 < y1 < y2: " + text);
  return r;
}

std::string Region::to_string() const {
  return x1.to_string() + "," + x2.to_string() + "," + y1.to_string() + "," + y2.to_string();
}

namespace {

void check_region(const Region& r) {
  if (!(r.y1 > Rational(0)) || !(r.y1 < r.y2) || !(r.x1 < r.x2))
    throw Error(ErrorKind::DegenerateRegion, "degenerate region " + r.to_string());
}

// Closed region meets the geodesic.
bool meets(const GeodesicLine& g, const Region& r) {
  if (g.is_vertical()) {
    Rational c = g.a.value();
    return r.x1 <= c && c <= r.x2;
  }
  const Rational m = g.center(), r2 = g.radius2();
  Rational dx = m < r.x1 ? r.x1 - m : (m > r.x2 ? m - r.x2 : Rational(0));
  Rational near = dx * dx + r.y1 * r.y1;
  Rational far_x = std::max((m - r.x1).abs(), (m - r.x2).abs());
  Rational far = far_x * far_x + r.y2 * r.y2;
  return near <= r2 && r2 <= far;
}

// Sign of the point relative to g: for semicircles + outside, - inside; for
// verticals the sign of x - c.
int side_of(const GeodesicLine& g, const ArrangementPoint& p) {
  if (p.ideal) {
    if (g.has_endpoint(p.at)) return 0;
    if (p.at.is_infinite()) return 1;
    Rational u = p.at.value();
    if (g.is_vertical()) return (u - g.a.value()).sign();
    Rational d = u - g.center();
    return (d * d - g.radius2()).sign();
  }
  if (g.is_vertical()) return (p.x - g.a.value()).sign();
  Rational d = p.x - g.center();
  return (d * d + p.y2 - g.radius2()).sign();
}

int side_of(const GeodesicLine& g, const HPoint& z) {
  if (g.is_vertical()) return (z.x - g.a.value()).sign();
  Rational d = z.x - g.center();
  return (d * d + z.y * z.y - g.radius2()).sign();
}

std::int64_t isqrt_floor(double v) { return v <= 0 ? 0 : static_cast<std::int64_t>(std::floor(std::sqrt(v))) + 1; }

}  // namespace

// ---------------------------------------------------------------------------

const CuspIndex::Match& GeodesicOracle::match(const Slope& k) {
  auto it = matches_.find(k);
  if (it != matches_.end()) return it->second;
  auto m = idx_.classify(k);
  if (!m) {
    idx_.add(k);
    m = idx_.classify(k);
  }
  return matches_.emplace(k, *m).first->second;
}

bool GeodesicOracle::contains(const GeodesicLine& g) { return idx_.is_neighbor(g.b, match(g.a)); }

std::vector<IdealTriangle> GeodesicOracle::triangles_at(const Slope& k, const Rational& lo, const Rational& hi) {
  return idx_.triangles_at(k, match(k), lo, hi);
}

std::vector<IdealTriangle> GeodesicOracle::triangles_on(const GeodesicLine& g) {
  const auto& m = match(g.a);
  const Rational c = m.chart(g.b).value();
  const Rational eps(1, 1000);
  std::vector<IdealTriangle> out;
  for (const auto& t : idx_.triangles_at(g.a, m, c - eps, c + eps))
    if (t.has_vertex(g.b)) out.push_back(t);
  return out;
}

const std::vector<GeodesicLine>& GeodesicOracle::crossing(const GeodesicLine& g) {
  auto it = crossing_.find(g);
  if (it != crossing_.end()) return it->second;
  // In the chart sending g.a to infinity, g is the vertical x = c and a
  // crossing member joins u1 < c < u2 with denominators Y1, Y2 >= 1 and
  // Y1 Y2 (u2 - u1) <= 2n.  Since c - u1 >= 1/(Q Y1) and u2 - c >= 1/(Q Y2),
  // Y1 + Y2 <= 2nQ.
  const std::int64_t n = idx_.origami().n();
  const Matrix2 A = direction_chart(g.a);
  const Matrix2 back = A.inverse();
  const Rational c = A(g.b).value();
  const std::int64_t Q = c.den();
  std::vector<GeodesicLine> out;
  for (std::int64_t y1 = 1; y1 < 2 * n * Q; ++y1) {
    for (std::int64_t y2 = 1; y1 + y2 <= 2 * n * Q; ++y2) {
      const Rational span(2 * n, y1 * y2);
      for (std::int64_t x1 = ((c - span) * y1).ceil(); Rational(x1, y1) < c; ++x1) {
        if (gcd64(x1, y1) != 1) continue;
        const Rational u1(x1, y1);
        const Rational top = u1 + span;
        for (std::int64_t x2 = (c * y2).floor() + 1; Rational(x2, y2) <= top; ++x2) {
          if (gcd64(x2, y2) != 1) continue;
          GeodesicLine eta = GeodesicLine::of(back(Slope::of(u1)), back(Slope::of(Rational(x2, y2))));
          if (contains(eta)) out.push_back(eta);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return crossing_.emplace(g, std::move(out)).first->second;
}

// ---------------------------------------------------------------------------

std::vector<GeodesicLine> geodesics_in_region(const Origami& o, const Region& r) {
  GeodesicOracle oracle(o);
  return geodesics_in_region(oracle, r);
}

std::vector<GeodesicLine> geodesics_in_region(GeodesicOracle& oracle, const Region& r) {
  check_region(r);
  const std::int64_t n = oracle.origami().n();
  std::set<GeodesicLine> out;
  const Slope inf = Slope::infinity();

  // Verticals x = p/q: |det((p, q), (1, 0))| = q <= 2n.
  for (std::int64_t q = 1; q <= 2 * n; ++q)
    for (std::int64_t p = (r.x1 * q).ceil(); Rational(p, q) <= r.x2; ++p) {
      if (gcd64(p, q) != 1) continue;
      GeodesicLine g = GeodesicLine::of(Slope::of(Rational(p, q)), inf);
      if (oracle.contains(g)) out.insert(g);
    }

  // Semicircles over [p1/q1, p2/q2]: the radius |det| / (2 q1 q2) reaches
  // height y1 only if q1 q2 <= n / y1, and the width is at most 2n / (q1 q2).
  const std::int64_t qmax = (Rational(n) / r.y1).floor();
  for (std::int64_t q1 = 1; q1 <= qmax; ++q1) {
    const Rational lo = r.x1 - 2 * n, hi = r.x2 + 2 * n;
    for (std::int64_t p1 = (lo * q1).ceil(); Rational(p1, q1) <= hi; ++p1) {
      if (gcd64(p1, q1) != 1) continue;
      const Rational k1(p1, q1);
      for (std::int64_t q2 = 1; q1 * q2 <= qmax; ++q2) {
        const Rational top = k1 + Rational(2 * n, q1 * q2);
        for (std::int64_t p2 = (k1 * q2).floor() + 1; Rational(p2, q2) <= top; ++p2) {
          if (gcd64(p2, q2) != 1) continue;
          GeodesicLine g = GeodesicLine::of(Slope::of(k1), Slope::of(Rational(p2, q2)));
          if (meets(g, r) && oracle.contains(g)) out.insert(g);
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------

LocateResult locate(const Origami& o, const HPoint& z) {
  GeodesicOracle oracle(o);
  return locate(oracle, z);
}

LocateResult locate(GeodesicOracle& oracle, const HPoint& z) {
  if (!(z.y > Rational(0))) throw Error(ErrorKind::InvalidArgument, "point must lie in the upper half plane");
  std::set<Slope> tried;
  std::map<GeodesicLine, std::set<IdealTriangle>> on_side;
  int boundary_level = -1;
  const double x = z.x.to_double(), y = z.y.to_double();

  for (int level = 0; level < 24; ++level) {
    // Cusps k = p/q with Im(A_k z) = y / ((p - q x)^2 + q^2 y^2) >= 4^-level.
    const double inv_t = std::ldexp(1.0, 2 * level);
    std::vector<Slope> cands;
    if (!tried.count(Slope::infinity())) cands.push_back(Slope::infinity());
    const std::int64_t qmax = isqrt_floor(inv_t / y);
    for (std::int64_t q = 1; q <= qmax; ++q) {
      double rad2 = y * inv_t - double(q) * double(q) * y * y;
      if (rad2 < 0) break;
      double rad = std::sqrt(rad2);
      for (auto p = static_cast<std::int64_t>(std::floor(q * x - rad)) - 1; p <= q * x + rad + 1; ++p) {
        if (gcd64(p, q) != 1) continue;
        Slope k = Slope::of(Rational(p, q));
        if (!tried.count(k)) cands.push_back(k);
      }
    }
    std::set<IdealTriangle> inside;
    for (const Slope& k : cands) {
      tried.insert(k);
      // The chart image of z only picks the window; its exact coordinates
      // outgrow 64 bits, so containment is decided in the original chart.
      const Matrix2 A = direction_chart(k);
      const double cx = double(A.c) * x + double(A.d), cy = double(A.c) * y;
      const double wx = ((double(A.a) * x + double(A.b)) * cx + double(A.a) * y * cy) / (cx * cx + cy * cy);
      const Rational lo(static_cast<std::int64_t>(std::floor(wx * 1000)) - 2, 1000);
      const Rational hi(static_cast<std::int64_t>(std::ceil(wx * 1000)) + 2, 1000);
      for (const auto& t : oracle.triangles_at(k, lo, hi)) {
        bool out = false;
        std::optional<GeodesicLine> on;
        for (int i = 0; i < 3 && !out; ++i) {
          const GeodesicLine g = GeodesicLine::of(t.v[i], t.v[(i + 1) % 3]);
          const int want = side_of(g, ArrangementPoint{true, t.v[(i + 2) % 3], {}, {}});
          const int got = side_of(g, z);
          if (got == 0) on = g;
          else if (got != want) out = true;
        }
        if (out) continue;
        if (on) on_side[*on].insert(t);
        else inside.insert(t);
      }
    }
    if (!inside.empty()) return {true, *inside.begin(), std::nullopt, std::nullopt};
    if (!on_side.empty() && boundary_level < 0) boundary_level = level;
    if (boundary_level >= 0 && level >= boundary_level + 2) {
      const auto& [diag, tris] = *on_side.begin();
      LocateResult res{false, *tris.begin(), std::nullopt, diag};
      // The other half: a triangle whose third vertex lies across the diagonal.
      auto third_side = [&](const IdealTriangle& t) {
        for (const Slope& u : t.v)
          if (!diag.has_endpoint(u)) return side_of(diag, ArrangementPoint{true, u, {}, {}});
        return 0;
      };
      const int s0 = third_side(res.first);
      for (const auto& t : tris)
        if (third_side(t) == -s0) {
          res.second = t;
          break;
        }
      return res;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "no triangle found around the point");
}

// ---------------------------------------------------------------------------

double ArrangementPoint::xd() const {
  if (!ideal) return x.to_double();
  return at.is_infinite() ? 0.0 : at.value().to_double();
}

double ArrangementPoint::yd() const {
  if (!ideal) return std::sqrt(y2.to_double());
  return at.is_infinite() ? HUGE_VAL : 0.0;
}

bool Face::has_boundary_arc() const {
  return std::any_of(edges.begin(), edges.end(), [](const FaceSide& e) { return e.geodesic < 0; });
}

bool Face::contains(const std::vector<GeodesicLine>& gs, const HPoint& z) const {
  for (const auto& e : edges) {
    if (e.geodesic < 0) continue;
    int s = side_of(gs[e.geodesic], z);
    if (e.outside ? s < 0 : s > 0) return false;
  }
  return true;
}

namespace {

// Outgoing direction at a vertex.  Interior vertices: the tangent (a * y, b)
// with a in {-1, 0, 1}; comparisons only need signs since y > 0 is shared.
// Ideal vertices: (group, key) in counterclockwise order.
struct Direction {
  int a = 0;
  Rational b;
  int group = 0;
  Rational key;
};

bool ccw_less_interior(const Direction& d1, const Direction& d2) {
  auto half = [](const Direction& d) { return (d.b > Rational(0) || (d.b == Rational(0) && d.a > 0)) ? 0 : 1; };
  int h1 = half(d1), h2 = half(d2);
  if (h1 != h2) return h1 < h2;
  Rational cr = Rational(d1.a) * d2.b - Rational(d2.a) * d1.b;
  return cr > Rational(0);
}

struct HalfEdge {
  int from, to;
  int curve;     // geodesic index or -1
  bool forward;  // along increasing parameter (x for semicircles, y for verticals, ccw for the boundary)
  Direction dir;
};

class Arrangement {
 public:
  Arrangement(const std::vector<GeodesicLine>& gs) : gs_(gs) { build(); }

  std::vector<Face> faces() const;

 private:
  int point(const ArrangementPoint& p) {
    auto [it, fresh] = ids_.emplace(p, static_cast<int>(points_.size()));
    if (fresh) points_.push_back(p);
    return it->second;
  }

  void build();
  Direction direction(int from, int curve, bool forward, int to) const;

  const std::vector<GeodesicLine>& gs_;
  std::map<ArrangementPoint, int> ids_;
  std::vector<ArrangementPoint> points_;
  std::vector<HalfEdge> half_;
  std::vector<std::vector<int>> out_;  // ccw sorted outgoing half-edges per point
  std::vector<int> pos_;               // position of each half-edge in out_[from]
};

ArrangementPoint ideal_point(const Slope& s) { return {true, s, {}, {}}; }

void Arrangement::build() {
  const int G = static_cast<int>(gs_.size());
  // Parameter along each geodesic: x for semicircles; y^2 for verticals with
  // the point at infinity last.
  using Param = std::pair<int, Rational>;
  std::vector<std::vector<std::pair<Param, int>>> along(G);
  std::set<Slope> ideals{Slope::infinity()};
  for (int i = 0; i < G; ++i) {
    const auto& g = gs_[i];
    ideals.insert(g.a);
    ideals.insert(g.b);
    if (g.is_vertical()) {
      along[i].push_back({{0, Rational(0)}, point(ideal_point(g.a))});
      along[i].push_back({{1, Rational(0)}, point(ideal_point(g.b))});
    } else {
      along[i].push_back({{0, g.a.value()}, point(ideal_point(g.a))});
      along[i].push_back({{0, g.b.value()}, point(ideal_point(g.b))});
    }
  }
  for (int i = 0; i < G; ++i)
    for (int j = i + 1; j < G; ++j) {
      const auto &g = gs_[i], &h = gs_[j];
      if (g.is_vertical() && h.is_vertical()) continue;
      if (g.has_endpoint(h.a) || g.has_endpoint(h.b)) continue;
      Rational x, y2;
      if (g.is_vertical() || h.is_vertical()) {
        const auto& v = g.is_vertical() ? g : h;
        const auto& c = g.is_vertical() ? h : g;
        x = v.a.value();
        if (!(c.a.value() < x && x < c.b.value())) continue;
        Rational d = x - c.center();
        y2 = c.radius2() - d * d;
      } else {
        // Endpoints must interleave.
        Rational a1 = g.a.value(), b1 = g.b.value(), a2 = h.a.value(), b2 = h.b.value();
        bool inter = (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1);
        if (!inter) continue;
        Rational m1 = g.center(), m2 = h.center();
        x = (g.radius2() - h.radius2() + m2 * m2 - m1 * m1) / (2 * (m2 - m1));
        Rational d = x - m1;
        y2 = g.radius2() - d * d;
      }
      int id = point({false, {}, x, y2});
      along[i].push_back({g.is_vertical() ? Param{0, y2} : Param{0, x}, id});
      along[j].push_back({h.is_vertical() ? Param{0, y2} : Param{0, x}, id});
    }

  auto add_edge = [&](int a, int b, int curve) {
    half_.push_back({a, b, curve, true, {}});
    half_.push_back({b, a, curve, false, {}});
  };
  for (int i = 0; i < G; ++i) {
    auto& l = along[i];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end(), [](auto& p, auto& q) { return p.second == q.second; }), l.end());
    for (std::size_t k = 0; k + 1 < l.size(); ++k) add_edge(l[k].second, l[k + 1].second, i);
  }
  std::vector<Slope> ring(ideals.begin(), ideals.end());  // finite ascending, infinity last
  for (std::size_t k = 0; k < ring.size(); ++k)
    add_edge(point(ideal_point(ring[k])), point(ideal_point(ring[(k + 1) % ring.size()])), -1);

  out_.assign(points_.size(), {});
  for (std::size_t h = 0; h < half_.size(); ++h) {
    half_[h].dir = direction(half_[h].from, half_[h].curve, half_[h].forward, half_[h].to);
    out_[half_[h].from].push_back(static_cast<int>(h));
  }
  pos_.assign(half_.size(), 0);
  for (std::size_t p = 0; p < points_.size(); ++p) {
    auto& o = out_[p];
    if (points_[p].ideal) {
      std::sort(o.begin(), o.end(), [&](int u, int v) {
        return std::pair(half_[u].dir.group, half_[u].dir.key) < std::pair(half_[v].dir.group, half_[v].dir.key);
      });
    } else {
      std::sort(o.begin(), o.end(), [&](int u, int v) { return ccw_less_interior(half_[u].dir, half_[v].dir); });
    }
    for (std::size_t k = 0; k < o.size(); ++k) pos_[o[k]] = static_cast<int>(k);
  }
}

Direction Arrangement::direction(int from, int curve, bool forward, int to) const {
  const auto& p = points_[from];
  Direction d;
  if (!p.ideal) {
    const auto& g = gs_[curve];
    if (g.is_vertical()) {
      d.a = 0;
      d.b = forward ? Rational(1) : Rational(-1);
    } else {
      Rational s = g.center() - p.x;
      d.a = forward ? 1 : -1;
      d.b = forward ? s : -s;
    }
    return d;
  }
  if (p.at.is_infinite()) {
    // Boundary toward the smallest finite point, verticals by foot, boundary
    // toward the largest.
    if (curve < 0) {
      d.group = forward ? 0 : 2;
    } else {
      d.group = 1;
      d.key = gs_[curve].a.value();
    }
    return d;
  }
  // Finite boundary point u: boundary to the right, semicircles to the right
  // by far end, the vertical, semicircles to the left by far end, boundary
  // to the left.
  if (curve < 0) {
    d.group = forward ? 0 : 4;
    return d;
  }
  const auto& g = gs_[curve];
  if (g.is_vertical()) {
    d.group = 2;
    return d;
  }
  const auto& q = points_[to];
  (void)q;
  const Slope far = g.a == p.at ? g.b : g.a;
  d.group = far.value() > p.at.value() ? 1 : 3;
  d.key = far.value();
  return d;
}

std::vector<Face> Arrangement::faces() const {
  std::vector<Face> out;
  std::vector<char> seen(half_.size(), 0);
  for (std::size_t start = 0; start < half_.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    int h = static_cast<int>(start);
    while (!seen[h]) {
      seen[h] = 1;
      cycle.push_back(h);
      const int twin = h ^ 1;
      const auto& o = out_[half_[h].to];
      h = o[(pos_[twin] + o.size() - 1) % o.size()];
    }
    const bool outer = std::all_of(cycle.begin(), cycle.end(),
                                   [&](int e) { return half_[e].curve < 0 && !half_[e].forward; });
    if (outer) continue;
    Face f;
    for (int e : cycle) {
      f.vertices.push_back(points_[half_[e].from]);
      const int c = half_[e].curve;
      bool outside = false;
      if (c >= 0) outside = gs_[c].is_vertical() ? !half_[e].forward : half_[e].forward;
      f.edges.push_back({c, outside});
    }
    for (std::size_t i = 0; i < f.edges.size(); ++i)
      if (f.edges[i].geodesic != f.edges[(i + f.edges.size() - 1) % f.edges.size()].geodesic ||
          f.edges[i].geodesic < 0)
        ++f.sides;
    if (f.sides == 0) f.sides = static_cast<int>(f.edges.size() > 0);
    out.push_back(std::move(f));
  }
  return out;
}

bool point_in_region(const ArrangementPoint& p, const Region& r) {
  return !p.ideal && r.x1 <= p.x && p.x <= r.x2 && r.y1 * r.y1 <= p.y2 && p.y2 <= r.y2 * r.y2;
}

// Edge of a face (arc of geodesic g between p and q) meets the region.
bool edge_meets(const GeodesicLine& g, const ArrangementPoint& p, const ArrangementPoint& q, const Region& r) {
  const Rational Y1 = r.y1 * r.y1, Y2 = r.y2 * r.y2;
  if (g.is_vertical()) {
    Rational c = g.a.value();
    if (c < r.x1 || c > r.x2) return false;
    auto h2 = [](const ArrangementPoint& a) -> std::optional<Rational> {
      if (!a.ideal) return a.y2;
      if (a.at.is_infinite()) return std::nullopt;
      return Rational(0);
    };
    auto lo = h2(p), hi = h2(q);
    if (!lo || (hi && *hi < *lo)) std::swap(lo, hi);
    // lo is finite here
    return (!hi || *hi >= Y1) && *lo <= Y2;
  }
  Rational xa = p.ideal ? p.at.value() : p.x, xb = q.ideal ? q.at.value() : q.x;
  if (xb < xa) std::swap(xa, xb);
  Rational L = std::max(xa, r.x1), U = std::min(xb, r.x2);
  if (L > U) return false;
  const Rational m = g.center(), r2 = g.radius2();
  auto h = [&](const Rational& x) { return r2 - (x - m) * (x - m); };
  Rational lo = std::min(h(L), h(U)), hi = std::max(h(L), h(U));
  if (L <= m && m <= U) hi = r2;
  return hi >= Y1 && lo <= Y2;
}

bool face_meets(const Face& f, const std::vector<GeodesicLine>& gs, const Region& r) {
  for (const auto& p : f.vertices)
    if (point_in_region(p, r)) return true;
  const std::size_t m = f.vertices.size();
  for (std::size_t i = 0; i < m; ++i)
    if (f.edges[i].geodesic >= 0 && edge_meets(gs[f.edges[i].geodesic], f.vertices[i], f.vertices[(i + 1) % m], r))
      return true;
  return f.contains(gs, HPoint{r.x1, r.y1});
}

// Interior angle at an interior vertex between the edges to its neighbours.
double interior_angle(const GeodesicLine& g_in, const GeodesicLine& g_out, const ArrangementPoint& p,
                      const ArrangementPoint& prev, const ArrangementPoint& next) {
  const double y = std::sqrt(p.y2.to_double()), x = p.x.to_double();
  auto tangent = [&](const GeodesicLine& g, const ArrangementPoint& toward) {
    double tx, ty;
    if (g.is_vertical()) {
      tx = 0;
      ty = (toward.ideal ? (toward.at.is_infinite() ? 1.0 : -1.0) : (toward.y2 > p.y2 ? 1.0 : -1.0));
    } else {
      const double m = g.center().to_double();
      const double sgn = toward.xd() > x ? 1.0 : -1.0;
      tx = sgn * y;
      ty = sgn * (m - x);
    }
    return std::pair{tx, ty};
  };
  auto [ax, ay] = tangent(g_in, prev);
  auto [bx, by] = tangent(g_out, next);
  return std::atan2(std::abs(ax * by - ay * bx), ax * bx + ay * by);
}

}  // namespace

TessellationPatch faces_in_region(const Origami& o, const Region& r) {
  check_region(r);
  GeodesicOracle oracle(o);
  TessellationPatch patch;
  patch.region = r;
  patch.geodesics = geodesics_in_region(oracle, r);
  std::set<IdealTriangle> tris;
  for (const auto& g : patch.geodesics)
    for (const auto& t : oracle.triangles_on(g)) tris.insert(t);
  patch.triangles.assign(tris.begin(), tris.end());

  const auto& gs = patch.geodesics;
  Arrangement arr(gs);
  for (auto& f : arr.faces()) {
    if (!face_meets(f, gs, r)) continue;
    const std::size_t m = f.vertices.size();
    if (!f.has_boundary_arc()) {
      bool cut = false;
      // Members crossing a side and entering the face.
      std::set<int> sides;
      for (const auto& e : f.edges) sides.insert(e.geodesic);
      for (int s : sides) {
        for (const auto& eta : oracle.crossing(gs[s])) {
          bool pos = false, neg = false;
          for (const auto& p : f.vertices) {
            int sg = side_of(eta, p);
            pos |= sg > 0;
            neg |= sg < 0;
          }
          if (pos && neg) {
            cut = true;
            break;
          }
        }
        if (cut) break;
      }
      // Members leaving an ideal vertex into the face.
      for (std::size_t i = 0; i < m && !cut; ++i) {
        const auto& v = f.vertices[i];
        if (!v.ideal) continue;
        const auto& g_in = gs[f.edges[(i + m - 1) % m].geodesic];
        const auto& g_out = gs[f.edges[i].geodesic];
        const Slope p = g_in.a == v.at ? g_in.b : g_in.a;
        const Slope q = g_out.a == v.at ? g_out.b : g_out.a;
        const Matrix2 A = direction_chart(v.at);
        Rational c1 = A(p).value(), c2 = A(q).value();
        if (c2 < c1) std::swap(c1, c2);
        for (const auto& t : oracle.triangles_at(v.at, c1, c2))
          for (const Slope& u : t.v) {
            if (u == v.at) continue;
            Rational cu = A(u).value();
            if (c1 < cu && cu < c2) cut = true;
          }
      }
      f.complete = !cut;
    }
    if (f.complete) {
      double angles = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const auto& v = f.vertices[i];
        if (v.ideal) continue;
        angles += interior_angle(gs[f.edges[(i + m - 1) % m].geodesic], gs[f.edges[i].geodesic], v,
                                 f.vertices[(i + m - 1) % m], f.vertices[(i + 1) % m]);
      }
      // Straight-through vertices contribute pi to both terms.
      f.area = (static_cast<double>(m) - 2) * std::numbers::pi - angles;
    }
    patch.faces.push_back(std::move(f));
  }
  return patch;
}

}  // namespace sqt
