// Acceptance run: one PASS/FAIL line per criterion.  Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "sqt/error.hpp"
#include "sqt/flatgeom.hpp"
#include "sqt/graph.hpp"
#include "sqt/tess.hpp"
#include "sqt/triangles.hpp"
#include "sqt/veech.hpp"
#include "surfaces.hpp"

using namespace sqt;
using namespace sqt::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " [failed: " << what << "]";
    }
  }
};

// Closed rectangle meets the geodesic (independent of the library's test).
bool meets(const Slope& a, const Slope& b, const Region& r) {
  if (b.is_infinite()) return r.x1 <= a.value() && a.value() <= r.x2;
  const Rational lo = a.value(), hi = b.value(), m = (lo + hi) / 2, rad = (hi - lo) / 2;
  auto h2 = [&](const Rational& x) { return rad * rad - (x - m) * (x - m); };
  const Rational L = std::max(lo, r.x1), U = std::min(hi, r.x2);
  if (L > U) return false;
  Rational top = std::max(h2(L), h2(U)), bottom = std::min(h2(L), h2(U));
  if (L <= m && m <= U) top = rad * rad;
  return top >= r.y1 * r.y1 && bottom <= r.y2 * r.y2;
}

// Farey edges meeting r, from the Stern-Brocot tree under each unit interval.
// Children of an edge have radius at most half of it, so the recursion stops
// once the radius drops below y1.
std::set<GeodesicLine> stern_brocot(const Region& r) {
  std::set<GeodesicLine> out;
  std::function<void(std::int64_t, std::int64_t, std::int64_t, std::int64_t)> go =
      [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
        if (Rational(1, 2 * b * d) < r.y1) return;
        const Slope p = Slope::of(Rational(a, b)), q = Slope::of(Rational(c, d));
        if (meets(p, q, r)) out.insert(GeodesicLine::of(p, q));
        go(a, b, a + c, b + d);
        go(a + c, b + d, c, d);
      };
  for (std::int64_t k = r.x1.floor() - 1; k <= r.x2.ceil(); ++k) {
    go(k, 1, k + 1, 1);
    const Slope v = Slope::of(Rational(k));
    if (meets(v, Slope::infinity(), r)) out.insert(GeodesicLine::of(v, Slope::infinity()));
  }
  return out;
}

std::set<std::array<Vec2, 3>> holonomy_triples(const std::vector<EmbeddedTriangle>& ts) {
  std::set<std::array<Vec2, 3>> out;
  for (const auto& t : ts) {
    auto s = t.sides();
    if (t.det() < 0) s = {-s[2], -s[1], -s[0]};
    std::array<Vec2, 3> best = s;
    for (int r = 1; r < 3; ++r) best = std::min(best, std::array<Vec2, 3>{s[r], s[(r + 1) % 3], s[(r + 2) % 3]});
    out.insert(best);
  }
  return out;
}

int side(const Slope& a, const Slope& b, const Rational& x, const Rational& y2) {
  if (a.is_infinite() || b.is_infinite()) return (x - (a.is_infinite() ? b : a).value()).sign();
  const Rational m = (a.value() + b.value()) / 2, rad = (a.value() - b.value()) / 2;
  return ((x - m) * (x - m) + y2 - rad * rad).sign();
}

bool closed_triangle_contains(const IdealTriangle& t, const HPoint& z) {
  for (int i = 0; i < 3; ++i) {
    const Slope &a = t.v[i], &b = t.v[(i + 1) % 3], &c = t.v[(i + 2) % 3];
    const int want = c.is_infinite() ? 1 : side(a, b, c.value(), Rational(0));
    const int got = side(a, b, z.x, z.y * z.y);
    if (got != 0 && got != want) return false;
  }
  return true;
}

Slope random_slope(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  for (;;) {
    Vec2 v{d(rng), d(rng)};
    if (!v.is_zero() && content(v) == 1) return Slope::of(v);
  }
}

std::vector<Word> generator_words(const Origami& o) {
  std::vector<Word> w;
  for (const auto& g : algorithm_B(o).generators) w.push_back(g.word);
  return w;
}

void torus_golden(Outcome& r) {
  const auto q = quotient_graph(T1());
  r.expect(q.v_vertices.size() == 1 && q.w_vertices.size() == 1 && q.edge_count() == 1, "quotient (1,1,1)");
  r.expect(oracle_orbit(T1()).index == 1, "oracle index 1");
  const auto vol = volume_report(T1());
  r.expect(vol.bound_ok && vol.volume_over_pi == Rational(1, 3) && vol.triangle_classes == 1, "volume pi/3 <= pi");
  r.expect(algorithm_A(T1()).d1 == 0, "d1 = 0");
  const auto ce = coset_enumeration(generator_words(T1()));
  r.expect(ce.bounded && ce.index == 1, "generators give PSL(2,Z)");
  r.notes << " V=" << q.v_vertices.size() << " W=" << q.w_vertices.size() << " E=" << q.edge_count();
}

void farey(Outcome& r) {
  // The first region is the one asked for; the second is a denser check.
  for (const char* text : {"0,1,1/2,2", "-2,3,1/40,2"}) {
    const Region region = Region::parse(text);
    const auto gs = geodesics_in_region(T1(), region);
    for (const auto& g : gs) {
      const Vec2 a = g.a.vector(), b = g.b.vector();
      r.expect(std::abs(cross(a, b)) == 1, "unimodular " + g.to_string());
    }
    const std::set<GeodesicLine> got(gs.begin(), gs.end());
    r.expect(got == stern_brocot(region), std::string("equals Stern-Brocot enumeration on ") + text);
    r.notes << " " << text << ": " << gs.size() << " edges";
  }
}

void covering(Outcome& r) {
  for (const char* text : {"0,1,1/2,2", "-1,2,1/6,2"}) {
    const Region region = Region::parse(text);
    r.expect(geodesics_in_region(L3(), region) == geodesics_in_region(T1(), region),
             std::string("L3 geodesics on ") + text);
  }
  r.expect(holonomy_triples(triangles_up_to(O2(), Rational(8))) == holonomy_triples(triangles_up_to(T1(), Rational(8))),
           "O2 triangle holonomies");
}

void index_match(Outcome& r) {
  for (const auto& [name, o] : {std::pair{"L3", L3()}, std::pair{"W4", W4()}}) {
    const auto index = oracle_orbit(o).index;
    const auto edges = quotient_graph(o).edge_count();
    const auto ce = coset_enumeration(generator_words(o));
    r.notes << " " << name << ": index=" << index << " E=" << edges << " cosets=" << (ce.bounded ? ce.index : -1);
    r.expect(edges == index, std::string(name) + " edge count = index");
    r.expect(ce.bounded && ce.index == index, std::string(name) + " generator index = index");
  }
}

void figure(Outcome& r) {
  r.expect(cylinder_decomposition(W4(), Slope::infinity()).cylinders.size() == 1, "one horizontal cylinder");
  const auto index = oracle_orbit(W4()).index;
  r.expect(index > 1, "index > 1");
  const auto patch = faces_in_region(W4(), Region::parse("0,1,1/4,2"));
  const std::string svg = render_svg(patch, Model::Disk);
  std::size_t paths = 0;
  for (auto p = svg.find("<path"); p != std::string::npos; p = svg.find("<path", p + 1)) ++paths;
  r.expect(svg.rfind("<svg", 0) == 0 && svg.find("</svg>") != std::string::npos && paths == patch.geodesics.size(),
           "valid drawing");
  int complete = 0;
  for (const auto& f : patch.faces) {
    if (!f.complete) continue;
    ++complete;
    r.expect(f.area && *f.area <= std::numbers::pi + 1e-9, "complete face area <= pi");
  }
  r.expect(complete > 0, "some complete face");
  r.notes << " index=" << index << " geodesics=" << patch.geodesics.size() << " complete faces=" << complete;
}

void properties(Outcome& r) {
  std::mt19937_64 rng(2024);
  const std::vector<std::pair<const char*, Origami>> surfaces{{"T1", T1()}, {"L3", L3()}, {"W4", W4()}};

  for (const auto& [name, o] : surfaces)
    for (const auto& t : triangles_up_to(o, Rational(50))) {
      auto s = t.sides();
      const bool closed = s[0].x + s[1].x + s[2].x == 0 && s[0].y + s[1].y + s[2].y == 0;
      if (!closed || t.det() <= 0 || t.det() > 2 * o.n()) {
        r.expect(false, std::string("embedding invariants on ") + name);
        break;
      }
    }

  for (const auto& [name, o] : surfaces) {
    const auto b = local_ball(o, Slope::infinity(), Rational(2));
    std::map<IdealTriangle, int> deg;
    bool ok = true;
    for (const auto& e : b.edges) {
      ok = ok && e.triangle.has_vertex(e.slope) && b.c_vertices.count(e.slope) && b.i_vertices.count(e.triangle);
      ++deg[e.triangle];
    }
    for (const auto& [t, d] : b.i_vertices) ok = ok && deg[t] == 3;
    r.expect(ok, std::string("ball of radius 2 on ") + name);
  }

  for (int i = 0; i < 50; ++i) {
    const Slope a = random_slope(rng, 10);
    Slope b = random_slope(rng, 10);
    while (b == a) b = random_slope(rng, 10);
    const auto m = std::min(ordered_intersection(T1(), a, b), ordered_intersection(T1(), b, a));
    const auto d = graph_distance(T1(), a, b);
    if (!d || *d > std::log2(static_cast<double>(m) + 1) + 1 + 1e-12) {
      r.expect(false, "distance bound for " + a.to_string() + ", " + b.to_string());
      break;
    }
  }

  for (const auto& [name, o] : surfaces) {
    GeodesicOracle oracle(o);
    std::uniform_int_distribution<int> xs(-300, 300), ys(1, 300);
    for (int i = 0; i < 100; ++i) {
      const HPoint z{Rational(xs(rng), 100), Rational(ys(rng), 100)};
      const auto res = locate(oracle, z);
      if (!closed_triangle_contains(res.first, z)) {
        r.expect(false, std::string("coverage on ") + name);
        break;
      }
    }
  }

  for (const auto& [name, o] : surfaces) {
    const auto dom = algorithm_A(o);
    for (const auto& tc : dom.triangle_classes)
      if (tc.rotation)
        for (const Slope& k : tc.rep.v) r.expect((*tc.rotation)(k) != k, std::string("free action on ") + name);
    for (const auto& c : dom.cusp_classes) {
      for (const auto& t : c.ref_triangles)
        r.expect(t.transformed(c.g_k) != t, std::string("free action on ") + name);
      // Period certificate: U^a' is in the group of the normalized surface, no proper divisor is.
      const auto nd = normalize_direction(o, c.rep);
      r.expect(in_veech_group(nd.normalized, Matrix2::U(c.period_raw)), "period certificate");
      for (std::int64_t m = 1; m < c.period_raw; ++m)
        if (c.period_raw % m == 0)
          r.expect(!in_veech_group(nd.normalized, Matrix2::U(m)), "period minimality");
    }
  }

  for (const auto& [name, o] : surfaces) {
    for (int i = 0; i < 6; ++i) {
      const Slope k = random_slope(rng, 5);
      const auto d = reference_domain(o, k);
      const Rational lo = d.window_lo, a(d.period_raw);
      std::vector<std::pair<Rational, Rational>> ivs;
      for (const auto& t : d.ref_triangles) {
        std::vector<Rational> x;
        for (const Slope& u : t.v)
          if (u != k) x.push_back(d.A(u).value());
        std::sort(x.begin(), x.end());
        ivs.emplace_back(x[0], x[1]);
      }
      std::sort(ivs.begin(), ivs.end());
      bool connected = !ivs.empty() && ivs.front().first <= lo;
      Rational reach = connected ? ivs.front().second : lo;
      for (const auto& [x, y] : ivs) {
        connected = connected && x <= reach;
        reach = std::max(reach, y);
      }
      r.expect(connected && reach >= lo + a, std::string("reference domain connected on ") + name);
      const std::set<IdealTriangle> members(d.ref_triangles.begin(), d.ref_triangles.end());
      for (const auto& w : triangles_with_vertex(o, k, lo - a, lo + a * 2)) {
        bool found = false;
        Matrix2 up, down;
        for (int j = 0; j < 4 && !found; ++j, up = up * d.g_k, down = down * d.g_k.inverse())
          found = members.count(w.ideal.transformed(up)) || members.count(w.ideal.transformed(down));
        r.expect(found, std::string("reference domain complete on ") + name);
      }
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    void (*body)(Outcome&);
  };
  const Criterion criteria[] = {
      {1, "torus golden suite", 1, torus_golden},
      {2, "Farey reproduction", 10, farey},
      {3, "covering invariance", 30, covering},
      {4, "edge count and generator index match the orbit index", 120, index_match},
      {5, "one-cylinder surface picture", 120, figure},
      {6, "property suites", 300, properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(r);
    } catch (const std::exception& e) {
      r.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.expect(secs <= c.budget_s, "time budget");
    failures += !r.ok;
    std::printf("criterion %d (%s): %s in %.2fs;%s\n", c.id, c.name, r.ok ? "PASS" : "FAIL", secs, r.notes.str().c_str());
  }
  return failures == 0 ? 0 : 1;
}
