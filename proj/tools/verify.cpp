#include "verify.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "sqt/error.hpp"
#include "sqt/flatgeom.hpp"
#include "sqt/graph.hpp"
#include "sqt/tess.hpp"
#include "sqt/triangles.hpp"
#include "sqt/veech.hpp"

namespace sqt::io {

namespace {

Slope random_slope(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  for (;;) {
    Vec2 v{d(rng), d(rng)};
    if (!v.is_zero() && content(v) == 1) return Slope::of(v);
  }
}

bool full_preimage_marked(const Origami& o) {
  for (const auto& vc : o.vertices())
    if (!vc.marked) return false;
  return true;
}

}  // namespace

std::vector<CheckResult> verify_suite(const Origami& o, const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  auto run = [&](const std::string& name, const std::function<std::string()>& body) {
    try {
      std::string failure = body();
      out.push_back({name, failure.empty(), false, failure});
    } catch (const Error& e) {
      out.push_back({name, false, false, e.what()});
    }
  };
  auto skip = [&](const std::string& name, const std::string& why) { out.push_back({name, true, true, why}); };
  std::mt19937_64 rng(opt.seed);
  const std::int64_t n = o.n();

  run("saddle connections monotone, closed under reversal", [&]() -> std::string {
    auto small = saddle_connections_up_to(o, Rational(10));
    auto big = saddle_connections_up_to(o, Rational(20));
    for (const auto& s : small)
      if (std::find(big.begin(), big.end(), s) == big.end()) return "lost " + std::to_string(s.holonomy.x) + "," + std::to_string(s.holonomy.y);
    for (const auto& s : big)
      if (std::find(big.begin(), big.end(), s.reversed()) == big.end()) return "reversal missing";
    return "";
  });

  run("cylinders tile the surface", [&]() -> std::string {
    for (const char* k : {"inf", "0", "1", "1/2", "-2/3"}) {
      auto d = cylinder_decomposition(o, Slope::parse(k));
      std::int64_t area = 0;
      std::set<int> squares;
      for (const auto& c : d.cylinders) {
        area += c.area();
        squares.insert(c.squares.begin(), c.squares.end());
      }
      if (area != n || static_cast<std::int64_t>(squares.size()) != n) return std::string("direction ") + k;
    }
    return "";
  });

  run("triangles up to 20: closure, det <= 2n, re-embed", [&]() -> std::string {
    for (const auto& t : triangles_up_to(o, Rational(20))) {
      auto s = t.sides();
      const Vec2 sum{s[0].x + s[1].x + s[2].x, s[0].y + s[1].y + s[2].y};
      if (!sum.is_zero()) return "open boundary";
      if (t.det() <= 0 || t.det() > 2 * n) return "det " + std::to_string(t.det());
      if (!embed_check(o, t.base, t.v1, t.v2).accepted()) return "re-embedding rejected";
    }
    return "";
  });

  const auto orbit = oracle_orbit(o, opt.orbit_cap);
  const auto dom = algorithm_A(o);

  run("cusp periods equal orbit cusp widths", [&]() -> std::string {
    std::map<std::vector<int>, int> point;
    for (std::size_t i = 0; i < orbit.cosets.size(); ++i) point[projective_code(orbit.cosets[i])] = static_cast<int>(i);
    for (const auto& c : dom.cusp_classes) {
      auto nd = normalize_direction(o, c.rep);
      int at = point.at(projective_code(nd.normalized));
      std::int64_t width = 0;
      int j = at;
      do {
        j = orbit.t_action[j];
        ++width;
      } while (j != at);
      if (cusp_period(nd.normalized) != width) return "cusp " + c.rep.to_string();
    }
    return "";
  });

  run("cusp classes match the orbit", [&]() -> std::string {
    if (static_cast<std::int64_t>(dom.cusp_classes.size()) != orbit.cusp_count)
      return std::to_string(dom.cusp_classes.size()) + " vs " + std::to_string(orbit.cusp_count);
    return "";
  });

  const auto q = quotient_graph(dom);
  run("edge count folds triangle classes by stabilizers", [&]() -> std::string {
    std::int64_t folded = 0;
    for (int s : q.stabilizer_order) folded += 3 / s;
    return folded == q.edge_count() ? "" : "mismatch";
  });
  if (full_preimage_marked(o)) {
    run("edge count equals the index", [&]() -> std::string {
      return q.edge_count() == orbit.index
                 ? ""
                 : std::to_string(q.edge_count()) + " vs " + std::to_string(orbit.index);
    });
  } else {
    skip("edge count equals the index",
         "E=" + std::to_string(q.edge_count()) + ", index " + std::to_string(orbit.index) +
             "; marking is not the full preimage of the torus point");
  }

  run("generators reach the index", [&]() -> std::string {
    auto gens = algorithm_B(o, &dom);
    std::vector<Word> words;
    for (const auto& g : gens.generators) {
      if (!in_veech_group(o, g.g)) return "non-member " + g.g.to_string();
      words.push_back(g.word);
    }
    auto ce = coset_enumeration(words, opt.coset_cap);
    if (!ce.bounded) return "coset enumeration did not close";
    return ce.index == orbit.index ? "" : std::to_string(ce.index) + " vs " + std::to_string(orbit.index);
  });

  run("quotient distances equal discovery steps", [&]() -> std::string {
    return q.distance == q.generation ? "" : "mismatch";
  });

  run("no certified element fixes an edge", [&]() -> std::string {
    for (const auto& tc : dom.triangle_classes)
      if (tc.rotation)
        for (const Slope& k : tc.rep.v)
          if ((*tc.rotation)(k) == k) return "rotation fixes " + k.to_string();
    for (const auto& c : dom.cusp_classes)
      for (const auto& t : c.ref_triangles)
        if (t.transformed(c.g_k) == t) return "stabilizer fixes " + t.to_string();
    return "";
  });

  run("volume bound", [&]() -> std::string { return volume_report(o).bound_ok ? "" : "violated"; });

  run("ball of radius 2 is bipartite with degree-3 triangles", [&]() -> std::string {
    auto b = local_ball(o, Slope::infinity(), Rational(2));
    std::map<IdealTriangle, int> deg;
    for (const auto& e : b.edges) {
      if (!e.triangle.has_vertex(e.slope)) return "bad incidence";
      ++deg[e.triangle];
    }
    for (const auto& [t, d] : b.i_vertices)
      if (deg[t] != 3) return "degree " + std::to_string(deg[t]) + " at " + t.to_string();
    return "";
  });

  run("zero ordered intersection gives distance 1", [&]() -> std::string {
    for (int i = 0; i < 12; ++i) {
      const Slope a = random_slope(rng, 3), b = random_slope(rng, 3);
      if (a == b) continue;
      if (ordered_intersection(o, a, b) != 0 && ordered_intersection(o, b, a) != 0) continue;
      if (graph_distance(o, a, b) != 1) return a.to_string() + " " + b.to_string();
    }
    return "";
  });

  run("locate covers sample points", [&]() -> std::string {
    GeodesicOracle oracle(o);
    std::uniform_int_distribution<int> d(1, 199);
    for (int i = 0; i < 20; ++i) {
      HPoint z{Rational(d(rng) - 100, 50), Rational(d(rng), 100)};
      locate(oracle, z);
    }
    return "";
  });

  run("complete faces have area <= pi", [&]() -> std::string {
    auto patch = faces_in_region(o, Region::parse("-1,1,1/4,2"));
    for (const auto& f : patch.faces)
      if (f.complete && (!f.area || *f.area > std::numbers::pi + 1e-9)) return "area above pi";
    return "";
  });
  return out;
}

void print_table(const std::vector<CheckResult>& rs, std::ostream& os) {
  std::size_t width = 0;
  for (const auto& r : rs) width = std::max(width, r.name.size());
  for (const auto& r : rs) {
    os << std::left << std::setw(static_cast<int>(width) + 2) << r.name << (r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL");
    if (!r.detail.empty()) os << "  " << r.detail;
    os << "\n";
  }
}

}  // namespace sqt::io
