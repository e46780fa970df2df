#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "sqt/error.hpp"
#include "sqt/triangles.hpp"
#include "surfaces.hpp"

using namespace sqt;
using namespace sqt::testing;

namespace {

std::set<std::array<Vec2, 3>> holonomy_triples(const std::vector<EmbeddedTriangle>& ts) {
  std::set<std::array<Vec2, 3>> out;
  for (const auto& t : ts) {
    // rotate the ccw boundary walk to a canonical starting side
    auto s = t.sides();
    if (t.det() < 0) s = {-s[2], -s[1], -s[0]};
    std::array<Vec2, 3> best = s;
    for (int r = 1; r < 3; ++r) {
      std::array<Vec2, 3> c{s[r], s[(r + 1) % 3], s[(r + 2) % 3]};
      best = std::min(best, c);
    }
    out.insert(best);
  }
  return out;
}

}  // namespace

TEST_CASE("embed_check on the torus") {
  EmbedResult r = embed_check(T1(), 0, {1, 0}, {1, 1});
  REQUIRE(r.accepted());
  CHECK(r.triangle->ideal() == IdealTriangle::of(Slope::infinity(), Slope::of(Rational(1)), Slope::of(Rational(0))));
  CHECK(std::abs(r.triangle->det()) == 1);
  CHECK(embed_check(T1(), 0, {2, 1}, {1, 2}).reason == Rejection::AreaExceeded);
  CHECK(embed_check(T1(), 0, {2, 0}, {0, 1}).reason == Rejection::MarkedPointOnSide);
  CHECK(embed_check(T1(), 0, {1, 1}, {-1, 1}).reason == Rejection::ThirdSideBlocked);
  CHECK_THROWS_AS(embed_check(T1(), 0, {1, 1}, {2, 2}), Error);
}

TEST_CASE("embed_check detects the cone point of L3") {
  // Pick: area 5/2 with primitive sides leaves two interior lattice points.
  EmbedResult r = embed_check(L3(), 0, {3, 1}, {1, 2});
  CHECK(r.reason == Rejection::ConeInside);
}

TEST_CASE("with every vertex marked, embedded iff unimodular") {
  // All lattice points are marked, so Pick's theorem decides embedding.
  std::mt19937_64 rng(31);
  std::vector<Origami> surfaces{T1(), O2()};
  for (int i = 0; i < 6; ++i) {
    Origami o = random_origami(2 + i, rng);
    surfaces.push_back(Origami::build(o.h(), o.v(), MarkAll{}));
  }
  for (const Origami& o : surfaces) {
    for (int b = 0; b < o.n(); ++b) {
      for (std::int64_t x1 = -3; x1 <= 3; ++x1)
        for (std::int64_t y1 = -3; y1 <= 3; ++y1)
          for (std::int64_t x2 = -3; x2 <= 3; ++x2)
            for (std::int64_t y2 = -3; y2 <= 3; ++y2) {
              Vec2 v1{x1, y1}, v2{x2, y2};
              if (cross(v1, v2) == 0) continue;
              EmbedResult r = embed_check(o, b, v1, v2);
              CHECK(r.accepted() == (std::abs(cross(v1, v2)) == 1));
            }
    }
  }
}

TEST_CASE("verdict does not depend on orientation") {
  std::mt19937_64 rng(37);
  std::vector<Origami> surfaces{L3(), W4()};
  for (int i = 0; i < 4; ++i) surfaces.push_back(random_origami(3 + i, rng));
  for (const Origami& o : surfaces) {
    for (int b = 0; b < o.n(); ++b) {
      if (!o.marked_at(b)) continue;
      for (std::int64_t x1 = -3; x1 <= 3; ++x1)
        for (std::int64_t y1 = -3; y1 <= 3; ++y1)
          for (std::int64_t x2 = -3; x2 <= 3; ++x2)
            for (std::int64_t y2 = -3; y2 <= 3; ++y2) {
              Vec2 v1{x1, y1}, v2{x2, y2};
              if (cross(v1, v2) == 0) continue;
              EmbedResult r = embed_check(o, b, v1, v2);
              int b2 = ray_rotate(o, b, v1, v2);
              EmbedResult swapped = embed_check(o, b2, v2, v1);
              CHECK(r.accepted() == swapped.accepted());
              if (r.accepted()) CHECK(r.triangle->side_keys == swapped.triangle->side_keys);
            }
    }
  }
}

TEST_CASE("accepted triangles: closure, area bound, saddle connection sides") {
  for (const Origami& o : {T1(), L3(), W4()}) {
    auto ts = triangles_up_to(o, 20);
    CHECK_FALSE(ts.empty());
    for (const auto& t : ts) {
      auto s = t.sides();
      CHECK(s[0] + s[1] + s[2] == Vec2{0, 0});
      for (int i = 0; i < 3; ++i) CHECK(std::abs(cross(s[i], s[(i + 1) % 3])) <= 2 * o.n());
      CHECK(Slope::of(s[0]) != Slope::of(s[1]));
      auto sc = saddle_connection_from(o, t.base, t.v1, t.v1.norm2());
      REQUIRE(sc.has_value());
      CHECK(sc->holonomy == t.v1);
      for (const auto& key : t.side_keys) {
        auto side = saddle_connection_from(o, key.first, key.second, key.second.norm2());
        REQUIRE(side.has_value());
        CHECK(side->holonomy == key.second);
      }
    }
  }
}

TEST_CASE("torus triangles are unimodular") {
  for (const auto& t : triangles_up_to(T1(), 50)) {
    auto s = t.sides();
    for (int i = 0; i < 3; ++i) CHECK(std::abs(cross(s[i], s[(i + 1) % 3])) == 1);
  }
}

TEST_CASE("covering invariance: O2 and T1 share triangle holonomies") {
  CHECK(holonomy_triples(triangles_up_to(O2(), 8)) == holonomy_triples(triangles_up_to(T1(), 8)));
}

TEST_CASE("canonical triangle over a horizontal connection") {
  auto t1 = horizontal_saddle_connections(T1());
  REQUIRE(t1.size() == 1);
  EmbeddedTriangle t = canonical_triangle_over(T1(), t1[0]);
  CHECK(t.v1 == Vec2{1, 0});
  CHECK(t.ideal() == IdealTriangle::of(Slope::infinity(), Slope::of(Rational(0)), Slope::of(Rational(1))));

  for (const Origami& o : {L3(), W4()}) {
    for (const auto& s : horizontal_saddle_connections(o)) {
      EmbeddedTriangle c = canonical_triangle_over(o, s);
      CHECK(c.v1 == s.holonomy);
      CHECK(c.v2.y > 0);
      CHECK(embed_check(o, c.base, c.v1, c.v2).accepted());
    }
  }
  auto vertical = saddle_connection_from(T1(), 0, {0, 1}, 1);
  REQUIRE(vertical.has_value());
  CHECK_THROWS_AS(canonical_triangle_over(T1(), *vertical), Error);
}

TEST_CASE("triangles with vertex infinity on the torus") {
  auto ts = triangles_with_vertex(T1(), Slope::infinity(), 0, 1);
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].ideal == IdealTriangle::of(Slope::infinity(), Slope::of(Rational(0)), Slope::of(Rational(1))));
  for (const Origami& o : {L3(), W4()}) {
    for (Slope k : {Slope::infinity(), Slope::of(Rational(0)), Slope::of(Rational(2, 3))}) {
      auto found = triangles_with_vertex(o, k, 0, 3);
      CHECK_FALSE(found.empty());
      for (const auto& w : found) CHECK(w.ideal.has_vertex(k));
    }
  }
}
