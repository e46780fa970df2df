#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqt/flatgeom.hpp"
#include "sqt/modular.hpp"
#include "sqt/origami.hpp"

namespace sqt {

// Ideal triangle of the upper half plane, vertices sorted (infinity last).
struct IdealTriangle {
  std::array<Slope, 3> v;

  static IdealTriangle of(Slope a, Slope b, Slope c);
  bool has_vertex(const Slope& k) const { return v[0] == k || v[1] == k || v[2] == k; }
  IdealTriangle transformed(const Matrix2& g) const { return of(g(v[0]), g(v[1]), g(v[2])); }
  std::string to_string() const;  // "{0,1,inf}"

  friend auto operator<=>(const IdealTriangle&, const IdealTriangle&) = default;
};

using SideKey = std::pair<int, Vec2>;

struct DevelopedCell {
  std::int64_t x;
  std::int64_t y;
  int square;
};

// Triangle with vertices P0 = 0, P1 = v1, P2 = v2 in the developing plane,
// P0 the bottom-left corner of square `base`, v1 leaving P0 along the ray
// (base, v1).
struct EmbeddedTriangle {
  int base;
  Vec2 v1;
  Vec2 v2;
  // Oriented saddle-connection keys of the counterclockwise boundary walk,
  // rotated to start at the smallest.  Two halves of a square on the torus
  // share all three unoriented sides, so orientation is kept.
  std::array<SideKey, 3> side_keys;
  std::vector<DevelopedCell> development;

  // Boundary walk P0 -> P1 -> P2 -> P0.
  std::array<Vec2, 3> sides() const { return {v1, v2 - v1, -v2}; }
  std::int64_t det() const { return cross(v1, v2); }
  IdealTriangle ideal() const {
    return IdealTriangle::of(Slope::of(v1), Slope::of(v2 - v1), Slope::of(v2));
  }
};

enum class Rejection : std::uint8_t {
  None,
  AreaExceeded,
  ConeInside,
  MarkedPointInside,
  MarkedPointOnSide,
  ThirdSideBlocked,
  EndpointNotMarked,
  SidesNotAdjacent,
};

std::string_view to_string(Rejection r);

struct EmbedResult {
  Rejection reason = Rejection::None;
  std::optional<EmbeddedTriangle> triangle;
  bool accepted() const { return reason == Rejection::None; }
};

// Develops the planar triangle (0, v1, v2) from the ray (base, v1) and
// decides whether it is an embedded triangle with vertices in the marked set.
EmbedResult embed_check(const Origami& o, int base, Vec2 v1, Vec2 v2);
// Same, for two saddle connections leaving the same point; s2 must be the
// connection met by turning from s1 through the triangle.
EmbedResult embed_check(const Origami& o, const SaddleConnection& s1, const SaddleConnection& s2);

// Triangle over a horizontal saddle connection whose apex is the lowest
// marked point above it (interior columns first, then the right end, then
// the left end).
EmbeddedTriangle canonical_triangle_over(const Origami& o, const SaddleConnection& s0);

struct TriangleWitness {
  IdealTriangle ideal;       // in the chart of the input origami
  Matrix2 chart;             // the witness lives on chart . O
  EmbeddedTriangle witness;
};

// Embedded triangles of the already normalized origami with a horizontal
// side whose two finite vertex slopes span an interval meeting (lo, hi).
std::vector<TriangleWitness> horizontal_triangles(const Origami& normalized, const Rational& lo,
                                                  const Rational& hi);

// All ideal triangles with vertex k whose opposite slope interval, read in
// the chart sending k to infinity, meets the open window (lo, hi).
std::vector<TriangleWitness> triangles_with_vertex(const Origami& o, const Slope& k, const Rational& lo,
                                                   const Rational& hi);

// Every embedded triangle whose sides all have squared length <= len2,
// deduplicated by side keys.
std::vector<EmbeddedTriangle> triangles_up_to(const Origami& o, const Rational& len2);

}  // namespace sqt
