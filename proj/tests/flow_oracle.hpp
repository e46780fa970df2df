#pragma once

#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "sqt/modular.hpp"
#include "sqt/origami.hpp"
#include "sqt/rational.hpp"

namespace sqt::testing {

// Straight-line flow on the square model with exact positions.  Shares no
// code with the lattice stepping in the library tracer.
struct FlowHit {
  int start_vertex;
  Vec2 holonomy;
  int end_vertex;
  friend auto operator<=>(const FlowHit&, const FlowHit&) = default;
};

inline std::optional<FlowHit> flow_from_corner(const Origami& o, int square, Corner c, Vec2 d,
                                               std::int64_t max_len2) {
  Rational x = (c == Corner::BR || c == Corner::TR) ? 1 : 0;
  Rational y = (c == Corner::TL || c == Corner::TR) ? 1 : 0;
  const int start_vertex = o.vertex_at(CornerRef{square, c});
  Rational t_total = 0;
  int s = square;
  for (int guard = 0; guard < 100000; ++guard) {
    Rational tx = d.x > 0 ? (Rational(1) - x) / Rational(d.x)
                : d.x < 0 ? (Rational(0) - x) / Rational(d.x) : Rational(-1);
    Rational ty = d.y > 0 ? (Rational(1) - y) / Rational(d.y)
                : d.y < 0 ? (Rational(0) - y) / Rational(d.y) : Rational(-1);
    Rational t;
    bool hx = false, hy = false;
    if (tx.sign() < 0) {
      t = ty, hy = true;
    } else if (ty.sign() < 0) {
      t = tx, hx = true;
    } else if (tx == ty) {
      t = tx, hx = hy = true;
    } else if (tx < ty) {
      t = tx, hx = true;
    } else {
      t = ty, hy = true;
    }
    t_total += t;
    if (t_total * t_total * Rational(d.norm2()) > Rational(max_len2)) return std::nullopt;
    x += t * Rational(d.x);
    y += t * Rational(d.y);
    bool at_corner = (x == 0 || x == 1) && (y == 0 || y == 1);
    if (at_corner) {
      Corner cc = x == 1 ? (y == 1 ? Corner::TR : Corner::BR) : (y == 1 ? Corner::TL : Corner::BL);
      int vtx = o.vertex_at(CornerRef{s, cc});
      if (o.vertices()[vtx].marked) {
        Vec2 hol{(t_total * Rational(d.x)).num(), (t_total * Rational(d.y)).num()};
        return FlowHit{start_vertex, hol, vtx};
      }
    }
    if (hx) {
      if (x == 1) s = o.right(s), x = 0;
      else s = o.left(s), x = 1;
    }
    if (hy) {
      if (y == 1) s = o.up(s), y = 0;
      else s = o.down(s), y = 1;
    }
  }
  return std::nullopt;
}

// Every ray from a marked corner, each counted once through the unique cell
// containing its initial stretch (axis-parallel rays use the cell above or
// to the right).
inline std::multiset<FlowHit> flow_saddle_connections(const Origami& o, std::int64_t max_len2) {
  std::multiset<FlowHit> out;
  std::int64_t r = 1;
  while (r * r <= max_len2) ++r;
  for (int s = 0; s < o.n(); ++s) {
    for (Corner c : {Corner::BL, Corner::BR, Corner::TR, Corner::TL}) {
      if (!o.vertices()[o.vertex_at(CornerRef{s, c})].marked) continue;
      for (std::int64_t dx = -r; dx <= r; ++dx) {
        for (std::int64_t dy = -r; dy <= r; ++dy) {
          if (gcd64(dx, dy) != 1 || dx * dx + dy * dy > max_len2) continue;
          // Cell of the ray relative to its origin: x in {0,-1}, y in {0,-1}.
          bool left = dx < 0, below = dy < 0;
          bool ok = (c == Corner::BL && !left && !below) || (c == Corner::BR && left && !below) ||
                    (c == Corner::TR && left && below) || (c == Corner::TL && !left && below);
          if (!ok) continue;
          if (auto hit = flow_from_corner(o, s, c, {dx, dy}, max_len2)) out.insert(*hit);
        }
      }
    }
  }
  return out;
}

}  // namespace sqt::testing
