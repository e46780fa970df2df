#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sqt/modular.hpp"
#include "sqt/origami.hpp"
#include "sqt/rational.hpp"

namespace sqt {

// Rays leave a vertex P.  A ray is named by (base, d): base is a square whose
// bottom-left corner is P and which selects the sheet of angles [-90, 270)
// degrees measured from the positive x axis of that square; d is a nonzero
// integer direction.  The initial cell is the unit cell containing the first
// stretch of the ray, with axis-parallel rays taken to run in the cell above
// (horizontal) or to the right (vertical).

// Square occupying the initial cell of the ray (base, d).
int ray_start_square(const Origami& o, int base, Vec2 d);
// Inverse of ray_start_square: the base square of the ray leaving the corner
// of `square` that is the origin of a ray with direction d starting in it.
int ray_base_from_cell(const Origami& o, int square, Vec2 d);
// Base square of the ray (base, d) after rotating it by `half_turns` * 180
// degrees; the direction becomes (-1)^half_turns * d.
int ray_rotate_half(const Origami& o, int base, Vec2 d, int half_turns);
// Base of the ray reached from (base, from) by turning through the smaller
// angle (< 180 degrees) onto direction `to`.  Precondition: cross(from, to) != 0.
int ray_rotate(const Origami& o, int base, Vec2 from, Vec2 to);

enum class Side : std::uint8_t { Start, Left, Bottom, Right, Top, Corner };

struct Crossing {
  int square;     // square entered
  Side entry;     // edge (or corner) through which it is entered
  Rational at;    // position along that edge, in [0, 1)
};

struct RayHit {
  bool hit = false;
  Vec2 holonomy;            // multiple * d when hit
  std::int64_t multiple = 0;
  Rational len2;
  int end_vertex = -1;
  int end_base = -1;        // base of the reversed ray at the end point
  std::vector<Crossing> trace;
};

// Follows the ray (base, d) to its first marked point, giving up beyond
// squared length max_len2.  d need not be primitive; it is reduced first.
RayHit trace_ray(const Origami& o, int base, Vec2 d, const Rational& max_len2);

struct SaddleConnection {
  int start_base;
  Vec2 holonomy;
  int start_vertex;
  int end_vertex;
  int end_base;

  Slope slope() const { return Slope::of(holonomy); }
  std::int64_t len2() const { return holonomy.norm2(); }
  SaddleConnection reversed() const {
    return {end_base, -holonomy, end_vertex, start_vertex, start_base};
  }
  // Orientation-free key: the smaller of the two oriented keys.
  std::pair<int, Vec2> key() const;
  friend bool operator==(const SaddleConnection&, const SaddleConnection&) = default;
};

bool canonical_less(const SaddleConnection& a, const SaddleConnection& b);

std::optional<SaddleConnection> saddle_connection_from(const Origami& o, int base, Vec2 d,
                                                       const Rational& max_len2);

// All oriented saddle connections with |holonomy|^2 <= len2, sorted by
// (length, holonomy, start).  Closed under reversal.
std::vector<SaddleConnection> saddle_connections_up_to(const Origami& o, const Rational& len2);

// All oriented saddle connections parallel to k (both orientations).
std::vector<SaddleConnection> saddle_connections_in_direction(const Origami& o, const Slope& k);

struct Cylinder {
  Slope direction;
  // Lengths are integer multiples of the primitive vector length |d|:
  // circumference = circumference_units * |d|, height = height_units / |d|.
  std::int64_t circumference_units;
  std::int64_t height_units;
  std::int64_t unit_len2;  // |d|^2
  std::vector<int> bottom;   // indices into DirectionDecomposition::saddle_connections
  std::vector<int> top;
  std::vector<int> squares;  // squares of the normalized origami

  std::int64_t area() const { return circumference_units * height_units; }
  Rational circumference2() const {
    return Rational(circumference_units * circumference_units * unit_len2);
  }
  Rational height2() const { return Rational(height_units * height_units, unit_len2); }
};

struct DirectionDecomposition {
  Slope direction;
  Matrix2 chart;        // sends direction to the horizontal
  Origami normalized;   // chart . O
  std::vector<Cylinder> cylinders;
  // Rightward horizontal saddle connections of the normalized origami;
  // chart.inverse() carries their holonomies back.
  std::vector<SaddleConnection> saddle_connections;
};

// Horizontal cylinders read from the rows of o.
std::vector<Cylinder> horizontal_cylinders(const Origami& o,
                                           std::vector<SaddleConnection>* horizontals = nullptr);
std::vector<SaddleConnection> horizontal_saddle_connections(const Origami& o);
DirectionDecomposition cylinder_decomposition(const Origami& o, const Slope& k);

struct IntersectionReport {
  std::int64_t count;
  Matrix2 chart;             // normalizes k2 to the horizontal
  SaddleConnection witness;  // realizes the minimum; given in the chart above
};

// i(k, k2): minimum over saddle connections s parallel to k of the number of
// points of int(s) lying on saddle connections parallel to k2.
IntersectionReport ordered_intersection_report(const Origami& o, const Slope& k, const Slope& k2);
std::int64_t ordered_intersection(const Origami& o, const Slope& k, const Slope& k2);

}  // namespace sqt
