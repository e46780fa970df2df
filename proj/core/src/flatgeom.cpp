#include "sqt/flatgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "sqt/error.hpp"

namespace sqt {

namespace {

// Angle of d lies in [90, 270) degrees.
bool upper_sheet_half(Vec2 d) { return d.x < 0 || (d.x == 0 && d.y > 0); }

int sgn(std::int64_t x) { return (x > 0) - (x < 0); }

Corner arrival_corner(Vec2 d) {
  bool right = d.x > 0;
  bool top = d.y > 0;
  if (right) return top ? Corner::TR : Corner::BR;
  return top ? Corner::TL : Corner::BL;
}

int step_diagonal(const Origami& o, int s, Vec2 d) {
  if (d.x > 0) s = o.right(s);
  if (d.x < 0) s = o.left(s);
  if (d.y > 0) s = o.up(s);
  if (d.y < 0) s = o.down(s);
  return s;
}

Rational frac(const Rational& r) { return r - Rational(r.floor()); }

}  // namespace

int ray_start_square(const Origami& o, int base, Vec2 d) {
  bool left = d.x < 0;
  bool below = d.y < 0;
  if (!left && !below) return base;
  if (left && !below) return o.left(base);
  if (left && below) return o.down(o.left(base));
  return o.down(base);
}

int ray_base_from_cell(const Origami& o, int square, Vec2 d) {
  bool left = d.x < 0;
  bool below = d.y < 0;
  if (!left && !below) return square;
  if (left && !below) return o.right(square);
  if (left && below) return o.right(o.up(square));
  return o.up(square);
}

int ray_rotate_half(const Origami& o, int base, Vec2 d, int half_turns) {
  while (half_turns > 0) {
    if (upper_sheet_half(d)) base = o.turn(base);
    d = -d;
    --half_turns;
  }
  while (half_turns < 0) {
    if (!upper_sheet_half(d)) base = o.turn_inverse(base);
    d = -d;
    ++half_turns;
  }
  return base;
}

int ray_rotate(const Origami& o, int base, Vec2 from, Vec2 to) {
  auto angle_less = [](Vec2 a, Vec2 b) {
    bool ha = upper_sheet_half(a), hb = upper_sheet_half(b);
    if (ha != hb) return hb;
    return cross(a, b) > 0;
  };
  std::int64_t c = cross(from, to);
  if (c == 0) throw Error(ErrorKind::InvalidArgument, "rotation between parallel directions");
  if (c > 0) return angle_less(to, from) ? o.turn(base) : base;
  return angle_less(from, to) ? o.turn_inverse(base) : base;
}

RayHit trace_ray(const Origami& o, int base, Vec2 d, const Rational& max_len2) {
  if (d.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero direction");
  d = primitive(d);
  RayHit out;
  const std::int64_t ax = std::abs(d.x), ay = std::abs(d.y);
  const int sx = sgn(d.x), sy = sgn(d.y);
  int s = ray_start_square(o, base, d);
  out.trace.push_back({s, Side::Start, Rational(0)});
  // Periodicity bounds the search: the ray closes up after at most n lattice points.
  for (std::int64_t k = 1; k <= o.n(); ++k) {
    Rational len2(static_cast<std::int64_t>(k * k) * d.norm2());
    if (len2 > max_len2) break;
    // Interior crossings of the open step ((k-1)d, kd): vertical lines at
    // t = i/ax, horizontal lines at t = j/ay; they never coincide.
    std::int64_t i = 1, j = 1;
    while (i < ax || j < ay) {
      bool vertical = j >= ay || (i < ax && i * ay < j * ax);
      if (vertical) {
        s = sx > 0 ? o.right(s) : o.left(s);
        Rational y = frac(Rational(i * d.y, ax));
        out.trace.push_back({s, sx > 0 ? Side::Left : Side::Right, y});
        ++i;
      } else {
        s = sy > 0 ? o.up(s) : o.down(s);
        Rational x = frac(Rational(j * d.x, ay));
        out.trace.push_back({s, sy > 0 ? Side::Bottom : Side::Top, x});
        ++j;
      }
    }
    int vertex = o.vertex_at(CornerRef{s, arrival_corner(d)});
    if (o.vertices()[vertex].marked) {
      out.hit = true;
      out.multiple = k;
      out.holonomy = k * d;
      out.len2 = len2;
      out.end_vertex = vertex;
      out.end_base = ray_base_from_cell(o, s, -d);
      return out;
    }
    s = step_diagonal(o, s, d);
    out.trace.push_back({s, Side::Corner, Rational(0)});
  }
  return out;
}

std::pair<int, Vec2> SaddleConnection::key() const {
  auto a = std::pair(start_base, holonomy);
  auto b = std::pair(end_base, -holonomy);
  return std::min(a, b);
}

bool canonical_less(const SaddleConnection& a, const SaddleConnection& b) {
  return std::tuple(a.len2(), a.holonomy, a.start_base) < std::tuple(b.len2(), b.holonomy, b.start_base);
}

std::optional<SaddleConnection> saddle_connection_from(const Origami& o, int base, Vec2 d,
                                                       const Rational& max_len2) {
  RayHit hit = trace_ray(o, base, d, max_len2);
  if (!hit.hit) return std::nullopt;
  return SaddleConnection{base, hit.holonomy, o.vertex_at(base), hit.end_vertex, hit.end_base};
}

std::vector<SaddleConnection> saddle_connections_up_to(const Origami& o, const Rational& len2) {
  std::vector<SaddleConnection> out;
  const std::int64_t r = static_cast<std::int64_t>(std::floor(std::sqrt(len2.to_double()))) + 1;
  std::vector<int> bases;
  for (int s = 0; s < o.n(); ++s)
    if (o.marked_at(s)) bases.push_back(s);
  for (std::int64_t x = -r; x <= r; ++x) {
    for (std::int64_t y = -r; y <= r; ++y) {
      if (gcd64(x, y) != 1) continue;
      if (Rational(x * x + y * y) > len2) continue;
      for (int b : bases) {
        if (auto sc = saddle_connection_from(o, b, {x, y}, len2)) out.push_back(*sc);
      }
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<SaddleConnection> saddle_connections_in_direction(const Origami& o, const Slope& k) {
  std::vector<SaddleConnection> out;
  Vec2 d = k.vector();
  const Rational bound(static_cast<std::int64_t>(o.n()) * o.n() * d.norm2());
  for (int s = 0; s < o.n(); ++s) {
    if (!o.marked_at(s)) continue;
    for (Vec2 dir : {d, -d}) {
      if (auto sc = saddle_connection_from(o, s, dir, bound)) out.push_back(*sc);
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<SaddleConnection> horizontal_saddle_connections(const Origami& o) {
  std::vector<SaddleConnection> out;
  for (int s = 0; s < o.n(); ++s) {
    if (!o.marked_at(s)) continue;
    int t = o.right(s);
    std::int64_t len = 1;
    while (!o.marked_at(t)) {
      t = o.right(t);
      ++len;
    }
    out.push_back({s, {len, 0}, o.vertex_at(s), o.vertex_at(t), t});
  }
  return out;
}

std::vector<Cylinder> horizontal_cylinders(const Origami& o, std::vector<SaddleConnection>* horizontals) {
  const int n = o.n();
  std::vector<SaddleConnection> hsc = horizontal_saddle_connections(o);
  std::vector<int> sc_at(n, -1);
  for (std::size_t i = 0; i < hsc.size(); ++i) sc_at[hsc[i].start_base] = static_cast<int>(i);

  // Rows are h-cycles; a row's bottom line is singular iff it carries a marked corner.
  std::vector<int> row_of(n, -1);
  std::vector<std::vector<int>> rows;
  for (int s = 0; s < n; ++s) {
    if (row_of[s] >= 0) continue;
    std::vector<int> row;
    for (int t = s; row_of[t] < 0; t = o.right(t)) {
      row_of[t] = static_cast<int>(rows.size());
      row.push_back(t);
    }
    rows.push_back(std::move(row));
  }
  auto singular_bottom = [&](int r) {
    return std::any_of(rows[r].begin(), rows[r].end(), [&](int s) { return o.marked_at(s); });
  };
  auto boundary = [&](int r) {
    std::vector<int> ids;
    // Walk the row from a marked square so the connections come out in order.
    const auto& row = rows[r];
    auto it = std::find_if(row.begin(), row.end(), [&](int s) { return o.marked_at(s); });
    int s0 = *it;
    int s = s0;
    do {
      if (sc_at[s] >= 0) ids.push_back(sc_at[s]);
      s = o.right(s);
    } while (s != s0);
    return ids;
  };

  std::vector<Cylinder> out;
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    if (!singular_bottom(r)) continue;
    Cylinder c;
    c.direction = Slope::infinity();
    c.circumference_units = static_cast<std::int64_t>(rows[r].size());
    c.unit_len2 = 1;
    c.bottom = boundary(r);
    int cur = r;
    std::int64_t height = 0;
    for (;;) {
      ++height;
      for (int s : rows[cur]) c.squares.push_back(s);
      int above = row_of[o.up(rows[cur].front())];
      if (singular_bottom(above)) {
        c.top = boundary(above);
        break;
      }
      cur = above;
    }
    c.height_units = height;
    std::sort(c.squares.begin(), c.squares.end());
    out.push_back(std::move(c));
  }
  if (horizontals) *horizontals = std::move(hsc);
  return out;
}

DirectionDecomposition cylinder_decomposition(const Origami& o, const Slope& k) {
  DirectionDecomposition dd{k, direction_chart(k), apply_matrix(o, direction_chart(k)), {}, {}};
  dd.cylinders = horizontal_cylinders(dd.normalized, &dd.saddle_connections);
  for (auto& c : dd.cylinders) {
    c.direction = k;
    c.unit_len2 = k.vector().norm2();
  }
  return dd;
}

IntersectionReport ordered_intersection_report(const Origami& o, const Slope& k, const Slope& k2) {
  if (k == k2) throw Error(ErrorKind::InvalidArgument, "ordered intersection needs distinct directions");
  Matrix2 chart = direction_chart(k2);
  Origami norm = apply_matrix(o, chart);
  const int n = norm.n();
  // A horizontal line of the normalized surface lies on the union of
  // horizontal saddle connections iff its row carries a marked corner.
  std::vector<char> singular_line(n, 0);
  for (int s = 0; s < n; ++s) {
    if (singular_line[s]) continue;
    bool any = false;
    int t = s;
    do {
      any = any || norm.marked_at(t);
      t = norm.right(t);
    } while (t != s);
    if (any) {
      t = s;
      do {
        singular_line[t] = 1;
        t = norm.right(t);
      } while (t != s);
    }
  }
  Slope target = chart(k);
  Vec2 d = target.vector();
  const Rational bound(static_cast<std::int64_t>(n) * n * d.norm2());
  std::optional<IntersectionReport> best;
  for (int b = 0; b < n; ++b) {
    if (!norm.marked_at(b)) continue;
    RayHit hit = trace_ray(norm, b, d, bound);
    if (!hit.hit) continue;
    std::int64_t count = 0;
    for (std::size_t i = 1; i < hit.trace.size(); ++i) {
      const Crossing& c = hit.trace[i];
      int above = -1;
      if (c.entry == Side::Bottom) above = c.square;
      if (c.entry == Side::Top) above = hit.trace[i - 1].square;
      if (c.entry == Side::Corner) above = d.y > 0 ? c.square : hit.trace[i - 1].square;
      if (above >= 0 && singular_line[above]) ++count;
    }
    if (!best || count < best->count) {
      SaddleConnection sc{b, hit.holonomy, norm.vertex_at(b), hit.end_vertex, hit.end_base};
      best = IntersectionReport{count, chart, sc};
    }
  }
  if (!best) throw Error(ErrorKind::InvalidArgument, "no saddle connection in direction " + k.to_string());
  return *best;
}

std::int64_t ordered_intersection(const Origami& o, const Slope& k, const Slope& k2) {
  return ordered_intersection_report(o, k, k2).count;
}

}  // namespace sqt
