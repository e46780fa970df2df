#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sqt/modular.hpp"

namespace sqt {

// 0-based permutation of {0, ..., n-1}.
using Perm = std::vector<int>;

Perm perm_inverse(const Perm& p);
Perm perm_compose(const Perm& outer, const Perm& inner);  // outer o inner
Perm perm_power(const Perm& p, std::int64_t k);
std::vector<std::vector<int>> perm_cycles(const Perm& p);

enum class Corner : std::uint8_t { BL, BR, TR, TL };

struct CornerRef {
  int square;
  Corner corner;
  friend auto operator<=>(const CornerRef&, const CornerRef&) = default;
};

// A point of the surface that is a corner of some square.
struct VertexClass {
  int id;
  // Squares whose bottom-left corner is this vertex, in the order obtained by
  // turning counterclockwise around the vertex one full turn at a time.
  std::vector<int> base_squares;
  // All (square, corner) incidences in counterclockwise order.
  std::vector<CornerRef> corners;
  bool marked;

  // Cone angle in quarter turns (angle = quarter_turns * pi/2).
  int quarter_turns() const { return static_cast<int>(corners.size()); }
  // Cone angle as a multiple of 2 pi.
  int angle_multiple() const { return static_cast<int>(base_squares.size()); }
  bool singular() const { return base_squares.size() > 1; }
};

struct MarkSingular {};
struct MarkAll {};
struct MarkExplicit {
  std::vector<CornerRef> corners;
};
using Marking = std::variant<MarkSingular, MarkAll, MarkExplicit>;

// Square-tiled translation surface: h(i) is the right neighbour of square i,
// v(i) the top neighbour.  Immutable once built.
class Origami {
 public:
  // Validating constructor; see build_origami for the marking rules.
  static Origami build(Perm h, Perm v, const Marking& marking);
  // Builds from the per-square flag "bottom-left corner is marked".
  static Origami from_marked_corners(Perm h, Perm v, const std::vector<char>& marked_bl);

  int n() const { return static_cast<int>(h_.size()); }
  const Perm& h() const { return h_; }
  const Perm& v() const { return v_; }
  const Perm& h_inv() const { return h_inv_; }
  const Perm& v_inv() const { return v_inv_; }
  int right(int s) const { return h_[s]; }
  int left(int s) const { return h_inv_[s]; }
  int up(int s) const { return v_[s]; }
  int down(int s) const { return v_inv_[s]; }

  const std::vector<VertexClass>& vertices() const { return vertices_; }
  // Vertex class of the bottom-left corner of square s.
  int vertex_at(int s) const { return vertex_of_bl_[s]; }
  int vertex_at(CornerRef c) const;
  bool marked_at(int s) const { return vertices_[vertex_of_bl_[s]].marked; }
  std::vector<char> marked_corners() const;
  // Full counterclockwise turn around the bottom-left vertex of s.
  int turn(int s) const { return turn_[s]; }
  int turn_inverse(int s) const { return turn_inv_[s]; }
  int genus() const;

  // Canonical text form "n=..\nh=..\nv=..\nmarked=..".
  std::string to_text() const;

  friend bool operator==(const Origami& a, const Origami& b) {
    return a.h_ == b.h_ && a.v_ == b.v_ && a.marked_corners() == b.marked_corners();
  }

 private:
  Origami(Perm h, Perm v);
  void compute_vertices();

  Perm h_, v_, h_inv_, v_inv_;
  Perm turn_, turn_inv_;
  std::vector<int> vertex_of_bl_;
  std::vector<VertexClass> vertices_;
};

// h and v are 0-based; text input goes through parse_cycles.
Origami build_origami(int n, const Perm& h, const Perm& v, const Marking& marking);
std::vector<VertexClass> vertex_classes(const Origami& o);

struct CanonicalResult {
  Origami origami;
  // relabeling[old square] = new square.
  std::vector<int> relabeling;
};

CanonicalResult canonical_form(const Origami& o);
// Flattened canonical encoding (n, h, v, marks); equal iff isomorphic.
std::vector<int> canonical_code(const Origami& o);
// Canonical encoding of the class {O, -I.O}; equal iff the surfaces agree as
// points of the PSL(2,Z)-orbit.
std::vector<int> projective_code(const Origami& o);
bool is_isomorphic(const Origami& a, const Origami& b);
bool is_projectively_isomorphic(const Origami& a, const Origami& b);

// Generator actions on the combinatorial data.
Origami act_T(const Origami& o, std::int64_t power = 1);
Origami act_S(const Origami& o);
Origami apply_word(const Origami& o, const Word& w);
// g.O for g in SL(2,Z) (exact; -I acts as the rotation by pi).
Origami apply_matrix(const Origami& o, const Matrix2& g);
// g in PSL(2,Z) stabilizes O iff g.O or (-g).O is isomorphic to O.
bool in_veech_group(const Origami& o, const Matrix2& g);

// Cycle notation for 1-based perms, fixed points omitted: "(1 2)(3 4)".
std::string format_cycles(const Perm& p);
Perm parse_cycles(int n, std::string_view text);

namespace examples {
Origami torus();         // T1
Origami two_torus();     // O2: n=2, h=(1 2), v=(), all marked
Origami l_shape();       // L3: n=3, h=(1 2), v=(1 3), singular
Origami one_cylinder_h2();  // W4: n=4, h=(1 2 3 4), v=(1 2), singular
}  // namespace examples

}  // namespace sqt
