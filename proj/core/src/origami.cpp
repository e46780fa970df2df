#include "sqt/origami.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "sqt/error.hpp"

namespace sqt {

Perm perm_inverse(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

Perm perm_compose(const Perm& outer, const Perm& inner) {
  Perm r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[inner[i]];
  return r;
}

Perm perm_power(const Perm& p, std::int64_t k) {
  Perm r(p.size());
  for (const auto& cyc : perm_cycles(p)) {
    auto len = static_cast<std::int64_t>(cyc.size());
    std::int64_t shift = ((k % len) + len) % len;
    for (std::int64_t j = 0; j < len; ++j) r[cyc[j]] = cyc[(j + shift) % len];
  }
  return r;
}

std::vector<std::vector<int>> perm_cycles(const Perm& p) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    for (int j = static_cast<int>(i); !seen[j]; j = p[j]) {
      seen[j] = 1;
      cyc.push_back(j);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

namespace {

bool is_permutation(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

bool transitive(const Perm& h, const Perm& v) {
  std::vector<char> seen(h.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int t : {h[s], v[s]}) {
      if (!seen[t]) {
        seen[t] = 1;
        ++count;
        stack.push_back(t);
      }
    }
  }
  return count == h.size();
}

}  // namespace

Origami::Origami(Perm h, Perm v) : h_(std::move(h)), v_(std::move(v)) {
  h_inv_ = perm_inverse(h_);
  v_inv_ = perm_inverse(v_);
  compute_vertices();
}

void Origami::compute_vertices() {
  const int n = this->n();
  turn_.resize(n);
  // Counterclockwise around a bottom-left vertex: NE -> NW -> SW -> SE -> NE.
  for (int s = 0; s < n; ++s) turn_[s] = v_[h_[v_inv_[h_inv_[s]]]];
  turn_inv_ = perm_inverse(turn_);
  vertex_of_bl_.assign(n, -1);
  vertices_.clear();
  for (int s = 0; s < n; ++s) {
    if (vertex_of_bl_[s] >= 0) continue;
    VertexClass vc;
    vc.id = static_cast<int>(vertices_.size());
    vc.marked = false;
    int t = s;
    do {
      vertex_of_bl_[t] = vc.id;
      vc.base_squares.push_back(t);
      int nw = h_inv_[t];
      int sw = v_inv_[nw];
      int se = h_[sw];
      vc.corners.push_back({t, Corner::BL});
      vc.corners.push_back({nw, Corner::BR});
      vc.corners.push_back({sw, Corner::TR});
      vc.corners.push_back({se, Corner::TL});
      t = turn_[t];
    } while (t != s);
    vertices_.push_back(std::move(vc));
  }
}

int Origami::vertex_at(CornerRef c) const {
  switch (c.corner) {
    case Corner::BL: return vertex_of_bl_[c.square];
    case Corner::BR: return vertex_of_bl_[h_[c.square]];
    case Corner::TL: return vertex_of_bl_[v_[c.square]];
    case Corner::TR: return vertex_of_bl_[h_[v_[c.square]]];
  }
  return -1;
}

std::vector<char> Origami::marked_corners() const {
  std::vector<char> out(n());
  for (int s = 0; s < n(); ++s) out[s] = marked_at(s) ? 1 : 0;
  return out;
}

int Origami::genus() const {
  return (2 - static_cast<int>(vertices_.size()) + n()) / 2;
}

Origami Origami::build(Perm h, Perm v, const Marking& marking) {
  if (h.empty() || h.size() != v.size()) {
    throw Error(ErrorKind::BadPermutation, "h and v must be permutations of the same positive size");
  }
  if (!is_permutation(h) || !is_permutation(v)) {
    throw Error(ErrorKind::BadPermutation, "h or v is not a permutation");
  }
  if (!transitive(h, v)) {
    throw Error(ErrorKind::Disconnected, "h and v do not act transitively on the squares");
  }
  Origami o(std::move(h), std::move(v));
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, MarkAll>) {
          for (auto& vc : o.vertices_) vc.marked = true;
        } else if constexpr (std::is_same_v<M, MarkSingular>) {
          bool any = false;
          for (auto& vc : o.vertices_) {
            vc.marked = vc.singular();
            any = any || vc.marked;
          }
          if (!any) o.vertices_.front().marked = true;
        } else {
          for (const auto& c : m.corners) {
            if (c.square < 0 || c.square >= o.n()) {
              throw Error(ErrorKind::InvalidArgument, "marked corner refers to a missing square");
            }
            o.vertices_[o.vertex_at(c)].marked = true;
          }
          if (m.corners.empty()) throw Error(ErrorKind::EmptyMarking, "explicit marking is empty");
          for (const auto& vc : o.vertices_) {
            if (vc.singular() && !vc.marked) {
              throw Error(ErrorKind::UnmarkedSingularity,
                          "vertex class " + std::to_string(vc.id) + " is a cone point but not marked");
            }
          }
        }
      },
      marking);
  return o;
}

Origami Origami::from_marked_corners(Perm h, Perm v, const std::vector<char>& marked_bl) {
  Origami o(std::move(h), std::move(v));
  for (int s = 0; s < o.n(); ++s) {
    if (marked_bl[s]) o.vertices_[o.vertex_of_bl_[s]].marked = true;
  }
  return o;
}

Origami build_origami(int n, const Perm& h, const Perm& v, const Marking& marking) {
  if (n <= 0 || static_cast<int>(h.size()) != n || static_cast<int>(v.size()) != n) {
    throw Error(ErrorKind::BadPermutation, "permutation size does not match n");
  }
  return Origami::build(h, v, marking);
}

std::vector<VertexClass> vertex_classes(const Origami& o) { return o.vertices(); }

namespace {

// Encoding of o relabelled by breadth-first search from root.
std::vector<int> encode_from(const Origami& o, int root, std::vector<int>& label) {
  const int n = o.n();
  label.assign(n, -1);
  std::vector<int> order;
  order.reserve(n);
  label[root] = 0;
  order.push_back(root);
  for (std::size_t head = 0; head < order.size(); ++head) {
    int s = order[head];
    for (int t : {o.right(s), o.up(s)}) {
      if (label[t] < 0) {
        label[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  }
  std::vector<int> code;
  code.reserve(3 * n + 1);
  code.push_back(n);
  for (int s : order) code.push_back(label[o.right(s)]);
  for (int s : order) code.push_back(label[o.up(s)]);
  for (int s : order) code.push_back(o.marked_at(s) ? 1 : 0);
  return code;
}

Origami rotate_half(const Origami& o) { return act_S(act_S(o)); }

}  // namespace

std::vector<int> canonical_code(const Origami& o) {
  std::vector<int> best;
  std::vector<int> label;
  for (int r = 0; r < o.n(); ++r) {
    auto code = encode_from(o, r, label);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

CanonicalResult canonical_form(const Origami& o) {
  std::vector<int> best;
  std::vector<int> best_label;
  std::vector<int> label;
  for (int r = 0; r < o.n(); ++r) {
    auto code = encode_from(o, r, label);
    if (best.empty() || code < best) {
      best = std::move(code);
      best_label = label;
    }
  }
  const int n = o.n();
  Perm h(n), v(n);
  std::vector<char> marks(n);
  for (int s = 0; s < n; ++s) {
    h[best_label[s]] = best_label[o.right(s)];
    v[best_label[s]] = best_label[o.up(s)];
    marks[best_label[s]] = o.marked_at(s) ? 1 : 0;
  }
  return {Origami::from_marked_corners(std::move(h), std::move(v), marks), best_label};
}

std::vector<int> projective_code(const Origami& o) {
  auto a = canonical_code(o);
  auto b = canonical_code(rotate_half(o));
  return std::min(a, b);
}

bool is_isomorphic(const Origami& a, const Origami& b) {
  return a.n() == b.n() && canonical_code(a) == canonical_code(b);
}

bool is_projectively_isomorphic(const Origami& a, const Origami& b) {
  return a.n() == b.n() && projective_code(a) == projective_code(b);
}

Origami act_T(const Origami& o, std::int64_t power) {
  // Shear (x, y) -> (x + y, y): rows keep h; the square above i becomes the
  // square above h^-power(i).
  Perm v = perm_compose(o.v(), perm_power(o.h(), -power));
  return Origami::from_marked_corners(o.h(), std::move(v), o.marked_corners());
}

Origami act_S(const Origami& o) {
  // Rotation by a quarter turn: the old top neighbour becomes the left one,
  // the old right neighbour becomes the top one.  The new bottom-left corner
  // is the old top-left corner.
  const int n = o.n();
  std::vector<char> marks(n);
  for (int s = 0; s < n; ++s) marks[s] = o.marked_at(o.up(s)) ? 1 : 0;
  return Origami::from_marked_corners(o.v_inv(), o.h(), marks);
}

Origami apply_word(const Origami& o, const Word& w) {
  Origami cur = o;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (it->gen == Gen::T) {
      cur = act_T(cur, it->power);
    } else {
      for (std::int64_t i = 0; i < ((it->power % 4) + 4) % 4; ++i) cur = act_S(cur);
    }
  }
  return cur;
}

Origami apply_matrix(const Origami& o, const Matrix2& g) {
  return apply_word(o, matrix_to_word(g));
}

bool in_veech_group(const Origami& o, const Matrix2& g) {
  auto target = canonical_code(o);
  Origami image = apply_matrix(o, g);
  if (canonical_code(image) == target) return true;
  return canonical_code(rotate_half(image)) == target;
}

std::string format_cycles(const Perm& p) {
  std::ostringstream os;
  for (const auto& cyc : perm_cycles(p)) {
    if (cyc.size() < 2) continue;
    os << '(';
    for (std::size_t i = 0; i < cyc.size(); ++i) os << (i ? " " : "") << cyc[i] + 1;
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

Perm parse_cycles(int n, std::string_view text) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<char> used(n, 0);
  std::size_t i = 0;
  auto fail = [&](const std::string& why, std::size_t col) {
    return Error(ErrorKind::ParseError,
                 "column " + std::to_string(col + 1) + ": " + why + " in '" + std::string(text) + "'");
  };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw fail("expected '('", i);
    ++i;
    std::vector<int> cyc;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw fail("unbalanced parenthesis", i);
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw fail("expected a square number", i);
      std::size_t start = i;
      long value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        if (value > n) throw fail("square number out of range", start);
        ++i;
      }
      if (value < 1 || value > n) throw fail("square number out of range", start);
      int sq = static_cast<int>(value) - 1;
      if (used[sq]) throw Error(ErrorKind::BadPermutation, "square " + std::to_string(value) + " repeated");
      used[sq] = 1;
      cyc.push_back(sq);
    }
    for (std::size_t j = 0; j < cyc.size(); ++j) p[cyc[j]] = cyc[(j + 1) % cyc.size()];
    skip_ws();
  }
  return p;
}

namespace examples {

Origami torus() { return Origami::build({0}, {0}, MarkAll{}); }

Origami two_torus() { return Origami::build({1, 0}, {0, 1}, MarkAll{}); }

Origami l_shape() { return Origami::build({1, 0, 2}, {2, 1, 0}, MarkSingular{}); }

Origami one_cylinder_h2() { return Origami::build({1, 2, 3, 0}, {1, 0, 2, 3}, MarkSingular{}); }

}  // namespace examples

}  // namespace sqt

namespace sqt {

std::string Origami::to_text() const {
  std::ostringstream os;
  os << "n=" << n() << "\nh=" << format_cycles(h_) << "\nv=" << format_cycles(v_) << "\nmarked=";
  bool all = true;
  bool singular_only = true;
  bool any_singular = false;
  for (const auto& vc : vertices_) {
    all = all && vc.marked;
    any_singular = any_singular || vc.singular();
    if (vc.marked != vc.singular()) singular_only = false;
  }
  if (all) {
    os << "all";
  } else if (singular_only && any_singular) {
    os << "singular";
  } else {
    bool first = true;
    for (const auto& vc : vertices_) {
      if (!vc.marked) continue;
      os << (first ? "" : ",") << vc.base_squares.front() + 1 << ":BL";
      first = false;
    }
  }
  os << "\n";
  return os.str();
}

}  // namespace sqt
