#include <map>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "sqt/error.hpp"
#include "sqt/origami.hpp"
#include "surfaces.hpp"

using namespace sqt;
using namespace sqt::testing;

namespace {

// Corner identification by union-find over glued edges; independent of the
// turn-based construction in the library.
std::multiset<int> corner_class_sizes(const Origami& o) {
  const int n = o.n();
  std::vector<int> parent(4 * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  auto id = [](int s, Corner c) { return 4 * s + static_cast<int>(c); };
  for (int s = 0; s < n; ++s) {
    unite(id(s, Corner::BR), id(o.right(s), Corner::BL));
    unite(id(s, Corner::TR), id(o.right(s), Corner::TL));
    unite(id(s, Corner::TL), id(o.up(s), Corner::BL));
    unite(id(s, Corner::TR), id(o.up(s), Corner::BR));
  }
  std::map<int, int> sizes;
  for (int i = 0; i < 4 * n; ++i) ++sizes[find(i)];
  std::multiset<int> out;
  for (auto [root, size] : sizes) out.insert(size);
  return out;
}

std::multiset<int> quarter_turns(const Origami& o) {
  std::multiset<int> out;
  for (const auto& vc : o.vertices()) out.insert(vc.quarter_turns());
  return out;
}

}  // namespace

TEST_CASE("build_origami examples") {
  Origami t = T1();
  REQUIRE(t.vertices().size() == 1);
  CHECK(t.vertices()[0].quarter_turns() == 4);
  CHECK(t.vertices()[0].marked);
  CHECK(t.genus() == 1);

  Origami l = build_origami(3, parse_cycles(3, "(1 2)(3)"), parse_cycles(3, "(1 3)(2)"), MarkSingular{});
  REQUIRE(l.vertices().size() == 1);
  CHECK(l.vertices()[0].quarter_turns() == 12);
  CHECK(l.genus() == 2);

  try {
    build_origami(2, {0, 1}, {0, 1}, MarkAll{});
    FAIL("expected Disconnected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Disconnected);
  }
  CHECK_THROWS_AS(build_origami(2, {0, 0}, {1, 0}, MarkAll{}), Error);
}

TEST_CASE("W4 has a 6pi class and a regular class, only the first marked") {
  Origami w = W4();
  REQUIRE(w.vertices().size() == 2);
  std::multiset<int> turns = quarter_turns(w);
  CHECK(turns == std::multiset<int>{4, 12});
  for (const auto& vc : w.vertices()) CHECK(vc.marked == (vc.quarter_turns() == 12));
}

TEST_CASE("explicit marking") {
  Origami w = build_origami(4, W4().h(), W4().v(), MarkExplicit{{{0, Corner::BL}, {0, Corner::TR}}});
  int marked = 0;
  for (const auto& vc : w.vertices()) marked += vc.marked;
  CHECK(marked >= 1);
  CHECK_THROWS_AS(build_origami(4, W4().h(), W4().v(), MarkExplicit{{}}), Error);
}

TEST_CASE("vertex classes agree with union-find corner gluing") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    Origami o = random_origami(n, rng);
    CHECK(quarter_turns(o) == corner_class_sizes(o));
    // Angle excess sum equals (4g - 4) pi, i.e. sum(turns - 4) = 8g - 8 quarter turns.
    int excess = 0;
    for (const auto& vc : o.vertices()) excess += vc.quarter_turns() - 4;
    CHECK(excess == 8 * o.genus() - 8);
    // Every incidence appears exactly once.
    std::set<CornerRef> seen;
    for (const auto& vc : o.vertices())
      for (auto c : vc.corners) CHECK(seen.insert(c).second);
    CHECK(seen.size() == static_cast<std::size_t>(4 * n));
  }
}

TEST_CASE("canonical form: idempotent and relabeling invariant") {
  CHECK(canonical_form(T1()).origami == T1());
  Origami l = L3();
  Origami swapped = relabel(l, {0, 2, 1});
  CHECK(canonical_code(swapped) == canonical_code(l));
  CHECK(is_isomorphic(swapped, l));
  CHECK_FALSE(is_isomorphic(l, W4()));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Origami o = random_origami(6, rng);
    CanonicalResult c1 = canonical_form(o);
    CanonicalResult c2 = canonical_form(c1.origami);
    CHECK(c1.origami == c2.origami);
    CHECK(is_isomorphic(relabel(o, random_perm(6, rng)), o));
    CHECK(relabel(o, c1.relabeling) == c1.origami);
  }
}

TEST_CASE("matrix_to_word multiplies out exactly") {
  CHECK(word_to_string(matrix_to_word(Matrix2::T())) == "T");
  CHECK(word_to_string(matrix_to_word(Matrix2::S())) == "S");
  Matrix2 lower{1, 0, 1, 1};
  CHECK(word_product(matrix_to_word(lower)) == lower);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    Matrix2 g = random_sl2(rng, 1 + trial % 9);
    Word w = matrix_to_word(g);
    CHECK(word_product(w) == g);
    CHECK(word_product(parse_word(word_to_string(w))) == g);
    CHECK(word_product(word_inverse(w)) == g.inverse());
  }
}

TEST_CASE("generator actions preserve the surface type") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Origami o = random_origami(1 + static_cast<int>(rng() % 7), rng);
    for (const Origami& img : {act_T(o), act_S(o), act_T(o, -3)}) {
      CHECK(img.n() == o.n());
      CHECK(quarter_turns(img) == quarter_turns(o));
    }
    CHECK(is_isomorphic(act_S(act_S(act_S(act_S(o)))), o));
    CHECK(is_isomorphic(act_T(act_T(o, 2), -2), o));
  }
}

TEST_CASE("apply_matrix is a group action") {
  CHECK(apply_matrix(L3(), Matrix2::identity()) == L3());
  CHECK(is_isomorphic(apply_matrix(T1(), Matrix2::T()), T1()));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix2 g = random_sl2(rng);
    CHECK(is_isomorphic(apply_matrix(apply_matrix(L3(), g), g.inverse()), L3()));
  }
  for (int trial = 0; trial < 30; ++trial) {
    Origami o = random_origami(5, rng);
    Matrix2 g1 = random_sl2(rng, 3), g2 = random_sl2(rng, 3);
    CHECK(is_isomorphic(apply_matrix(apply_matrix(o, g1), g2), apply_matrix(o, g2 * g1)));
  }
}

TEST_CASE("S is the quarter turn: marked corners follow the geometry") {
  // Mark only the bottom-left of square 1 in a 2x1 horizontal strip; after a
  // quarter turn the marked point sits at a top corner of the vertical strip.
  Origami o = Origami::from_marked_corners({1, 0}, {0, 1}, {1, 0});
  Origami r = act_S(o);
  // Rotated surface is a vertical strip: h trivial, v swaps.
  CHECK(r.h() == Perm{0, 1});
  CHECK(r.v() == Perm{1, 0});
  int marked = 0;
  for (const auto& vc : r.vertices()) marked += vc.marked;
  CHECK(marked == 1);
}

TEST_CASE("veech membership on the torus") {
  CHECK(in_veech_group(T1(), Matrix2::S()));
  CHECK(in_veech_group(T1(), Matrix2::T()));
  CHECK(in_veech_group(W4(), Matrix2::U(4)));
}

TEST_CASE("cycle parsing") {
  CHECK(parse_cycles(3, "(1 2)") == Perm{1, 0, 2});
  CHECK(parse_cycles(3, " ( 1 , 3 ) ( 2 ) ") == Perm{2, 1, 0});
  CHECK(parse_cycles(1, "()") == Perm{0});
  CHECK(format_cycles(Perm{1, 2, 0}) == "(1 2 3)");
  try {
    parse_cycles(3, "(1 2");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("unbalanced") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_cycles(2, "(1 3)"), Error);
}

TEST_CASE("rational and slope basics") {
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-6/4").to_string() == "-3/2");
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Slope::of(Vec2{2, 0}).is_infinite());
  CHECK(Slope::of(Vec2{0, -3}) == Slope::of(Rational(0)));
  CHECK(Slope::of(Vec2{-1, -2}).to_string() == "1/2");
  CHECK(Slope::parse("inf").is_infinite());
  CHECK(Matrix2{-1, 0, 0, -1}.is_projective_identity());
  CHECK(Matrix2{0, -1, 1, 0}.canonical() == Matrix2{0, 1, -1, 0});
}
