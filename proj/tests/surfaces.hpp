#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "sqt/origami.hpp"

namespace sqt::testing {

inline Origami T1() { return examples::torus(); }
inline Origami O2() { return examples::two_torus(); }
inline Origami L3() { return examples::l_shape(); }
inline Origami W4() { return examples::one_cylinder_h2(); }

inline Origami relabel(const Origami& o, const std::vector<int>& sigma) {
  const int n = o.n();
  Perm h(n), v(n);
  std::vector<char> marks(n);
  auto old_marks = o.marked_corners();
  for (int s = 0; s < n; ++s) {
    h[sigma[s]] = sigma[o.right(s)];
    v[sigma[s]] = sigma[o.up(s)];
    marks[sigma[s]] = old_marks[s];
  }
  return Origami::from_marked_corners(h, v, marks);
}

inline std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Random connected origami with singular marking.
inline Origami random_origami(int n, std::mt19937_64& rng) {
  for (;;) {
    Perm h = random_perm(n, rng);
    Perm v = random_perm(n, rng);
    try {
      return Origami::build(h, v, MarkSingular{});
    } catch (...) {
    }
  }
}

inline Matrix2 random_sl2(std::mt19937_64& rng, int steps = 6) {
  Matrix2 m;
  std::uniform_int_distribution<int> k(-3, 3);
  for (int i = 0; i < steps; ++i) m = m * Matrix2::U(k(rng)) * Matrix2::S();
  return m;
}

}  // namespace sqt::testing
