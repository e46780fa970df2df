#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqt/rational.hpp"

namespace sqt {

// Integer plane vector (holonomy of a segment on a square-tiled surface).
struct Vec2 {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(std::int64_t k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend auto operator<=>(const Vec2&, const Vec2&) = default;

  std::int64_t norm2() const { return x * x + y * y; }
  bool is_zero() const { return x == 0 && y == 0; }
};

inline std::int64_t cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Largest k with v = k * primitive(v).
std::int64_t content(Vec2 v);
Vec2 primitive(Vec2 v);

// A boundary point of the upper half plane, k = x/y, stored as a primitive
// pair with y >= 0; infinity is (1, 0).  Horizontal holonomy has slope
// infinity and vertical holonomy has slope 0.
class Slope {
 public:
  Slope() : x_(1), y_(0) {}
  static Slope infinity() { return Slope(); }
  static Slope of(Vec2 holonomy);
  static Slope of(const Rational& r) { return of(Vec2{r.num(), r.den()}); }

  std::int64_t x() const { return x_; }
  std::int64_t y() const { return y_; }
  bool is_infinite() const { return y_ == 0; }
  Rational value() const;  // precondition: finite
  Vec2 vector() const { return {x_, y_}; }

  std::string to_string() const;  // "inf" or "p/q" / "p"
  static Slope parse(std::string_view text);

  friend bool operator==(const Slope&, const Slope&) = default;
  // Order of the extended real line with infinity last.
  friend std::strong_ordering operator<=>(const Slope& a, const Slope& b);

 private:
  Slope(std::int64_t x, std::int64_t y) : x_(x), y_(y) {}
  std::int64_t x_;
  std::int64_t y_;
};

// 2x2 integer matrix of determinant one.  Elements of PSL(2,Z) are handled
// through a canonical representative: the first nonzero entry in reading
// order (a, b, c, d) is positive.
struct Matrix2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  static Matrix2 identity() { return {}; }
  static Matrix2 S() { return {0, -1, 1, 0}; }
  static Matrix2 T() { return {1, 1, 0, 1}; }
  static Matrix2 U(std::int64_t m) { return {1, m, 0, 1}; }
  static Matrix2 minus_identity() { return {-1, 0, 0, -1}; }

  std::int64_t det() const;
  Matrix2 inverse() const { return {d, -b, -c, a}; }
  Matrix2 negated() const { return {-a, -b, -c, -d}; }
  Matrix2 canonical() const;
  bool projectively_equal(const Matrix2& o) const { return canonical() == o.canonical(); }
  bool is_projective_identity() const { return canonical() == Matrix2{}; }

  Vec2 operator()(Vec2 v) const;
  Slope operator()(const Slope& k) const { return Slope::of((*this)(k.vector())); }

  friend Matrix2 operator*(const Matrix2& l, const Matrix2& r);
  friend auto operator<=>(const Matrix2&, const Matrix2&) = default;

  std::string to_string() const;  // "[[a,b],[c,d]]"
};

enum class Gen : std::uint8_t { S, T };

struct Syllable {
  Gen gen;
  std::int64_t power;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// Word over S and T, stored as syllables (T^k is one syllable).
using Word = std::vector<Syllable>;

Matrix2 word_product(const Word& w);
Word word_inverse(const Word& w);
std::string word_to_string(const Word& w);  // e.g. "T^3 S T^-1"; identity is "1"
Word parse_word(std::string_view text);
// Expands into letters 0 = S, 1 = T, 2 = T^-1 with S treated as an
// involution (valid in PSL(2,Z)).
std::vector<int> word_letters(const Word& w);

// Continued-fraction decomposition.  The product of the returned word equals
// g exactly (as an SL(2,Z) matrix); S^2 is appended when g needs -I.
Word matrix_to_word(const Matrix2& g);

// A = [[a, b], [-y, x]] with a*x + b*y = 1, sending the primitive vector
// (x, y) of k to (1, 0).  Among the Bezout solutions: smallest |b|, then
// smallest |a|, then b >= 0.
Matrix2 direction_chart(const Slope& k);

}  // namespace sqt
