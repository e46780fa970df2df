#include "sqt/modular.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <tuple>

#include "sqt/error.hpp"

namespace sqt {

namespace {

std::int64_t dot2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return checked_narrow(static_cast<__int128>(a) * b + static_cast<__int128>(c) * d);
}

void push(Word& w, Gen g, std::int64_t p) {
  if (g == Gen::S) p = ((p % 4) + 4) % 4;
  if (p == 0) return;
  if (!w.empty() && w.back().gen == g) {
    std::int64_t q = w.back().power + p;
    if (g == Gen::S) q %= 4;
    if (q == 0) {
      w.pop_back();
    } else {
      w.back().power = q;
    }
    return;
  }
  w.push_back({g, p});
}

}  // namespace

std::int64_t content(Vec2 v) { return gcd64(v.x, v.y); }

Vec2 primitive(Vec2 v) {
  std::int64_t g = content(v);
  if (g == 0) throw Error(ErrorKind::InvalidArgument, "zero vector has no direction");
  return {v.x / g, v.y / g};
}

Slope Slope::of(Vec2 v) {
  Vec2 p = primitive(v);
  if (p.y < 0 || (p.y == 0 && p.x < 0)) p = -p;
  return Slope(p.x, p.y);
}

Rational Slope::value() const {
  if (is_infinite()) throw Error(ErrorKind::InvalidArgument, "infinite slope has no value");
  return Rational(x_, y_);
}

std::string Slope::to_string() const {
  if (is_infinite()) return "inf";
  return Rational(x_, y_).to_string();
}

Slope Slope::parse(std::string_view text) {
  std::string t(text);
  for (auto& ch : t) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (t == "inf" || t == "infinity" || t == "oo" || t == "1/0") return Slope::infinity();
  return Slope::of(Rational::parse(text));
}

std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  }
  __int128 l = static_cast<__int128>(a.x_) * b.y_;
  __int128 r = static_cast<__int128>(b.x_) * a.y_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::int64_t Matrix2::det() const {
  return checked_narrow(static_cast<__int128>(a) * d - static_cast<__int128>(b) * c);
}

Matrix2 Matrix2::canonical() const {
  for (std::int64_t e : {a, b, c, d}) {
    if (e > 0) return *this;
    if (e < 0) return negated();
  }
  return *this;
}

Vec2 Matrix2::operator()(Vec2 v) const {
  return {dot2(a, v.x, b, v.y), dot2(c, v.x, d, v.y)};
}

Matrix2 operator*(const Matrix2& l, const Matrix2& r) {
  return {dot2(l.a, r.a, l.b, r.c), dot2(l.a, r.b, l.b, r.d),
          dot2(l.c, r.a, l.d, r.c), dot2(l.c, r.b, l.d, r.d)};
}

std::string Matrix2::to_string() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

Matrix2 word_product(const Word& w) {
  Matrix2 m;
  for (const auto& s : w) {
    if (s.gen == Gen::S) {
      for (std::int64_t i = 0; i < ((s.power % 4) + 4) % 4; ++i) m = m * Matrix2::S();
    } else {
      m = m * Matrix2::U(s.power);
    }
  }
  return m;
}

Word word_inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) push(out, it->gen, -it->power);
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& s : w) {
    if (!out.empty()) out += ' ';
    out += s.gen == Gen::S ? "S" : "T";
    if (s.power != 1) out += "^" + std::to_string(s.power);
  }
  return out;
}

Word parse_word(std::string_view text) {
  Word w;
  std::size_t i = 0;
  auto fail = [&] { return Error(ErrorKind::ParseError, "bad word: '" + std::string(text) + "'"); };
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == '.') {
      ++i;
      continue;
    }
    if (ch == '1' && w.empty() && text.size() == 1) return w;
    Gen g;
    if (ch == 'S') {
      g = Gen::S;
    } else if (ch == 'T') {
      g = Gen::T;
    } else {
      throw fail();
    }
    ++i;
    std::int64_t p = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t j = i;
      if (j < text.size() && (text[j] == '-' || text[j] == '+')) ++j;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw fail();
      p = std::strtoll(std::string(text.substr(i, j - i)).c_str(), nullptr, 10);
      i = j;
    }
    push(w, g, p);
  }
  return w;
}

std::vector<int> word_letters(const Word& w) {
  std::vector<int> out;
  for (const auto& s : w) {
    if (s.gen == Gen::S) {
      for (std::int64_t i = 0; i < s.power % 2; ++i) out.push_back(0);
    } else {
      int letter = s.power > 0 ? 1 : 2;
      for (std::int64_t i = 0; i < std::abs(s.power); ++i) out.push_back(letter);
    }
  }
  return out;
}

Word matrix_to_word(const Matrix2& g) {
  if (g.det() != 1) throw Error(ErrorKind::InvalidArgument, "matrix is not in SL(2,Z): " + g.to_string());
  Word w;
  Matrix2 m = g;
  // Invariant: g = word_product(w) * m.
  while (m.c != 0) {
    std::int64_t q = Rational(m.a, m.c).floor();
    push(w, Gen::T, q);
    push(w, Gen::S, 1);
    // m <- S^-1 T^-q m
    m = Matrix2{0, 1, -1, 0} * (Matrix2::U(-q) * m);
  }
  if (m.a == 1) {
    push(w, Gen::T, m.b);
  } else {
    push(w, Gen::T, -m.b);
    push(w, Gen::S, 2);
  }
  return w;
}

Matrix2 direction_chart(const Slope& k) {
  const std::int64_t x = k.x(), y = k.y();
  if (y == 0) return Matrix2::identity();
  if (x == 0) return {0, 1, -1, 0};
  // Extended Euclid on (x, y) for one solution a0*x + b0*y = 1.
  std::int64_t r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = Rational(r0, r1).floor();
    std::int64_t r2 = r0 - q * r1, s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = r1, r1 = r2, s0 = s1, s1 = s2, t0 = t1, t1 = t2;
  }
  if (r0 < 0) s0 = -s0, t0 = -t0;
  // General solution a = s0 + t*y, b = t0 - t*x.
  std::int64_t base_t = Rational(t0, x).floor();
  Matrix2 best;
  bool have = false;
  for (std::int64_t t = base_t - 2; t <= base_t + 2; ++t) {
    std::int64_t a = s0 + t * y, b = t0 - t * x;
    Matrix2 m{a, b, -y, x};
    if (!have) {
      best = m;
      have = true;
      continue;
    }
    auto key = [](const Matrix2& g) {
      return std::tuple(g.b < 0 ? -g.b : g.b, g.a < 0 ? -g.a : g.a, g.b < 0);
    };
    if (key(m) < key(best)) best = m;
  }
  return best;
}

}  // namespace sqt
