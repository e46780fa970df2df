#pragma once

#include <cstdint>
#include <compare>
#include <string>
#include <string_view>

namespace sqt {

// Exact rational with 64-bit numerator/denominator.  Every intermediate is
// computed in 128 bits; results that do not fit raise Error(Overflow).
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  int sign() const { return (num_ > 0) - (num_ < 0); }
  bool is_integer() const { return den_ == 1; }
  std::int64_t floor() const;
  std::int64_t ceil() const;
  Rational abs() const { return num_ < 0 ? -*this : *this; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // "p" for integers, "p/q" otherwise.
  std::string to_string() const;

  // Accepts "p", "p/q", "-p/q" and finite decimals such as "0.25" or "-1.5".
  static Rational parse(std::string_view text);

 private:
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::int64_t gcd64(std::int64_t a, std::int64_t b);

// Narrowing with overflow detection.
std::int64_t checked_narrow(__int128 x);

}  // namespace sqt
