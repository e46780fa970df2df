#include "sqt/rational.hpp"

#include <cctype>
#include <limits>

#include "sqt/error.hpp"

namespace sqt {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadPermutation: return "BadPermutation";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::EmptyMarking: return "EmptyMarking";
    case ErrorKind::UnmarkedSingularity: return "UnmarkedSingularity";
    case ErrorKind::IrrationalDirection: return "IrrationalDirection";
    case ErrorKind::NotHorizontal: return "NotHorizontal";
    case ErrorKind::DegenerateRegion: return "DegenerateRegion";
    case ErrorKind::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::OrbitCapExceeded: return "OrbitCapExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

std::int64_t checked_narrow(__int128 x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < -std::numeric_limits<std::int64_t>::max()) {
    throw Error(ErrorKind::Overflow, "integer overflow in exact arithmetic");
  }
  return static_cast<std::int64_t>(x);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(gcd128(a, b));
}

Rational::Rational(std::int64_t n, std::int64_t d) {
  *this = from_wide(n, d);
}

Rational Rational::from_wide(__int128 n, __int128 d) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num_ = checked_narrow(n);
  r.den_ = checked_narrow(d);
  return r;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  return *this = from_wide(n, d);
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  __int128 n = static_cast<__int128>(num_) * o.num_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  return *this = from_wide(n, d);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
  __int128 n = static_cast<__int128>(num_) * o.den_;
  __int128 d = static_cast<__int128>(den_) * o.num_;
  return *this = from_wide(n, d);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&] {
    return Error(ErrorKind::ParseError, "not a rational number: '" + std::string(text) + "'");
  };
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw fail();
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto read_digits = [&](std::string_view& in, __int128& value, int& count) {
    count = 0;
    while (!in.empty() && std::isdigit(static_cast<unsigned char>(in.front()))) {
      value = value * 10 + (in.front() - '0');
      if (value > std::numeric_limits<std::int64_t>::max()) throw fail();
      in.remove_prefix(1);
      ++count;
    }
  };
  __int128 whole = 0;
  int digits = 0;
  read_digits(s, whole, digits);
  __int128 num = whole;
  __int128 den = 1;
  if (!s.empty() && s.front() == '/') {
    if (digits == 0) throw fail();
    s.remove_prefix(1);
    den = 0;
    int dd = 0;
    read_digits(s, den, dd);
    if (dd == 0 || den == 0) throw fail();
  } else if (!s.empty() && s.front() == '.') {
    s.remove_prefix(1);
    int fd = 0;
    while (!s.empty() && std::isdigit(static_cast<unsigned char>(s.front()))) {
      num = num * 10 + (s.front() - '0');
      den *= 10;
      if (den > std::numeric_limits<std::int64_t>::max()) throw fail();
      s.remove_prefix(1);
      ++fd;
    }
    if (digits == 0 && fd == 0) throw fail();
  } else if (digits == 0) {
    throw fail();
  }
  if (!s.empty()) throw fail();
  return from_wide(negative ? -num : num, den);
}

}  // namespace sqt
