#include "weilrep/mod1.hpp"

#include <numeric>
#include <stdexcept>

#include "weilrep/numtheory.hpp"

namespace weilrep {

Mod1Rational::Mod1Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("Mod1Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num = mod(num, den);
  long g = std::gcd(num, den);
  if (num == 0) g = den;
  num_ = num / g;
  den_ = den / g;
}

Mod1Rational Mod1Rational::operator+(const Mod1Rational& o) const {
  long l = std::lcm(den_, o.den_);
  return Mod1Rational(num_ * (l / den_) + o.num_ * (l / o.den_), l);
}

Mod1Rational Mod1Rational::operator-(const Mod1Rational& o) const { return *this + (-o); }

Mod1Rational Mod1Rational::operator-() const { return Mod1Rational(-num_, den_); }

Mod1Rational Mod1Rational::times(long k) const {
  __int128 t = static_cast<__int128>(num_) * mod(k, den_);
  return Mod1Rational(static_cast<long>(t % den_), den_);
}

std::string Mod1Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Mod1Rational Mod1Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      long n = std::stol(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return Mod1Rational(n, 1);
    }
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    long n = std::stol(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    long d = std::stol(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    return Mod1Rational(n, d);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("cannot parse Q/Z value '" + s + "'");
  }
}

std::ostream& operator<<(std::ostream& os, const Mod1Rational& r) { return os << r.str(); }

}  // namespace weilrep
