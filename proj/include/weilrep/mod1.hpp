#pragma once

#include <ostream>
#include <string>

namespace weilrep {

// An element num/den of Q/Z, always stored reduced with 0 <= num < den.
class Mod1Rational {
 public:
  Mod1Rational() = default;
  Mod1Rational(long num, long den);

  long num() const { return num_; }
  long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  Mod1Rational operator+(const Mod1Rational& o) const;
  Mod1Rational operator-(const Mod1Rational& o) const;
  Mod1Rational operator-() const;
  Mod1Rational times(long k) const;

  bool operator==(const Mod1Rational& o) const = default;

  std::string str() const;  // "num/den"
  static Mod1Rational parse(const std::string& s);

 private:
  long num_ = 0;
  long den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Mod1Rational& r);

}  // namespace weilrep
