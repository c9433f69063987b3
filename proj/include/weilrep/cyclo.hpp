#pragma once

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <string>
#include <vector>

namespace weilrep {

class FqModule;

// Exact element of Q(zeta_M), stored in the power basis 1, z, ..., z^(phi(M)-1)
// with z = exp(2 pi i / M). Trailing zero coefficients are trimmed, so zero is
// the empty vector. Values with different conductors compare by value.
//
// The cyclotomic polynomial data is cached per conductor behind a mutex; the
// cache is filled idempotently and is safe to use from several threads.
class CycNumber {
 public:
  CycNumber() = default;
  CycNumber(long n);  // NOLINT: implicit integer conversion is intended
  CycNumber(const mpq_class& r);  // NOLINT
  CycNumber(const mpz_class& r);  // NOLINT

  static CycNumber root_of_unity(long a, long M);
  // sum_e counts[e] z_M^e, e = 0 .. counts.size()-1 (exponents taken mod M)
  static CycNumber from_exponent_counts(long M, const std::vector<long>& counts);
  static CycNumber from_exponent_counts(long M, const std::vector<mpz_class>& counts);
  // sum_e c[e] z_M^e for an arbitrary-length polynomial; reduced on construction
  static CycNumber from_polynomial(long M, std::vector<mpq_class> c);

  long conductor() const { return M_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  mpq_class rational_value() const;  // throws std::domain_error if irrational

  CycNumber promote(long M2) const;

  CycNumber operator+(const CycNumber& o) const;
  CycNumber operator-(const CycNumber& o) const;
  CycNumber operator*(const CycNumber& o) const;
  CycNumber operator/(const CycNumber& o) const;
  CycNumber operator-() const;
  CycNumber& operator+=(const CycNumber& o);
  CycNumber& operator-=(const CycNumber& o);
  CycNumber& operator*=(const CycNumber& o);

  CycNumber inv() const;   // throws std::domain_error on zero
  CycNumber conj() const;  // complex conjugate
  CycNumber mul_root(long a, long M) const;  // this * z_M^a

  bool operator==(const CycNumber& o) const;
  bool operator!=(const CycNumber& o) const { return !(*this == o); }

  std::complex<double> to_complex() const;
  std::string str() const;  // "c0 + c1·ζ_M^1 + ..."

 private:
  CycNumber(long M, std::vector<mpq_class> c) : M_(M), c_(std::move(c)) {}
  void trim();

  long M_ = 1;
  std::vector<mpq_class> c_;
};

std::ostream& operator<<(std::ostream& os, const CycNumber& x);

// Integer coefficients of the M-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(long M);

// sum_{x in D} e(Q(x)), conductor lcm(8, level).
CycNumber gauss_sum(const FqModule& m);

// sqrt(n) for a perfect square n >= 1; throws NotASquareError otherwise.
long rational_sqrt(long n);

// e(s/8)/sqrt|D|, exact; rational times z_8^s when |D| is a square.
CycNumber s_prefactor(const FqModule& m);

}  // namespace weilrep
