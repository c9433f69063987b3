#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weilrep/cyclo.hpp"

namespace weilrep {

// sum_k c_k q^(k/exp_den), known for all exponents < trunc.
class FracQSeries {
 public:
  explicit FracQSeries(long exp_den = 1, mpq_class trunc = 0);
  static FracQSeries one(const mpq_class& trunc);
  static FracQSeries monomial(const CycNumber& c, const mpq_class& exponent, const mpq_class& trunc);

  long exp_den() const { return m_; }
  const mpq_class& trunc() const { return trunc_; }
  const std::map<long, CycNumber>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Sets the coefficient of q^(k/exp_den); ignored (and erased) when zero.
  void set(long k, const CycNumber& c);
  CycNumber coefficient(const mpq_class& exponent) const;

  // Leading exponent; for the zero series this is trunc.
  mpq_class lead_exponent() const;
  CycNumber lead_coefficient() const;  // throws std::domain_error on the zero series

  FracQSeries refine(long new_den) const;
  FracQSeries truncated(const mpq_class& t) const;
  FracQSeries scaled(const CycNumber& c) const;
  // Divides by the leading coefficient.
  FracQSeries normalized() const;

  std::string str() const;  // one "q^(k/m): coeff" line per term

 private:
  long m_;
  mpq_class trunc_;
  std::map<long, CycNumber> terms_;
};

FracQSeries mul(const FracQSeries& a, const FracQSeries& b);
FracQSeries div(const FracQSeries& a, const FracQSeries& b);
FracQSeries pow(const FracQSeries& a, long e);

struct PrecisionReport {
  bool equal = false;
  mpq_class compared_below;                  // all exponents < this were compared
  std::optional<mpq_class> first_mismatch;  // exponent of the first difference
  std::string lhs_coeff, rhs_coeff;          // coefficients at first_mismatch
};

// Exact comparison on all exponents below min(a.trunc, b.trunc), or below
// `below` when given (which must not exceed either truncation).
PrecisionReport compare_to_precision(const FracQSeries& a, const FracQSeries& b,
                                     const std::optional<mpq_class>& below = std::nullopt);
bool equals_to_precision(const FracQSeries& a, const FracQSeries& b);

// eta(d tau + r)^e
struct EtaFactor {
  mpq_class scale = 1;
  mpq_class shift = 0;
  long exponent = 1;
  bool operator==(const EtaFactor& o) const = default;
};

struct EtaQuotient {
  CycNumber prefactor = CycNumber(1);
  std::vector<EtaFactor> factors;

  mpq_class lead_exponent() const;    // sum e d / 24
  CycNumber lead_coefficient() const;  // prefactor * prod e(r/24)^e
  // Expansion through the pentagonal-number series of each factor.
  FracQSeries expand(const mpq_class& trunc) const;
  // Merges factors with equal scale and shift and drops zero exponents.
  EtaQuotient simplified() const;
  std::string str() const;
};

// eta(d tau + r) = e(r/24) q^(d/24) prod_{n >= 1} (1 - e(n r) q^(n d))
FracQSeries eta_series(const mpq_class& d, const mpq_class& r, const mpq_class& trunc);
// Same series by multiplying out the binomial factors one at a time.
FracQSeries eta_series_naive(const mpq_class& d, const mpq_class& r, const mpq_class& trunc);

// Compares two eta quotients exactly below trunc, constants included.
PrecisionReport assert_identity(const EtaQuotient& lhs, const EtaQuotient& rhs, const mpq_class& trunc);

// Dense truncated series sum_{j < length} c_j t^j whose coefficients are integer
// combinations of R-th roots of unity, each stored as a residue mod x^R - 1.
class CyclicSeries {
 public:
  CyclicSeries(long R, std::size_t length);  // the constant series 1

  struct Term {
    std::size_t k;  // power of t
    long s;         // root of unity z_R^s
    int sign;
  };

  long R() const { return R_; }
  std::size_t length() const { return L_; }
  // Multiplies by (1 - z_R^s t^k)^e; e < 0 divides.
  void mul_binomial(std::size_t k, long s, long e);
  // Multiplies by, resp. divides by, sum sign z_R^s t^k; the t^0 term must be 1.
  void mul_sparse(const std::vector<Term>& terms);
  void div_sparse(const std::vector<Term>& terms);
  bool coefficient_is_zero(std::size_t j) const;
  CycNumber coefficient(std::size_t j) const;

 private:
  void add_shifted(std::size_t dst, std::size_t src, long s, int sign);
  long R_;
  std::size_t L_;
  std::vector<mpz_class> c_;
};

}  // namespace weilrep
