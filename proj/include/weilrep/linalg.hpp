#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "weilrep/cyclo.hpp"

namespace weilrep {

using QVector = std::vector<mpq_class>;
using ZVector = std::vector<mpz_class>;
using KVector = std::vector<CycNumber>;

// Integer row reduction with content removal. On return the nonzero rows are in
// reduced echelon form (zero above and below each pivot), pivots[i] is the
// pivot column of rows[i], and the zero rows have been dropped.
struct IntegerEchelon {
  std::vector<ZVector> rows;
  std::vector<std::size_t> pivots;
};
IntegerEchelon integer_rref(std::vector<ZVector> rows, std::size_t ncols);

std::size_t rank(const std::vector<ZVector>& rows, std::size_t ncols);
std::size_t rank(const std::vector<QVector>& rows, std::size_t ncols);

// Basis of {x : A x = 0} as primitive integer vectors (first nonzero entry
// positive), one per free column in increasing order.
std::vector<ZVector> kernel_basis(const std::vector<ZVector>& rows, std::size_t ncols);
std::vector<ZVector> kernel_basis(const std::vector<QVector>& rows, std::size_t ncols);

ZVector primitive(const QVector& v);
ZVector primitive(const ZVector& v);
std::vector<ZVector> to_integer_rows(const std::vector<QVector>& rows);

// Linear algebra over a cyclotomic field by plain Gauss-Jordan elimination.
std::size_t rank(std::vector<KVector> rows, std::size_t ncols);
std::vector<KVector> kernel_basis(std::vector<KVector> rows, std::size_t ncols);

// Prime fields of 61-62 bits used for rank certificates.
struct ModularPrime {
  std::uint64_t p = 0;
  std::uint64_t zeta = 0;  // element of exact multiplicative order M
  long M = 1;
};
// The i-th prime below 2^62 with p = 1 mod M, together with a primitive M-th root.
ModularPrime modular_prime(long M, int i);
std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p);
// Image of a rational under Z[1/den] -> F_p; throws if p divides the denominator.
std::uint64_t reduce_mod_p(const mpq_class& r, std::uint64_t p);
// Image of x under the ring map Q(zeta_M) -> F_p sending zeta_M to mp.zeta (x.conductor() | M).
std::uint64_t reduce_mod_p(const CycNumber& x, const ModularPrime& mp);

// Incremental row echelon basis over F_p.
class ModEchelon {
 public:
  ModEchelon(std::uint64_t p, std::size_t ncols) : p_(p), n_(ncols) {}
  // Returns true if the row was independent of the rows seen so far.
  bool add(std::vector<std::uint64_t> row);
  std::size_t rank() const { return rows_.size(); }

 private:
  std::uint64_t p_;
  std::size_t n_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<long> pivot_row_;  // column -> row index or -1
};

}  // namespace weilrep
