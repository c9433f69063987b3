#include "weilrep/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include "weilrep/numtheory.hpp"

namespace weilrep {

namespace {

void remove_content(ZVector& row) {
  mpz_class g = 0;
  for (const auto& v : row) {
    if (sgn(v) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& v : row)
      if (sgn(v) != 0) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

IntegerEchelon integer_rref(std::vector<ZVector> rows, std::size_t ncols) {
  for (const auto& r : rows)
    if (r.size() != ncols) throw std::invalid_argument("integer_rref: ragged matrix");
  IntegerEchelon out;
  std::size_t top = 0;
  for (std::size_t col = 0; col < ncols && top < rows.size(); ++col) {
    // Prefer the pivot of smallest absolute value to limit growth.
    std::size_t best = rows.size();
    for (std::size_t i = top; i < rows.size(); ++i) {
      if (sgn(rows[i][col]) == 0) continue;
      if (best == rows.size() || mpz_cmpabs(rows[i][col].get_mpz_t(), rows[best][col].get_mpz_t()) < 0) best = i;
    }
    if (best == rows.size()) continue;
    std::swap(rows[top], rows[best]);
    ZVector& piv = rows[top];
    remove_content(piv);
    if (sgn(piv[col]) < 0)
      for (auto& v : piv) v = -v;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == top || sgn(rows[i][col]) == 0) continue;
      mpz_class g = gcd(piv[col], rows[i][col]);
      mpz_class a = piv[col] / g, b = rows[i][col] / g;
      ZVector& r = rows[i];
      for (std::size_t j = 0; j < ncols; ++j) {
        if (sgn(r[j]) == 0 && sgn(piv[j]) == 0) continue;
        r[j] = a * r[j] - b * piv[j];
      }
      remove_content(r);
    }
    out.pivots.push_back(col);
    ++top;
  }
  rows.resize(top);
  out.rows = std::move(rows);
  return out;
}

std::size_t rank(const std::vector<ZVector>& rows, std::size_t ncols) {
  return integer_rref(rows, ncols).rows.size();
}

std::vector<ZVector> to_integer_rows(const std::vector<QVector>& rows) {
  std::vector<ZVector> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(primitive(r));
  return out;
}

std::size_t rank(const std::vector<QVector>& rows, std::size_t ncols) {
  return rank(to_integer_rows(rows), ncols);
}

std::vector<ZVector> kernel_basis(const std::vector<ZVector>& rows, std::size_t ncols) {
  IntegerEchelon e = integer_rref(rows, ncols);
  std::vector<long> pivot_of(ncols, -1);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) pivot_of[e.pivots[i]] = static_cast<long>(i);
  mpz_class L = 1;
  for (std::size_t i = 0; i < e.rows.size(); ++i) L = lcm(L, e.rows[i][e.pivots[i]]);
  std::vector<ZVector> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (pivot_of[f] >= 0) continue;
    ZVector v(ncols, 0);
    v[f] = L;
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      const mpz_class& a = e.rows[i][f];
      if (sgn(a) == 0) continue;
      v[e.pivots[i]] = -a * (L / e.rows[i][e.pivots[i]]);
    }
    basis.push_back(primitive(v));
  }
  return basis;
}

std::vector<ZVector> kernel_basis(const std::vector<QVector>& rows, std::size_t ncols) {
  return kernel_basis(to_integer_rows(rows), ncols);
}

ZVector primitive(const ZVector& v) {
  ZVector r = v;
  remove_content(r);
  for (const auto& x : r) {
    if (sgn(x) == 0) continue;
    if (sgn(x) < 0)
      for (auto& y : r) y = -y;
    break;
  }
  return r;
}

ZVector primitive(const QVector& v) {
  mpz_class den = 1;
  for (const auto& x : v)
    if (sgn(x) != 0) den = lcm(den, x.get_den());
  ZVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpq_class t = v[i] * den;
    r[i] = t.get_num();
  }
  return primitive(r);
}

namespace {

// Gauss-Jordan over K; returns pivot columns and leaves rows reduced.
std::vector<std::size_t> k_rref(std::vector<KVector>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t top = 0;
  for (std::size_t col = 0; col < ncols && top < rows.size(); ++col) {
    std::size_t sel = rows.size();
    for (std::size_t i = top; i < rows.size(); ++i)
      if (!rows[i][col].is_zero()) {
        sel = i;
        break;
      }
    if (sel == rows.size()) continue;
    std::swap(rows[top], rows[sel]);
    const CycNumber inv = rows[top][col].inv();
    for (auto& x : rows[top])
      if (!x.is_zero()) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == top || rows[i][col].is_zero()) continue;
      const CycNumber f = rows[i][col];
      for (std::size_t j = 0; j < ncols; ++j)
        if (!rows[top][j].is_zero()) rows[i][j] -= f * rows[top][j];
    }
    pivots.push_back(col);
    ++top;
  }
  rows.resize(top);
  return pivots;
}

}  // namespace

std::size_t rank(std::vector<KVector> rows, std::size_t ncols) { return k_rref(rows, ncols).size(); }

std::vector<KVector> kernel_basis(std::vector<KVector> rows, std::size_t ncols) {
  auto pivots = k_rref(rows, ncols);
  std::vector<long> pivot_of(ncols, -1);
  for (std::size_t i = 0; i < pivots.size(); ++i) pivot_of[pivots[i]] = static_cast<long>(i);
  std::vector<KVector> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (pivot_of[f] >= 0) continue;
    KVector v(ncols);
    v[f] = CycNumber(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::domain_error("inv_mod_p: zero");
  return powmod(a, p - 2, p);
}

ModularPrime modular_prime(long M, int i) {
  if (M < 1) throw std::invalid_argument("modular_prime: M must be positive");
  const std::uint64_t m = static_cast<std::uint64_t>(M);
  std::uint64_t p = ((std::uint64_t{1} << 62) / m) * m + 1;
  int found = -1;
  while (true) {
    p -= m;
    if (p < (std::uint64_t{1} << 60)) throw std::runtime_error("modular_prime: search exhausted");
    if (!is_prime(p)) continue;
    if (++found == i) break;
  }
  ModularPrime mp;
  mp.p = p;
  mp.M = M;
  const auto fac = factorize(M);
  for (std::uint64_t g = 2;; ++g) {
    std::uint64_t z = powmod(g, (p - 1) / m, p);
    bool ok = true;
    for (auto [q, e] : fac)
      if (powmod(z, m / static_cast<std::uint64_t>(q), p) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      mp.zeta = z;
      break;
    }
  }
  return mp;
}

std::uint64_t reduce_mod_p(const mpq_class& r, std::uint64_t p) {
  mpz_class pz;
  mpz_import(pz.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  mpz_class n = r.get_num() % pz, d = r.get_den() % pz;
  if (n < 0) n += pz;
  if (d == 0) throw std::domain_error("reduce_mod_p: prime divides a denominator");
  auto to_u64 = [](const mpz_class& z) {
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, z.get_mpz_t());
    return v;
  };
  return mulmod(to_u64(n), inv_mod_p(to_u64(d), p), p);
}

std::uint64_t reduce_mod_p(const CycNumber& x, const ModularPrime& mp) {
  if (mp.M % x.conductor() != 0 && !x.is_rational())
    throw std::invalid_argument("reduce_mod_p: conductor does not divide M");
  const CycNumber y = x.is_rational() ? x : x.promote(mp.M);
  std::uint64_t acc = 0, pw = 1;
  for (const auto& c : y.coeffs()) {
    if (sgn(c) != 0) acc = (acc + mulmod(reduce_mod_p(c, mp.p), pw, mp.p)) % mp.p;
    pw = mulmod(pw, mp.zeta, mp.p);
  }
  return acc;
}

bool ModEchelon::add(std::vector<std::uint64_t> row) {
  if (row.size() != n_) throw std::invalid_argument("ModEchelon: wrong row length");
  if (pivot_row_.empty()) pivot_row_.assign(n_, -1);
  for (std::size_t col = 0; col < n_; ++col) {
    if (row[col] == 0) continue;
    long ri = pivot_row_[col];
    if (ri < 0) {
      const std::uint64_t inv = inv_mod_p(row[col], p_);
      for (std::size_t j = col; j < n_; ++j)
        if (row[j]) row[j] = mulmod(row[j], inv, p_);
      pivot_row_[col] = static_cast<long>(rows_.size());
      pivots_.push_back(col);
      rows_.push_back(std::move(row));
      return true;
    }
    const auto& r = rows_[ri];
    const std::uint64_t f = row[col];
    for (std::size_t j = col; j < n_; ++j)
      if (r[j]) row[j] = (row[j] + p_ - mulmod(f, r[j], p_)) % p_;
  }
  return false;
}

}  // namespace weilrep
