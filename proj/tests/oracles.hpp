#pragma once

// Brute-force reference computations shared by the unit tests. Nothing here
// calls into the library beyond plain data accessors.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<long>;

inline std::complex<double> e(double x) { return std::polar(1.0, 2 * M_PI * x); }

// Q and B on D_{N,N'} = (Z/N)^2 + (Z/N')^2 as fractions num/den with den = N N'.
struct Lnn {
  long N, Np;
  long size() const { return N * N * Np * Np; }
  Vec element(long idx) const {
    Vec v(4);
    const long ord[4] = {N, N, Np, Np};
    for (int i = 3; i >= 0; --i) {
      v[i] = idx % ord[i];
      idx /= ord[i];
    }
    return v;
  }
  long index(const Vec& v) const {
    const long ord[4] = {N, N, Np, Np};
    long idx = 0;
    for (int i = 0; i < 4; ++i) idx = idx * ord[i] + ((v[i] % ord[i]) + ord[i]) % ord[i];
    return idx;
  }
  // Q(v) mod 1 as a double in [0, 1)
  double q(const Vec& v) const {
    const mpq_class r = mpq_class(v[0] * v[1], N) + mpq_class(v[2] * v[3], Np);
    mpq_class t = r;
    t.canonicalize();
    double d = t.get_d();
    return d - std::floor(d);
  }
  bool q_zero(const Vec& v) const { return (v[0] * v[1] * Np + v[2] * v[3] * N) % (N * Np) == 0; }
  bool b_zero(const Vec& a, const Vec& b) const {
    return ((a[0] * b[1] + a[1] * b[0]) * Np + (a[2] * b[3] + a[3] * b[2]) * N) % (N * Np) == 0;
  }
  double b(const Vec& a, const Vec& b) const {
    mpq_class r = mpq_class(a[0] * b[1] + a[1] * b[0], N) + mpq_class(a[2] * b[3] + a[3] * b[2], Np);
    r.canonicalize();
    double d = r.get_d();
    return d - std::floor(d);
  }
  Vec add(const Vec& a, const Vec& b) const { return element(index({a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]})); }
};

// Closure of a generating set, as sorted element indices.
inline std::vector<long> span(const Lnn& D, const std::vector<Vec>& gens) {
  std::set<long> s = {0};
  std::vector<long> frontier = {0};
  while (!frontier.empty()) {
    std::vector<long> next;
    for (long x : frontier)
      for (const auto& g : gens) {
        const long y = D.index(D.add(D.element(x), g));
        if (s.insert(y).second) next.push_back(y);
      }
    frontier = next;
  }
  return {s.begin(), s.end()};
}

inline std::vector<long> perp(const Lnn& D, const std::vector<long>& h) {
  std::vector<long> out;
  for (long x = 0; x < D.size(); ++x) {
    bool ok = true;
    for (long y : h)
      if (!D.b_zero(D.element(x), D.element(y))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

// Every subgroup, by repeatedly joining a known subgroup with one more element.
inline std::set<std::vector<long>> all_subgroups(const Lnn& D) {
  std::set<std::vector<long>> found = {{0}};
  std::vector<std::vector<long>> todo = {{0}};
  while (!todo.empty()) {
    auto h = todo.back();
    todo.pop_back();
    for (long g = 0; g < D.size(); ++g) {
      if (std::binary_search(h.begin(), h.end(), g)) continue;
      std::vector<Vec> gens;
      for (long x : h) gens.push_back(D.element(x));
      gens.push_back(D.element(g));
      auto s = span(D, gens);
      if (found.insert(s).second) todo.push_back(s);
    }
  }
  return found;
}

// Number of subgroups of Z/m x Z/n: sum over a | m, b | n of gcd(a, b).
inline long subgroup_count(long m, long n) {
  long c = 0;
  for (long a = 1; a <= m; ++a)
    if (m % a == 0)
      for (long b = 1; b <= n; ++b)
        if (n % b == 0) c += std::gcd(a, b);
  return c;
}

inline long sigma0(long n) {
  long c = 0;
  for (long d = 1; d <= n; ++d) c += n % d == 0;
  return c;
}

// Partition numbers p(0..n-1) by the classical recurrence over parts.
inline std::vector<mpz_class> partitions(long n) {
  std::vector<mpz_class> p(n, 0);
  p[0] = 1;
  for (long k = 1; k < n; ++k)
    for (long j = k; j < n; ++j) p[j] += p[j - k];
  return p;
}

// Coefficients of prod_{n >= 1} (1 - q^n)^e to order len, by repeated binomial multiplication.
inline std::vector<mpz_class> euler_power(long e, long len) {
  std::vector<mpz_class> c(len, 0);
  c[0] = 1;
  for (long n = 1; n < len; ++n)
    for (long r = 0; r < std::abs(e); ++r) {
      if (e > 0) {
        for (long j = len - 1; j >= n; --j) c[j] -= c[j - n];
      } else {
        for (long j = n; j < len; ++j) c[j] += c[j - n];
      }
    }
  return c;
}

}  // namespace oracle
