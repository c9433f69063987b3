#include "weilrep/cyclo.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "weilrep/errors.hpp"
#include "weilrep/fqmod.hpp"
#include "weilrep/numtheory.hpp"

namespace weilrep {

namespace {

constexpr long kTableLimit = 1L << 22;  // M·phi(M) entries kept for z^e lookups

struct CycloData {
  long M = 1;
  long phi = 1;
  std::vector<long> poly;   // monic, degree phi
  std::vector<long> table;  // row e holds z^e in the power basis, e in [0, M)
  const long* row(long e) const { return table.data() + e * phi; }
};

std::vector<long> poly_divexact(std::vector<long> num, const std::vector<long>& den) {
  // den monic
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    long c = num[k];
    if (c == 0) continue;
    q[k - dn] = c;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw std::logic_error("cyclotomic polynomial division not exact");
  return q;
}

std::mutex cache_mutex;
std::map<long, std::shared_ptr<const CycloData>> cache;

std::shared_ptr<const CycloData> build(long M);

const CycloData& data(long M) {
  if (M < 1) throw std::invalid_argument("cyclotomic conductor must be positive");
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(M);
    if (it != cache.end()) return *it->second;
  }
  // Built outside the lock (recursion); if two threads race, the first insert wins.
  auto d = build(M);
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto [it, inserted] = cache.emplace(M, std::move(d));
  return *it->second;
}

std::shared_ptr<const CycloData> build(long M) {
  auto d = std::make_shared<CycloData>();
  d->M = M;
  std::vector<long> p(M + 1, 0);
  p[0] = -1;
  p[M] = 1;
  for (long q : divisors(M))
    if (q < M) p = poly_divexact(std::move(p), data(q).poly);
  d->poly = std::move(p);
  d->phi = static_cast<long>(d->poly.size()) - 1;
  const long phi = d->phi;
  if (M * phi <= kTableLimit) {
    d->table.assign(M * phi, 0);
    std::vector<long> cur(phi, 0);
    cur[0] = 1;
    for (long e = 0; e < M; ++e) {
      std::copy(cur.begin(), cur.end(), d->table.begin() + e * phi);
      long top = cur[phi - 1];
      for (long i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      if (top != 0)
        for (long i = 0; i < phi; ++i) {
          long t;
          if (__builtin_mul_overflow(top, d->poly[i], &t) || __builtin_sub_overflow(cur[i], t, &cur[i]))
            throw std::overflow_error("cyclotomic power table overflow");
        }
    }
  }
  return d;
}

void reduce_poly(const CycloData& cd, std::vector<mpq_class>& p) {
  const long M = cd.M, phi = cd.phi;
  if (static_cast<long>(p.size()) > M) {
    for (std::size_t i = M; i < p.size(); ++i)
      if (sgn(p[i]) != 0) p[i % M] += p[i];
    p.resize(M);
  }
  for (long k = static_cast<long>(p.size()) - 1; k >= phi; --k) {
    if (sgn(p[k]) == 0) continue;
    const mpq_class c = p[k];
    for (long i = 0; i < phi; ++i)
      if (cd.poly[i] != 0) p[k - phi + i] -= c * cd.poly[i];
    p[k] = 0;
  }
  if (static_cast<long>(p.size()) > phi) p.resize(phi);
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

long common_conductor(const CycNumber& a, const CycNumber& b) {
  if (a.conductor() == b.conductor()) return a.conductor();
  if (a.is_rational()) return b.conductor();
  if (b.is_rational()) return a.conductor();
  return std::lcm(a.conductor(), b.conductor());
}

// Division with remainder in Q[x]; b nonzero.
void poly_divmod(std::vector<mpq_class> a, const std::vector<mpq_class>& b, std::vector<mpq_class>& q,
                 std::vector<mpq_class>& r) {
  const std::size_t db = b.size() - 1;
  q.assign(a.size() >= b.size() ? a.size() - db : 1, 0);
  for (std::size_t k = a.size(); k-- > db;) {
    if (sgn(a[k]) == 0) continue;
    mpq_class c = a[k] / b[db];
    q[k - db] = c;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
  }
  a.resize(std::min(a.size(), db));
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
  r = std::move(a);
}

std::vector<mpq_class> poly_mul(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<mpq_class> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (sgn(b[j]) != 0) c[i + j] += a[i] * b[j];
  }
  return c;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(long M) { return data(M).poly; }

CycNumber::CycNumber(long n) {
  if (n != 0) c_.emplace_back(n);
}

CycNumber::CycNumber(const mpq_class& r) {
  if (sgn(r) != 0) {
    c_.push_back(r);
    c_.back().canonicalize();
  }
}

CycNumber::CycNumber(const mpz_class& r) {
  if (sgn(r) != 0) c_.emplace_back(r);
}

void CycNumber::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

CycNumber CycNumber::root_of_unity(long a, long M) {
  const CycloData& cd = data(M);
  long e = mod(a, M);
  if (!cd.table.empty()) {
    std::vector<mpq_class> c(cd.phi);
    const long* r = cd.row(e);
    for (long i = 0; i < cd.phi; ++i) c[i] = r[i];
    CycNumber x(M, std::move(c));
    x.trim();
    return x;
  }
  std::vector<mpq_class> p(e + 1, 0);
  p[e] = 1;
  return from_polynomial(M, std::move(p));
}

CycNumber CycNumber::from_exponent_counts(long M, const std::vector<long>& counts) {
  const CycloData& cd = data(M);
  if (!cd.table.empty()) {
    std::vector<__int128> acc(cd.phi, 0);
    for (std::size_t e = 0; e < counts.size(); ++e) {
      if (counts[e] == 0) continue;
      const long* r = cd.row(static_cast<long>(e % M));
      for (long i = 0; i < cd.phi; ++i)
        if (r[i] != 0) acc[i] += static_cast<__int128>(counts[e]) * r[i];
    }
    std::vector<mpq_class> c(cd.phi);
    for (long i = 0; i < cd.phi; ++i) {
      __int128 v = acc[i];
      bool negv = v < 0;
      unsigned __int128 u = negv ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
      mpz_class z(static_cast<unsigned long>(u >> 64));
      z <<= 64;
      z += mpz_class(static_cast<unsigned long>(u & ~0UL));
      c[i] = negv ? mpq_class(-z) : mpq_class(z);
    }
    CycNumber x(M, std::move(c));
    x.trim();
    return x;
  }
  std::vector<mpq_class> p(counts.begin(), counts.end());
  return from_polynomial(M, std::move(p));
}

CycNumber CycNumber::from_exponent_counts(long M, const std::vector<mpz_class>& counts) {
  const CycloData& cd = data(M);
  if (!cd.table.empty()) {
    std::vector<mpz_class> acc(cd.phi, 0);
    for (std::size_t e = 0; e < counts.size(); ++e) {
      if (sgn(counts[e]) == 0) continue;
      const long* r = cd.row(static_cast<long>(e % M));
      for (long i = 0; i < cd.phi; ++i)
        if (r[i] != 0) acc[i] += counts[e] * r[i];
    }
    std::vector<mpq_class> c(acc.begin(), acc.end());
    CycNumber x(M, std::move(c));
    x.trim();
    return x;
  }
  std::vector<mpq_class> p(counts.begin(), counts.end());
  return from_polynomial(M, std::move(p));
}

CycNumber CycNumber::from_polynomial(long M, std::vector<mpq_class> c) {
  for (auto& x : c) x.canonicalize();
  reduce_poly(data(M), c);
  return CycNumber(M, std::move(c));
}

mpq_class CycNumber::rational_value() const {
  if (!is_rational()) throw std::domain_error("cyclotomic number is not rational: " + str());
  return c_.empty() ? mpq_class(0) : c_[0];
}

CycNumber CycNumber::promote(long M2) const {
  if (M2 == M_) return *this;
  if (is_rational()) {
    CycNumber x = *this;
    x.M_ = M2;
    return x;
  }
  if (M2 < 1 || M2 % M_ != 0)
    throw std::invalid_argument("promote: " + std::to_string(M2) + " is not a multiple of " + std::to_string(M_));
  const long k = M2 / M_;
  std::vector<mpq_class> p(k * (c_.size() - 1) + 1, 0);
  for (std::size_t j = 0; j < c_.size(); ++j) p[k * j] = c_[j];
  return from_polynomial(M2, std::move(p));
}

CycNumber CycNumber::operator+(const CycNumber& o) const {
  CycNumber r = *this;
  r += o;
  return r;
}

CycNumber CycNumber::operator-(const CycNumber& o) const {
  CycNumber r = *this;
  r -= o;
  return r;
}

CycNumber& CycNumber::operator+=(const CycNumber& o) {
  if (o.is_zero()) return *this;
  const long M = common_conductor(*this, o);
  if (M != M_) *this = promote(M);
  const CycNumber& b = o.M_ == M ? o : o.promote(M);
  if (c_.size() < b.c_.size()) c_.resize(b.c_.size(), 0);
  for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] += b.c_[i];
  M_ = M;
  trim();
  return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& o) { return *this += -o; }

CycNumber CycNumber::operator-() const {
  CycNumber r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

CycNumber CycNumber::operator*(const CycNumber& o) const {
  if (is_zero() || o.is_zero()) return CycNumber(common_conductor(*this, o), {});
  if (is_rational()) {
    CycNumber r = o;
    for (auto& c : r.c_) c *= c_[0];
    return r;
  }
  if (o.is_rational()) {
    CycNumber r = *this;
    for (auto& c : r.c_) c *= o.c_[0];
    return r;
  }
  const long M = common_conductor(*this, o);
  const CycNumber& a = M_ == M ? *this : promote(M);
  const CycNumber& b = o.M_ == M ? o : o.promote(M);
  return from_polynomial(M, poly_mul(a.c_, b.c_));
}

CycNumber& CycNumber::operator*=(const CycNumber& o) {
  *this = *this * o;
  return *this;
}

CycNumber CycNumber::inv() const {
  if (is_zero()) throw std::domain_error("division by zero in cyclotomic field");
  if (is_rational()) return CycNumber(M_, {1 / c_[0]});
  const CycloData& cd = data(M_);
  std::vector<mpq_class> r0(cd.poly.begin(), cd.poly.end()), r1 = c_;
  std::vector<mpq_class> s0, s1{1};
  while (r1.size() > 1) {
    std::vector<mpq_class> q, r;
    poly_divmod(r0, r1, q, r);
    std::vector<mpq_class> qs = poly_mul(q, s1);
    std::vector<mpq_class> s2 = s0;
    if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw std::logic_error("inverse: element shares a factor with the cyclotomic polynomial");
  for (auto& c : s1) c /= r1[0];
  return from_polynomial(M_, std::move(s1));
}

CycNumber CycNumber::operator/(const CycNumber& o) const { return *this * o.inv(); }

CycNumber CycNumber::conj() const {
  if (is_rational()) return *this;
  std::vector<mpq_class> p(M_, 0);
  for (std::size_t j = 0; j < c_.size(); ++j) p[(M_ - static_cast<long>(j)) % M_] += c_[j];
  return from_polynomial(M_, std::move(p));
}

CycNumber CycNumber::mul_root(long a, long M) const {
  if (is_zero()) return *this;
  const long L = is_rational() ? M : std::lcm(M_, M);
  const long e = mod(a, M) * (L / M) % L;
  const CycNumber x = M_ == L ? *this : promote(L);
  const CycloData& cd = data(L);
  if (!cd.table.empty()) {
    std::vector<mpq_class> c(cd.phi, 0);
    for (std::size_t j = 0; j < x.c_.size(); ++j) {
      if (sgn(x.c_[j]) == 0) continue;
      const long* r = cd.row((static_cast<long>(j) + e) % L);
      for (long i = 0; i < cd.phi; ++i)
        if (r[i] != 0) c[i] += x.c_[j] * r[i];
    }
    CycNumber y(L, std::move(c));
    y.trim();
    return y;
  }
  std::vector<mpq_class> p(L, 0);
  for (std::size_t j = 0; j < x.c_.size(); ++j) p[(static_cast<long>(j) + e) % L] += x.c_[j];
  return from_polynomial(L, std::move(p));
}

bool CycNumber::operator==(const CycNumber& o) const {
  if (M_ == o.M_ || is_rational() || o.is_rational()) {
    if (c_.size() != o.c_.size()) return false;
    if (M_ != o.M_ && c_.size() > 1) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != o.c_[i]) return false;
    return true;
  }
  const long L = std::lcm(M_, o.M_);
  return promote(L).c_ == o.promote(L).c_;
}

std::complex<double> CycNumber::to_complex() const {
  std::complex<double> s = 0;
  for (std::size_t j = 0; j < c_.size(); ++j)
    s += c_[j].get_d() * std::polar(1.0, 2 * M_PI * static_cast<double>(j) / static_cast<double>(M_));
  return s;
}

std::string CycNumber::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (sgn(c_[j]) == 0) continue;
    mpq_class c = c_[j];
    if (!first) {
      os << (sgn(c) < 0 ? " - " : " + ");
      c = abs(c);
    }
    if (j == 0) {
      os << c.get_str();
    } else {
      if (c == -1)
        os << "-";
      else if (c != 1)
        os << c.get_str() << "·";
      os << "ζ_" << M_ << "^" << j;
    }
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycNumber& x) { return os << x.str(); }

CycNumber gauss_sum(const FqModule& m) {
  const long L = m.level();
  std::vector<long> counts(L, 0);
  for (std::size_t i = 0; i < m.size(); ++i) ++counts[m.q_num(i)];
  return CycNumber::from_exponent_counts(L, counts).promote(std::lcm(8L, L));
}

long rational_sqrt(long n) {
  if (n < 1) throw std::invalid_argument("rational_sqrt: n must be positive");
  long r = isqrt_exact(n);
  if (r < 0) throw NotASquareError(std::to_string(n) + " is not a perfect square");
  return r;
}

int signature_mod8(const FqModule& m) {
  const CycNumber g = gauss_sum(m);
  const long n = static_cast<long>(m.size());
  const long r = isqrt_exact(n);
  if (r >= 0) {
    for (int s = 0; s < 8; ++s)
      if (g == CycNumber::root_of_unity(s, 8) * CycNumber(r)) return s;
    throw std::invalid_argument("signature_mod8: Gauss sum has wrong modulus (degenerate form?)");
  }
  // g^2 = |D| z_4^s fixes s mod 4; the complex embedding separates s from s + 4
  // (the two candidates are 2 sqrt|D| apart).
  const CycNumber g2 = g * g;
  for (int t = 0; t < 4; ++t) {
    if (g2 != CycNumber::root_of_unity(t, 4) * CycNumber(n)) continue;
    const std::complex<double> gz = g.to_complex();
    const double sq = std::sqrt(static_cast<double>(n));
    double d0 = std::abs(gz - sq * std::polar(1.0, 2 * M_PI * t / 8.0));
    double d1 = std::abs(gz - sq * std::polar(1.0, 2 * M_PI * (t + 4) / 8.0));
    return d0 < d1 ? t : t + 4;
  }
  throw std::invalid_argument("signature_mod8: Gauss sum has wrong modulus (degenerate form?)");
}

CycNumber s_prefactor(const FqModule& m) {
  const int s = signature_mod8(m);
  const long n = static_cast<long>(m.size());
  const long r = isqrt_exact(n);
  if (r >= 0) return CycNumber::root_of_unity(s, 8) * CycNumber(mpq_class(1, r));
  return CycNumber::root_of_unity(s, 4) * gauss_sum(m).conj() * CycNumber(mpq_class(1, n));
}

}  // namespace weilrep
