#include "weilrep/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "weilrep/numtheory.hpp"

namespace weilrep {

namespace {

mpq_class frac(long k, long m) {
  mpq_class q(k, m);
  q.canonicalize();
  return q;
}

long to_long(const mpz_class& z, const char* what) {
  if (!z.fits_slong_p()) throw std::overflow_error(std::string(what) + " does not fit a machine integer");
  return z.get_si();
}

long den_of(const mpq_class& q) { return to_long(q.get_den(), "denominator"); }

// Smallest integer n with n >= q.
long ceil_long(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return to_long(r, "exponent bound");
}

// Integer k with k/m = q, or throws if q is not in (1/m)Z.
long numerator_at(const mpq_class& q, long m) {
  mpq_class t = q * m;
  if (t.get_den() != 1) throw std::invalid_argument("exponent is not a multiple of 1/exp_den");
  return to_long(t.get_num(), "exponent");
}

// Number of j >= 0 with j/m < rel.
std::size_t slots_below(const mpq_class& rel, long m) {
  if (sgn(rel) <= 0) return 0;
  return static_cast<std::size_t>(ceil_long(rel * m));
}

std::string mpq_str(const mpq_class& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

// ---------------------------------------------------------------------------
// FracQSeries

FracQSeries::FracQSeries(long exp_den, mpq_class trunc) : m_(exp_den), trunc_(std::move(trunc)) {
  if (exp_den < 1) throw std::invalid_argument("FracQSeries: exponent denominator must be positive");
  trunc_.canonicalize();
}

FracQSeries FracQSeries::one(const mpq_class& trunc) { return monomial(CycNumber(1), 0, trunc); }

FracQSeries FracQSeries::monomial(const CycNumber& c, const mpq_class& exponent, const mpq_class& trunc) {
  mpq_class e = exponent;
  e.canonicalize();
  FracQSeries s(den_of(e), trunc);
  if (e < s.trunc_) s.set(to_long(e.get_num(), "exponent"), c);
  return s;
}

void FracQSeries::set(long k, const CycNumber& c) {
  if (frac(k, m_) >= trunc_) throw std::invalid_argument("FracQSeries::set: exponent at or beyond truncation");
  if (c.is_zero())
    terms_.erase(k);
  else
    terms_[k] = c;
}

CycNumber FracQSeries::coefficient(const mpq_class& exponent) const {
  if (exponent >= trunc_) throw std::domain_error("FracQSeries: coefficient beyond truncation is unknown");
  mpq_class t = exponent * m_;
  t.canonicalize();
  if (t.get_den() != 1) return CycNumber();
  auto it = terms_.find(to_long(t.get_num(), "exponent"));
  return it == terms_.end() ? CycNumber() : it->second;
}

mpq_class FracQSeries::lead_exponent() const { return terms_.empty() ? trunc_ : frac(terms_.begin()->first, m_); }

CycNumber FracQSeries::lead_coefficient() const {
  if (terms_.empty()) throw std::domain_error("FracQSeries: zero series has no leading coefficient");
  return terms_.begin()->second;
}

FracQSeries FracQSeries::refine(long new_den) const {
  if (new_den < 1 || new_den % m_ != 0) throw std::invalid_argument("refine: new denominator must be a multiple");
  FracQSeries r(new_den, trunc_);
  const long f = new_den / m_;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k * f, c);
  return r;
}

FracQSeries FracQSeries::truncated(const mpq_class& t) const {
  FracQSeries r(m_, std::min(t, trunc_));
  for (const auto& [k, c] : terms_)
    if (frac(k, m_) < r.trunc_) r.terms_.emplace(k, c);
  return r;
}

FracQSeries FracQSeries::scaled(const CycNumber& c) const {
  FracQSeries r(m_, trunc_);
  if (c.is_zero()) return r;
  for (const auto& [k, x] : terms_) r.terms_.emplace(k, x * c);
  return r;
}

FracQSeries FracQSeries::normalized() const { return is_zero() ? *this : scaled(lead_coefficient().inv()); }

std::string FracQSeries::str() const {
  std::ostringstream os;
  for (const auto& [k, c] : terms_) os << "q^(" << mpq_str(frac(k, m_)) << "): " << c.str() << "\n";
  os << "O(q^(" << mpq_str(trunc_) << "))\n";
  return os.str();
}

FracQSeries mul(const FracQSeries& a0, const FracQSeries& b0) {
  const long m = std::lcm(a0.exp_den(), b0.exp_den());
  const FracQSeries a = a0.refine(m), b = b0.refine(m);
  const mpq_class trunc = std::min(a.trunc() + b.lead_exponent(), b.trunc() + a.lead_exponent());
  FracQSeries r(m, trunc);
  if (a.is_zero() || b.is_zero()) return r;
  const long kmax = ceil_long(trunc * m);  // keep k < trunc*m
  std::map<long, CycNumber> acc;
  for (const auto& [i, x] : a.terms())
    for (const auto& [j, y] : b.terms()) {
      if (i + j >= kmax) break;
      acc[i + j] += x * y;
    }
  for (const auto& [k, c] : acc)
    if (frac(k, m) < trunc) r.set(k, c);
  return r;
}

FracQSeries div(const FracQSeries& a0, const FracQSeries& b0) {
  if (b0.is_zero()) throw std::domain_error("div: divisor has no nonzero leading term");
  const long m = std::lcm(a0.exp_den(), b0.exp_den());
  const FracQSeries a = a0.refine(m), b = b0.refine(m);
  const mpq_class la = a.lead_exponent(), lb = b.lead_exponent();
  const mpq_class lc = la - lb;
  const mpq_class trunc = lc + std::min(a.trunc() - la, b.trunc() - lb);
  FracQSeries r(m, trunc);
  if (a.is_zero()) return r;
  const long lbk = b.terms().begin()->first;
  const CycNumber binv = b.lead_coefficient().inv();
  std::map<long, CycNumber> rem(a.terms().begin(), a.terms().end());
  const long kmax = ceil_long(trunc * m);
  while (!rem.empty()) {
    auto it = rem.begin();
    const long ck = it->first - lbk;
    if (ck >= kmax) break;
    const CycNumber c = it->second * binv;
    r.set(ck, c);
    for (const auto& [j, y] : b.terms()) {
      if (ck + j - lbk >= kmax) break;
      CycNumber& slot = rem[ck + j];
      slot -= c * y;
      if (slot.is_zero()) rem.erase(ck + j);
    }
  }
  return r;
}

FracQSeries pow(const FracQSeries& a, long e) {
  if (e < 0) {
    const FracQSeries p = pow(a, -e);
    return div(FracQSeries::one(p.trunc() - p.lead_exponent()), p);
  }
  FracQSeries result = FracQSeries::one(a.trunc() - a.lead_exponent());
  FracQSeries base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

PrecisionReport compare_to_precision(const FracQSeries& a0, const FracQSeries& b0,
                                     const std::optional<mpq_class>& below) {
  const mpq_class limit = std::min(a0.trunc(), b0.trunc());
  PrecisionReport rep;
  rep.compared_below = below ? *below : limit;
  if (rep.compared_below > limit)
    throw std::invalid_argument("compare_to_precision: requested order " + mpq_str(rep.compared_below) +
                                " exceeds the known precision " + mpq_str(limit));
  const long m = std::lcm(a0.exp_den(), b0.exp_den());
  const FracQSeries a = a0.refine(m), b = b0.refine(m);
  auto ia = a.terms().begin(), ib = b.terms().begin();
  const CycNumber zero;
  while (ia != a.terms().end() || ib != b.terms().end()) {
    long k;
    const CycNumber *x = &zero, *y = &zero;
    if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
      k = ia->first;
      x = &ia->second;
      ++ia;
    } else if (ia == a.terms().end() || ib->first < ia->first) {
      k = ib->first;
      y = &ib->second;
      ++ib;
    } else {
      k = ia->first;
      x = &ia->second;
      y = &ib->second;
      ++ia;
      ++ib;
    }
    if (frac(k, m) >= rep.compared_below) break;
    if (*x != *y) {
      rep.first_mismatch = frac(k, m);
      rep.lhs_coeff = x->str();
      rep.rhs_coeff = y->str();
      return rep;
    }
  }
  rep.equal = true;
  return rep;
}

bool equals_to_precision(const FracQSeries& a, const FracQSeries& b) { return compare_to_precision(a, b).equal; }

// ---------------------------------------------------------------------------
// Eta quotients

mpq_class EtaQuotient::lead_exponent() const {
  mpq_class s = 0;
  for (const auto& f : factors) s += f.scale * f.exponent;
  s /= 24;
  s.canonicalize();
  return s;
}

CycNumber EtaQuotient::lead_coefficient() const {
  mpq_class t = 0;
  for (const auto& f : factors) t += f.shift * f.exponent;
  t /= 24;
  t.canonicalize();
  const long den = den_of(t);
  const long num = to_long(mpz_class(t.get_num() % den), "shift");
  return prefactor * CycNumber::root_of_unity(num, den);
}

EtaQuotient EtaQuotient::simplified() const {
  EtaQuotient r;
  r.prefactor = prefactor;
  for (auto f : factors) {
    f.scale.canonicalize();
    f.shift.canonicalize();
    auto it = std::find_if(r.factors.begin(), r.factors.end(),
                           [&](const EtaFactor& g) { return g.scale == f.scale && g.shift == f.shift; });
    if (it == r.factors.end())
      r.factors.push_back(f);
    else
      it->exponent += f.exponent;
  }
  r.factors.erase(std::remove_if(r.factors.begin(), r.factors.end(), [](const EtaFactor& f) { return f.exponent == 0; }),
                  r.factors.end());
  return r;
}

std::string EtaQuotient::str() const {
  std::ostringstream os;
  os << "(" << prefactor.str() << ")";
  for (const auto& f : factors) {
    os << " * eta(";
    if (f.scale != 1) os << mpq_str(f.scale) << "*";
    os << "tau";
    if (sgn(f.shift) > 0) os << " + " << mpq_str(f.shift);
    if (sgn(f.shift) < 0) os << " - " << mpq_str(mpq_class(-f.shift));
    os << ")";
    if (f.exponent != 1) os << "^" << f.exponent;
  }
  return os.str();
}

FracQSeries EtaQuotient::expand(const mpq_class& trunc) const {
  const EtaQuotient q = simplified();
  long mp = 1, R = 1;
  for (const auto& f : q.factors) {
    if (sgn(f.scale) <= 0) throw std::invalid_argument("eta factor scale must be positive");
    mp = std::lcm(mp, den_of(f.scale));
    R = std::lcm(R, den_of(f.shift));
  }
  const mpq_class lead = q.lead_exponent();
  const long m = std::lcm(mp, den_of(lead));
  FracQSeries out(m, trunc);
  const std::size_t L = slots_below(trunc - lead, mp);
  if (L == 0) return out;

  CyclicSeries buf(R, L);
  for (const auto& f : q.factors) {
    const long step = numerator_at(f.scale, mp);
    const long rden = den_of(f.shift);
    const long rnum = mod(to_long(mpz_class(f.shift.get_num() % rden), "shift"), rden) * (R / rden);
    // Euler: prod (1 - x^n) = sum_k (-1)^k x^{k(3k-1)/2}, k over all integers.
    std::vector<CyclicSeries::Term> terms{{0, 0, 1}};
    for (long k = 1;; ++k) {
      bool any = false;
      for (long kk : {k, -k}) {
        const long g = kk * (3 * kk - 1) / 2;
        const __int128 slot = static_cast<__int128>(g) * step;
        if (slot >= static_cast<__int128>(L)) continue;
        any = true;
        const long s = static_cast<long>(static_cast<__int128>(rnum) * g % R);
        terms.push_back({static_cast<std::size_t>(slot), s, (k % 2 == 0) ? 1 : -1});
      }
      if (!any) break;
    }
    for (long i = 0; i < std::abs(f.exponent); ++i) {
      if (f.exponent > 0)
        buf.mul_sparse(terms);
      else
        buf.div_sparse(terms);
    }
  }
  const CycNumber c = q.lead_coefficient();
  const long base = numerator_at(lead, m), f = m / mp;
  for (std::size_t j = 0; j < L; ++j)
    if (!buf.coefficient_is_zero(j)) out.set(base + static_cast<long>(j) * f, buf.coefficient(j) * c);
  return out;
}

FracQSeries eta_series(const mpq_class& d, const mpq_class& r, const mpq_class& trunc) {
  if (sgn(d) <= 0) throw std::invalid_argument("eta_series: scale must be positive");
  if (trunc <= d / 24) throw std::invalid_argument("eta_series: truncation must exceed d/24 (empty series)");
  EtaQuotient q;
  q.factors.push_back({d, r, 1});
  return q.expand(trunc);
}

FracQSeries eta_series_naive(const mpq_class& d0, const mpq_class& r0, const mpq_class& trunc) {
  mpq_class d = d0, r = r0;
  d.canonicalize();
  r.canonicalize();
  if (sgn(d) <= 0) throw std::invalid_argument("eta_series_naive: scale must be positive");
  if (trunc <= d / 24) throw std::invalid_argument("eta_series_naive: truncation must exceed d/24 (empty series)");
  const long mp = den_of(d), R = den_of(r);
  const long rnum = mod(to_long(mpz_class(r.get_num() % R), "shift"), R);
  const long step = numerator_at(d, mp);
  mpq_class lead = d / 24;
  lead.canonicalize();
  const std::size_t L = slots_below(trunc - lead, mp);
  // coefficient j is a residue mod x^R - 1
  std::vector<std::vector<mpz_class>> c(L, std::vector<mpz_class>(R));
  c[0][0] = 1;
  for (long n = 1; static_cast<std::size_t>(n * step) < L; ++n) {
    const std::size_t sh = static_cast<std::size_t>(n * step);
    const long s = static_cast<long>(static_cast<__int128>(n) * rnum % R);
    for (std::size_t j = L; j-- > sh;)
      for (long i = 0; i < R; ++i) c[j][(i + s) % R] -= c[j - sh][i];
  }
  EtaQuotient q;
  q.factors.push_back({d, r, 1});
  const CycNumber k = q.lead_coefficient();
  const long m = std::lcm(mp, den_of(lead));
  FracQSeries out(m, trunc);
  const long base = numerator_at(lead, m);
  for (std::size_t j = 0; j < L; ++j) {
    bool zero = std::all_of(c[j].begin(), c[j].end(), [](const mpz_class& z) { return sgn(z) == 0; });
    if (!zero) out.set(base + static_cast<long>(j) * (m / mp), CycNumber::from_exponent_counts(R, c[j]) * k);
  }
  return out;
}

PrecisionReport assert_identity(const EtaQuotient& lhs, const EtaQuotient& rhs, const mpq_class& trunc) {
  return compare_to_precision(lhs.expand(trunc), rhs.expand(trunc), trunc);
}

// ---------------------------------------------------------------------------
// CyclicSeries

CyclicSeries::CyclicSeries(long R, std::size_t length) : R_(R), L_(length), c_(length * R) {
  if (R < 1) throw std::invalid_argument("CyclicSeries: R must be positive");
  if (length > 0) c_[0] = 1;
}

void CyclicSeries::add_shifted(std::size_t dst, std::size_t src, long s, int sign) {
  mpz_class* d = c_.data() + dst * R_;
  const mpz_class* x = c_.data() + src * R_;
  s = mod(s, R_);
  for (long i = 0; i < R_; ++i) {
    if (sgn(x[i]) == 0) continue;
    long t = i + s;
    if (t >= R_) t -= R_;
    if (sign > 0)
      d[t] += x[i];
    else
      d[t] -= x[i];
  }
}

void CyclicSeries::mul_binomial(std::size_t k, long s, long e) {
  if (k == 0) throw std::invalid_argument("CyclicSeries::mul_binomial: k must be positive");
  for (long rep = 0; rep < std::abs(e); ++rep) {
    if (e > 0) {
      for (std::size_t j = L_; j-- > k;) add_shifted(j, j - k, s, -1);
    } else {
      for (std::size_t j = k; j < L_; ++j) add_shifted(j, j - k, s, 1);
    }
  }
}

namespace {
void check_unit_constant(const std::vector<CyclicSeries::Term>& terms) {
  int constants = 0;
  for (const auto& t : terms)
    if (t.k == 0) {
      if (t.s != 0 || t.sign != 1) throw std::invalid_argument("CyclicSeries: constant term must be 1");
      ++constants;
    }
  if (constants != 1) throw std::invalid_argument("CyclicSeries: exactly one constant term required");
}
}  // namespace

void CyclicSeries::mul_sparse(const std::vector<Term>& terms) {
  check_unit_constant(terms);
  for (std::size_t j = L_; j-- > 0;)
    for (const auto& t : terms)
      if (t.k > 0 && t.k <= j) add_shifted(j, j - t.k, t.s, t.sign);
}

void CyclicSeries::div_sparse(const std::vector<Term>& terms) {
  check_unit_constant(terms);
  for (std::size_t j = 0; j < L_; ++j)
    for (const auto& t : terms)
      if (t.k > 0 && t.k <= j) add_shifted(j, j - t.k, t.s, -t.sign);
}

bool CyclicSeries::coefficient_is_zero(std::size_t j) const {
  if (j >= L_) throw std::out_of_range("CyclicSeries: index out of range");
  const mpz_class* x = c_.data() + j * R_;
  if (std::all_of(x, x + R_, [](const mpz_class& z) { return sgn(z) == 0; })) return true;
  return coefficient(j).is_zero();
}

CycNumber CyclicSeries::coefficient(std::size_t j) const {
  if (j >= L_) throw std::out_of_range("CyclicSeries: index out of range");
  return CycNumber::from_exponent_counts(R_, std::vector<mpz_class>(c_.begin() + j * R_, c_.begin() + (j + 1) * R_));
}

}  // namespace weilrep
