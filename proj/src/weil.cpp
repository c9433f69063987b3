#include "weilrep/weil.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "weilrep/numtheory.hpp"

namespace weilrep {

namespace {

long checked_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("SL2 arithmetic overflow");
  return r;
}

long checked_add(long a, long b) {
  long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("SL2 arithmetic overflow");
  return r;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Mat2 Mat2::operator*(const Mat2& o) const {
  return {checked_add(checked_mul(a, o.a), checked_mul(b, o.c)), checked_add(checked_mul(a, o.b), checked_mul(b, o.d)),
          checked_add(checked_mul(c, o.a), checked_mul(d, o.c)), checked_add(checked_mul(c, o.b), checked_mul(d, o.d))};
}

std::string Mat2::str() const {
  std::ostringstream os;
  os << "[[" << a << ", " << b << "], [" << c << ", " << d << "]]";
  return os.str();
}

Mat2 mat_S() { return {0, -1, 1, 0}; }
Mat2 mat_T(long k) { return {1, k, 0, 1}; }

Mat2 SL2Word::evaluate() const {
  Mat2 r;
  for (const auto& t : tokens) r = r * (t.is_S ? mat_S() : mat_T(t.power));
  return r;
}

std::string SL2Word::str() const {
  if (tokens.empty()) return "I";
  std::ostringstream os;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) os << " ";
    if (tokens[i].is_S)
      os << "S";
    else
      os << "T^" << tokens[i].power;
  }
  return os.str();
}

SL2Word sl2_word(const Mat2& mat) {
  if (mat.det() != 1) throw std::invalid_argument("sl2_word: determinant must be 1, got " + mat.str());
  SL2Word w;
  w.target = mat;
  long a = mat.a, b = mat.b, c = mat.c, d = mat.d;
  // M = T^q S M' with M' = [[c, d], [-(a - qc), -(b - qd)]]; |c| strictly decreases.
  while (c != 0) {
    long q = floor_div(a, c);
    if (q != 0) w.tokens.push_back({false, q});
    a -= checked_mul(q, c);
    b -= checked_mul(q, d);
    w.tokens.push_back({true, 1});
    long na = c, nb = d, nc = -a, nd = -b;
    a = na;
    b = nb;
    c = nc;
    d = nd;
  }
  if (a == 1) {
    if (b != 0) w.tokens.push_back({false, b});
  } else {
    // [[-1, b], [0, -1]] = S^2 T^{-b}
    w.tokens.push_back({true, 1});
    w.tokens.push_back({true, 1});
    if (b != 0) w.tokens.push_back({false, -b});
  }
  if (w.evaluate() != mat) throw std::logic_error("sl2_word: decomposition does not reproduce the matrix");
  return w;
}

// ---------------------------------------------------------------------------
// WeilMatrix

namespace {

// Reduces sum_e counts[e] x^e modulo Phi_N; returns the phi(N) coefficients.
void reduce_counts(long N, const std::int64_t* counts, std::vector<__int128>& out) {
  const auto& poly = cyclotomic_polynomial(N);
  const long phi = static_cast<long>(poly.size()) - 1;
  out.assign(N, 0);
  for (long e = 0; e < N; ++e) out[e] = counts[e];
  for (long k = N - 1; k >= phi; --k) {
    __int128 c = out[k];
    if (c == 0) continue;
    for (long i = 0; i < phi; ++i)
      if (poly[i] != 0) out[k - phi + i] -= c * poly[i];
    out[k] = 0;
  }
  out.resize(phi);
}

void add_checked(std::int64_t& acc, std::int64_t a, std::int64_t b) {
  std::int64_t p;
  if (__builtin_mul_overflow(a, b, &p) || __builtin_add_overflow(acc, p, &acc))
    throw std::overflow_error("WeilMatrix: integer overflow in matrix product");
}

}  // namespace

WeilMatrix::WeilMatrix(FqModule m) : m_(std::move(m)), N_(m_.level()), rows_(m_.size()) {}

long WeilMatrix::conductor() const { return scale_.is_rational() ? N_ : std::lcm(N_, scale_.conductor()); }

WeilMatrix WeilMatrix::identity(const FqModule& m) { return rho_T(m, 0); }

WeilMatrix WeilMatrix::rho_T(const FqModule& m, long k) {
  WeilMatrix w(m);
  const long N = w.N_;
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto e = static_cast<std::int32_t>(mod(static_cast<long>(static_cast<__int128>(k % N) * m.q_num(i) % N), N));
    w.rows_[i].terms.push_back({e, 1});
    w.rows_[i].entries.push_back({static_cast<std::uint32_t>(i), 0, 1});
  }
  return w;
}

WeilMatrix WeilMatrix::rho_S(const FqModule& m) {
  WeilMatrix w(m);
  w.scale_ = s_prefactor(m);
  const long N = w.N_;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = w.rows_[i];
    row.terms.reserve(n);
    row.entries.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      row.terms.push_back({static_cast<std::int32_t>(mod(-m.b_num(i, j), N)), 1});
      row.entries.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j), 1});
    }
  }
  return w;
}

WeilMatrix rho_T(const FqModule& m) { return WeilMatrix::rho_T(m, 1); }
WeilMatrix rho_S(const FqModule& m) { return WeilMatrix::rho_S(m); }

const WeilMatrix::Entry* WeilMatrix::find(std::size_t i, std::size_t j) const {
  const auto& es = rows_[i].entries;
  auto it = std::lower_bound(es.begin(), es.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
  return (it != es.end() && it->col == j) ? &*it : nullptr;
}

CycNumber WeilMatrix::entry(std::size_t i, std::size_t j) const {
  if (i >= dim() || j >= dim()) throw std::invalid_argument("WeilMatrix::entry: index out of range");
  const Entry* e = find(i, j);
  if (e == nullptr) return CycNumber();
  std::vector<long> counts(N_, 0);
  for (std::uint32_t t = 0; t < e->len; ++t) {
    const Term& term = rows_[i].terms[e->start + t];
    counts[term.exp] += term.coeff;
  }
  return CycNumber::from_exponent_counts(N_, counts) * scale_;
}

WeilMatrix WeilMatrix::operator*(const WeilMatrix& o) const {
  if (!(m_ == o.m_)) throw std::invalid_argument("WeilMatrix: modules differ");
  WeilMatrix r(m_);
  r.scale_ = scale_ * o.scale_;
  const std::size_t n = dim();
  const long N = N_;
  std::vector<std::int64_t> acc(n * N, 0);
  std::vector<char> touched(n, 0);
  std::vector<std::uint32_t> cols;
  std::vector<__int128> red;
  for (std::size_t i = 0; i < n; ++i) {
    cols.clear();
    const Row& ra = rows_[i];
    for (const Entry& ea : ra.entries) {
      const Row& rb = o.rows_[ea.col];
      for (std::uint32_t ta = 0; ta < ea.len; ++ta) {
        const Term& A = ra.terms[ea.start + ta];
        for (const Entry& eb : rb.entries) {
          if (!touched[eb.col]) {
            touched[eb.col] = 1;
            cols.push_back(eb.col);
          }
          std::int64_t* slot = acc.data() + static_cast<std::size_t>(eb.col) * N;
          for (std::uint32_t tb = 0; tb < eb.len; ++tb) {
            const Term& B = rb.terms[eb.start + tb];
            long e = A.exp + B.exp;
            if (e >= N) e -= N;
            add_checked(slot[e], A.coeff, B.coeff);
          }
        }
      }
    }
    std::sort(cols.begin(), cols.end());
    Row& out = r.rows_[i];
    for (std::uint32_t j : cols) {
      touched[j] = 0;
      std::int64_t* slot = acc.data() + static_cast<std::size_t>(j) * N;
      std::size_t nz = 0;
      for (long e = 0; e < N; ++e) nz += slot[e] != 0;
      if (nz > 0) {
        reduce_counts(N, slot, red);
        std::size_t rnz = 0;
        for (auto v : red) rnz += v != 0;
        if (rnz > 0) {
          Entry en{j, static_cast<std::uint32_t>(out.terms.size()), 0};
          if (rnz < nz) {
            for (std::size_t t = 0; t < red.size(); ++t) {
              if (red[t] == 0) continue;
              if (red[t] > INT64_MAX || red[t] < INT64_MIN) throw std::overflow_error("WeilMatrix: entry overflow");
              out.terms.push_back({static_cast<std::int32_t>(t), static_cast<std::int64_t>(red[t])});
            }
          } else {
            for (long e = 0; e < N; ++e)
              if (slot[e] != 0) out.terms.push_back({static_cast<std::int32_t>(e), slot[e]});
          }
          en.len = static_cast<std::uint32_t>(out.terms.size() - en.start);
          out.entries.push_back(en);
        }
      }
      std::fill(slot, slot + N, 0);
    }
  }
  return r;
}

WeilMatrix WeilMatrix::conj_transpose() const {
  WeilMatrix r(m_);
  r.scale_ = scale_.conj();
  const std::size_t n = dim();
  std::vector<std::vector<std::pair<std::uint32_t, std::vector<Term>>>> tmp(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const Entry& e : rows_[i].entries) {
      std::vector<Term> ts;
      for (std::uint32_t t = 0; t < e.len; ++t) {
        Term term = rows_[i].terms[e.start + t];
        term.exp = static_cast<std::int32_t>(mod(-term.exp, N_));
        ts.push_back(term);
      }
      tmp[e.col].emplace_back(static_cast<std::uint32_t>(i), std::move(ts));
    }
  for (std::size_t j = 0; j < n; ++j) {
    Row& out = r.rows_[j];
    for (auto& [col, ts] : tmp[j]) {
      out.entries.push_back({col, static_cast<std::uint32_t>(out.terms.size()), static_cast<std::uint32_t>(ts.size())});
      out.terms.insert(out.terms.end(), ts.begin(), ts.end());
    }
  }
  return r;
}

bool WeilMatrix::operator==(const WeilMatrix& o) const {
  if (!(m_ == o.m_)) return false;
  const std::size_t n = dim();
  const bool same_scale = scale_ == o.scale_;
  std::vector<std::int64_t> counts(N_);
  std::vector<__int128> red;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> cols;
    for (const Entry& e : rows_[i].entries) cols.push_back(e.col);
    for (const Entry& e : o.rows_[i].entries) cols.push_back(e.col);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    for (std::uint32_t j : cols) {
      if (same_scale) {
        std::fill(counts.begin(), counts.end(), 0);
        if (const Entry* e = find(i, j))
          for (std::uint32_t t = 0; t < e->len; ++t) counts[rows_[i].terms[e->start + t].exp] += rows_[i].terms[e->start + t].coeff;
        if (const Entry* e = o.find(i, j))
          for (std::uint32_t t = 0; t < e->len; ++t)
            counts[o.rows_[i].terms[e->start + t].exp] -= o.rows_[i].terms[e->start + t].coeff;
        reduce_counts(N_, counts.data(), red);
        for (auto v : red)
          if (v != 0) return false;
      } else if (entry(i, j) != o.entry(i, j)) {
        return false;
      }
    }
  }
  return true;
}

GroupRingVector WeilMatrix::apply(const GroupRingVector& v) const {
  if (!(v.module() == m_)) throw std::invalid_argument("WeilMatrix::apply: module mismatch");
  GroupRingVector out(m_);
  for (std::size_t i = 0; i < dim(); ++i) {
    CycNumber s;
    for (const Entry& e : rows_[i].entries) {
      auto it = v.terms().find(e.col);
      if (it == v.terms().end()) continue;
      for (std::uint32_t t = 0; t < e.len; ++t) {
        const Term& term = rows_[i].terms[e.start + t];
        s += it->second.mul_root(term.exp, N_) * CycNumber(static_cast<long>(term.coeff));
      }
    }
    if (!s.is_zero()) out.set(i, s * scale_);
  }
  return out;
}

WeilMatrix rho(const FqModule& m, const Mat2& mat) {
  const SL2Word w = sl2_word(mat);
  WeilMatrix r = WeilMatrix::identity(m);
  WeilMatrix S = WeilMatrix::rho_S(m);
  for (const auto& t : w.tokens) r = r * (t.is_S ? S : WeilMatrix::rho_T(m, t.power));
  return r;
}

// ---------------------------------------------------------------------------
// Vector actions

GroupRingVector apply_T(const GroupRingVector& v, long k) {
  const FqModule& m = v.module();
  const long N = m.level();
  GroupRingVector out(m);
  for (const auto& [i, c] : v.terms())
    out.set(i, c.mul_root(static_cast<long>(static_cast<__int128>(mod(k, N)) * m.q_num(i) % N), N));
  return out;
}

GroupRingVector apply_S(const GroupRingVector& v) {
  const FqModule& m = v.module();
  const long N = m.level();
  const CycNumber s = s_prefactor(m);
  GroupRingVector out(m);
  std::vector<CycNumber> bucket(N);
  for (std::size_t b = 0; b < m.size(); ++b) {
    for (auto& x : bucket) x = CycNumber();
    for (const auto& [g, c] : v.terms()) bucket[m.b_num(b, g)] += c;
    CycNumber acc;
    for (long j = 0; j < N; ++j)
      if (!bucket[j].is_zero()) acc += bucket[j].mul_root(-j, N);
    if (!acc.is_zero()) out.set(b, acc * s);
  }
  return out;
}

GroupRingVector apply_word(const SL2Word& w, const GroupRingVector& v) {
  GroupRingVector r = v;
  for (auto it = w.tokens.rbegin(); it != w.tokens.rend(); ++it) r = it->is_S ? apply_S(r) : apply_T(r, it->power);
  return r;
}

GroupRingVector apply_rho(const Mat2& mat, const GroupRingVector& v) { return apply_word(sl2_word(mat), v); }

bool is_invariant(const GroupRingVector& v) { return apply_T(v) == v && apply_S(v) == v; }

Mat2 mu_matrix(long u, long N) {
  if (N < 1) throw std::invalid_argument("mu_matrix: N must be positive");
  if (std::gcd(u, N) != 1) throw std::invalid_argument("mu_matrix: u must be a unit mod N");
  const long uu = mod(u, N);
  const long a = inverse_mod(uu, N);
  const long b = (a * uu - 1) / N;
  return {a, b, N, uu};
}

MuReport verify_mu(const FqModule& m, long u) {
  MuReport rep;
  const long N = m.level();
  rep.matrix = mu_matrix(u, N);
  rep.word = sl2_word(rep.matrix);
  for (std::size_t g = 0; g < m.size(); ++g) {
    if (m.q_num(g) != 0) continue;
    ++rep.checked;
    GroupRingVector img = apply_word(rep.word, GroupRingVector::basis(m, g));
    if (img != GroupRingVector::basis(m, m.scale(u, g))) rep.violations.push_back(g);
  }
  return rep;
}

WeilMatrix averaging_operator(const FqModule& m) {
  WeilMatrix p(m);
  p.scale_ = CycNumber(mpq_class(1, m.level()));
  const long N = p.N_;
  std::vector<std::int64_t> counts(N);
  std::vector<__int128> red;
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::fill(counts.begin(), counts.end(), 0);
    for (long n = 0; n < N; ++n) ++counts[n * m.q_num(i) % N];
    reduce_counts(N, counts.data(), red);
    bool zero = std::all_of(red.begin(), red.end(), [](__int128 v) { return v == 0; });
    if (zero) continue;
    auto& row = p.rows_[i];
    row.entries.push_back({static_cast<std::uint32_t>(i), 0, 0});
    for (long e = 0; e < N; ++e)
      if (counts[e]) row.terms.push_back({static_cast<std::int32_t>(e), counts[e]});
    row.entries.back().len = static_cast<std::uint32_t>(row.terms.size());
  }
  return p * WeilMatrix::rho_S(m);
}

GroupRingVector averaging_apply(const GroupRingVector& v) {
  // (1/N) sum_n e(n Q(g)) is 1 for isotropic g and 0 otherwise.
  const GroupRingVector w = apply_S(v);
  GroupRingVector out(v.module());
  for (const auto& [i, c] : w.terms())
    if (v.module().q_num(i) == 0) out.set(i, c);
  return out;
}

// ---------------------------------------------------------------------------
// Invariants

namespace {

struct RowHash {
  std::size_t operator()(const std::vector<long>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (long x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

InvariantSpace invariant_space(const FqModule& m) {
  const long N = m.level();
  const std::size_t n = m.size();
  std::vector<std::size_t> iso;
  for (std::size_t i = 0; i < n; ++i)
    if (m.q_num(i) == 0) iso.push_back(i);
  const std::size_t ni = iso.size();
  std::vector<long> col_of(n, -1);
  for (std::size_t c = 0; c < ni; ++c) col_of[iso[c]] = static_cast<long>(c);

  // rho(T) v = v forces support on isotropic elements. The rho(S) equations
  // (rho(S) v)_b = v_b have entries s e(-B(b, g)) - delta_bg; each is expanded in
  // the power basis of Q(zeta_M) into rational equations.
  const CycNumber s = s_prefactor(m);
  const long M = s.is_rational() ? N : std::lcm(N, s.conductor());
  const long phi = euler_phi(M);
  std::vector<QVector> P(N, QVector(phi, 0));
  mpz_class den = 1;
  for (long k = 0; k < N; ++k) {
    const CycNumber x = s.mul_root(-k, N);
    const CycNumber y = x.is_rational() ? x : x.promote(M);
    for (std::size_t t = 0; t < y.coeffs().size(); ++t) P[k][t] = y.coeffs()[t];
    for (const auto& c : P[k]) den = lcm(den, c.get_den());
  }
  if (!den.fits_slong_p()) throw std::overflow_error("invariant_space: denominator too large");
  std::vector<std::vector<long>> Pint(N, std::vector<long>(phi));
  for (long k = 0; k < N; ++k)
    for (long t = 0; t < phi; ++t) {
      mpq_class v = P[k][t] * den;
      if (!v.get_num().fits_slong_p()) throw std::overflow_error("invariant_space: coefficient too large");
      Pint[k][t] = v.get_num().get_si();
    }
  const long dl = den.get_si();

  std::vector<std::vector<long>> rows;
  {
    std::unordered_set<std::vector<long>, RowHash> seen;
    std::vector<long> bcol(ni);
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < ni; ++c) bcol[c] = m.b_num(b, iso[c]);
      for (long t = 0; t < phi; ++t) {
        std::vector<long> row(ni);
        bool nz = false;
        for (std::size_t c = 0; c < ni; ++c) {
          row[c] = Pint[bcol[c]][t];
          if (t == 0 && iso[c] == b) row[c] -= dl;
          nz |= row[c] != 0;
        }
        if (nz && seen.insert(row).second) rows.push_back(std::move(row));
      }
    }
  }

  // Rank lower bound over Q(zeta_M) via the map zeta_M -> element of order M in F_p.
  auto field_rank = [&](int attempt) {
    const ModularPrime mp = modular_prime(M, attempt);
    const std::uint64_t sm = reduce_mod_p(s, mp);
    const std::uint64_t zN = powmod(mp.zeta, static_cast<std::uint64_t>(M / N), mp.p);
    const std::uint64_t zNinv = inv_mod_p(zN, mp.p);
    std::vector<std::uint64_t> pw(N);
    pw[0] = 1;
    for (long k = 1; k < N; ++k) pw[k] = mulmod(pw[k - 1], zNinv, mp.p);
    ModEchelon ech(mp.p, ni);
    for (std::size_t b = 0; b < n && ech.rank() < ni; ++b) {
      std::vector<std::uint64_t> row(ni);
      for (std::size_t c = 0; c < ni; ++c) {
        row[c] = mulmod(sm, pw[m.b_num(b, iso[c])], mp.p);
        if (iso[c] == b) row[c] = (row[c] + mp.p - 1) % mp.p;
      }
      ech.add(std::move(row));
    }
    return ech.rank();
  };

  const ModularPrime sel_prime = modular_prime(1, 0);
  auto to_mod = [&](const std::vector<long>& r) {
    std::vector<std::uint64_t> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = static_cast<std::uint64_t>(mod(r[i] % static_cast<long>(sel_prime.p), static_cast<long>(sel_prime.p)));
    return out;
  };

  InvariantSpace res;
  std::size_t r_lower = field_rank(0);
  std::vector<ZVector> selected;
  std::size_t next = 0;
  ModEchelon ech(sel_prime.p, ni);
  std::vector<ZVector> kernel;
  while (true) {
    while (next < rows.size() && ech.rank() < r_lower) {
      if (ech.add(to_mod(rows[next]))) selected.emplace_back(rows[next].begin(), rows[next].end());
      ++next;
    }
    kernel = kernel_basis(selected, ni);
    // Every equation must vanish on the candidate kernel.
    long failing = -1;
    for (std::size_t r = 0; r < rows.size() && failing < 0; ++r)
      for (const auto& v : kernel) {
        mpz_class acc = 0;
        for (std::size_t c = 0; c < ni; ++c)
          if (rows[r][c] != 0 && sgn(v[c]) != 0) acc += v[c] * rows[r][c];
        if (sgn(acc) != 0) {
          failing = static_cast<long>(r);
          break;
        }
      }
    if (failing < 0) break;
    selected.emplace_back(rows[failing].begin(), rows[failing].end());
    ech.add(to_mod(rows[failing]));
  }
  res.dimension = kernel.size();
  for (int attempt = 0; attempt < 4 && !res.certified; ++attempt) {
    if (attempt > 0) r_lower = std::max(r_lower, field_rank(attempt));
    res.certified = res.dimension == ni - r_lower;
  }
  for (const auto& v : kernel) {
    ZVector full(n, 0);
    for (std::size_t c = 0; c < ni; ++c) full[iso[c]] = v[c];
    res.basis.push_back(std::move(full));
  }
  return res;
}

std::vector<KVector> invariant_space_dense(const FqModule& m) {
  const std::size_t n = m.size();
  const WeilMatrix T = rho_T(m), S = rho_S(m);
  std::vector<KVector> rows;
  for (const WeilMatrix* A : {&T, &S})
    for (std::size_t i = 0; i < n; ++i) {
      KVector row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = A->entry(i, j) - CycNumber(i == j ? 1 : 0);
      rows.push_back(std::move(row));
    }
  return kernel_basis(std::move(rows), n);
}

std::size_t invariant_dimension_by_primary_parts(const FqModule& m) {
  std::size_t d = 1;
  for (const auto& comp : p_primary_decomposition(m)) d *= invariant_space(comp.module).dimension;
  return d;
}

SelfDualSpanReport verify_selfdual_span(const FqModule& m) {
  const auto family = enumerate_self_dual_isotropic(m);
  if (family.empty())
    throw std::invalid_argument("verify_selfdual_span: module has no self-dual isotropic subgroup");
  SelfDualSpanReport rep;
  const InvariantSpace inv = invariant_space(m);
  rep.invariant_dimension = inv.dimension;
  rep.family_size = family.size();
  std::vector<ZVector> vs;
  for (const auto& h : family) {
    ZVector v(m.size(), 0);
    for (std::size_t x : h.elements()) v[x] = 1;
    vs.push_back(std::move(v));
  }
  rep.family_rank = rank(vs, m.size());
  std::vector<ZVector> both = vs;
  both.insert(both.end(), inv.basis.begin(), inv.basis.end());
  const std::size_t joint = rank(both, m.size());
  rep.span_equal = rep.family_rank == inv.dimension && joint == inv.dimension;
  return rep;
}

AveragingReport verify_averaging_expansion(const FqModule& m) {
  const long N = m.level();
  const auto fac = factorize(N);
  if (fac.size() != 1) throw std::invalid_argument("verify_averaging_expansion: level must be a prime power > 1");
  const long p = fac[0].first;
  const long root = isqrt_exact(static_cast<long>(m.size()));
  if (root < 0) throw std::invalid_argument("verify_averaging_expansion: |D| must be a square");
  AveragingReport rep;
  for (const auto& h : enumerate_isotropic_subgroups(m)) {
    AveragingEntry ent;
    ent.subgroup_size = h.size();
    const Subgroup perp = complement(h);
    ent.self_dual = perp == h;
    mpq_class c(static_cast<long>(h.size()), root);
    c.canonicalize();
    const GroupRingVector lhs = averaging_apply(characteristic_vector(h));

    std::vector<Subgroup> primes, seconds;
    ent.maximal_subgroup_unique = true;
    for (std::size_t g : perp.elements()) {
      if (h.contains(g) || m.q_num(g) != 0) continue;
      std::vector<std::size_t> gens = h.gens();
      gens.push_back(g);
      Subgroup hp = Subgroup::generated_by(m, gens);
      gens.back() = m.scale(p, g);
      Subgroup hpp = Subgroup::generated_by(m, gens);
      auto it = std::find(primes.begin(), primes.end(), hp);
      if (it == primes.end()) {
        primes.push_back(std::move(hp));
        seconds.push_back(std::move(hpp));
      } else if (seconds[it - primes.begin()] != hpp) {
        ent.maximal_subgroup_unique = false;
      }
    }
    GroupRingVector rhs = characteristic_vector(h);
    long tilde = 0;
    for (std::size_t k = 0; k < primes.size(); ++k) {
      rhs = rhs + characteristic_vector(primes[k]) - characteristic_vector(seconds[k]);
      if (seconds[k] == h) ++tilde;
    }
    rhs = rhs * CycNumber(c);
    ent.expansion_holds = lhs == rhs;
    ent.n_H = c * (1 - tilde);
    ent.triangular = true;
    for (const auto& [i, x] : lhs.terms())
      if (!perp.contains(i)) ent.triangular = false;
    const std::string tag = "|H|=" + std::to_string(h.size()) + " first=" + std::to_string(h.elements().back());
    if (!ent.expansion_holds) rep.violations.push_back(tag + ": expansion of M v^H fails");
    if (!ent.maximal_subgroup_unique) rep.violations.push_back(tag + ": <H, p g> depends on g");
    if (!ent.triangular) rep.violations.push_back(tag + ": M v^H leaves H^perp");
    if ((ent.n_H == 1) != ent.self_dual) rep.violations.push_back(tag + ": n_H = 1 does not match self-duality");
    rep.entries.push_back(std::move(ent));
  }
  return rep;
}

FixedSpaceReport verify_poset_fixed_space(const FqModule& m) {
  FixedSpaceReport rep;
  const std::size_t n = m.size();
  std::vector<ZVector> iso_vs, sd_vs;
  for (const auto& h : enumerate_isotropic_subgroups(m)) {
    ZVector v(n, 0);
    for (std::size_t x : h.elements()) v[x] = 1;
    if (h.size() * h.size() == n && complement(h) == h) sd_vs.push_back(v);
    iso_vs.push_back(std::move(v));
  }
  // A basis of W = span{v^H : H isotropic}.
  const IntegerEchelon W = integer_rref(iso_vs, n);
  rep.isotropic_span_dim = W.rows.size();
  // Columns (M - 1) w_k, expressed as rows of the transposed system.
  std::vector<QVector> images;
  for (const auto& w : W.rows) {
    GroupRingVector gv = GroupRingVector::from_integers(m, w);
    QVector d = (averaging_apply(gv) - gv).rational_coords();
    images.push_back(std::move(d));
  }
  const std::size_t r = W.rows.size();
  std::vector<QVector> sys(n, QVector(r, 0));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < n; ++i) sys[i][k] = images[k][i];
  const auto coeffs = kernel_basis(sys, r);
  std::vector<ZVector> fixed;
  for (const auto& c : coeffs) {
    ZVector f(n, 0);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t i = 0; i < n; ++i) f[i] += c[k] * W.rows[k][i];
    fixed.push_back(std::move(f));
  }
  rep.fixed_dim = fixed.size();
  rep.self_dual_rank = rank(sd_vs, n);
  std::vector<ZVector> both = fixed;
  both.insert(both.end(), sd_vs.begin(), sd_vs.end());
  rep.equal = rep.fixed_dim == rep.self_dual_rank && rank(both, n) == rep.fixed_dim;
  return rep;
}

}  // namespace weilrep
