#include "weilrep/borcherds.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "weilrep/errors.hpp"
#include "weilrep/linalg.hpp"
#include "weilrep/numtheory.hpp"
#include "weilrep/weil.hpp"

namespace weilrep {

namespace {

mpq_class frac_part(mpq_class r) {
  r.canonicalize();
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  mpq_class out = r - mpq_class(f);
  out.canonicalize();
  return out;
}

mpq_class ratio(long a, long b) {
  mpq_class r(a, b);
  r.canonicalize();
  return r;
}

CycNumber e_of(const mpq_class& r) {
  const mpq_class f = frac_part(r);
  return CycNumber::root_of_unity(f.get_num().get_si(), f.get_den().get_si());
}

long lead_numerator(const mpq_class& v, long den) {
  mpq_class k = v * den;
  k.canonicalize();
  if (k.get_den() != 1) throw std::logic_error("exponent off the grid");
  return k.get_num().get_si();
}

std::vector<EtaFactor> sorted_factors(const EtaQuotient& q) {
  std::vector<EtaFactor> f = q.simplified().factors;
  std::sort(f.begin(), f.end(), [](const EtaFactor& a, const EtaFactor& b) {
    if (a.scale != b.scale) return a.scale < b.scale;
    if (a.shift != b.shift) return a.shift < b.shift;
    return a.exponent < b.exponent;
  });
  return f;
}

EtaQuotient power(const EtaQuotient& q, long e) {
  EtaQuotient r;
  r.prefactor = CycNumber(1);
  for (long i = 0; i < std::abs(e); ++i) r.prefactor *= q.prefactor;
  if (e < 0) r.prefactor = r.prefactor.inv();
  for (auto f : q.factors) {
    f.exponent *= e;
    r.factors.push_back(f);
  }
  return r;
}

void accumulate(EtaQuotient& acc, const EtaQuotient& q) {
  acc.prefactor *= q.prefactor;
  acc.factors.insert(acc.factors.end(), q.factors.begin(), q.factors.end());
}

// Integer solution of A x = b with A given by columns, via a column Hermite form.
std::optional<std::vector<mpz_class>> solve_integral(const std::vector<ZVector>& cols, const ZVector& b) {
  const std::size_t k = cols.size(), m = b.size();
  std::vector<ZVector> M = cols;  // M[j][r]
  std::vector<ZVector> U(k, ZVector(k, 0));
  for (std::size_t j = 0; j < k; ++j) U[j][j] = 1;
  auto combine = [&](std::size_t i, std::size_t j, const mpz_class& a, const mpz_class& bb, const mpz_class& c,
                     const mpz_class& d) {
    // (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
    for (auto* X : {&M, &U}) {
      ZVector& ci = (*X)[i];
      ZVector& cj = (*X)[j];
      for (std::size_t r = 0; r < ci.size(); ++r) {
        mpz_class ni = a * ci[r] + bb * cj[r];
        mpz_class nj = c * ci[r] + d * cj[r];
        ci[r] = ni;
        cj[r] = nj;
      }
    }
  };
  std::vector<std::size_t> pivot_row;
  std::size_t c = 0;
  for (std::size_t r = 0; r < m && c < k; ++r) {
    for (std::size_t j = c + 1; j < k; ++j) {
      if (sgn(M[j][r]) == 0) continue;
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), M[c][r].get_mpz_t(), M[j][r].get_mpz_t());
      const mpz_class u = M[c][r] / g, v = M[j][r] / g;
      combine(c, j, s, t, -v, u);
    }
    if (sgn(M[c][r]) == 0) continue;
    pivot_row.push_back(r);
    ++c;
  }
  std::vector<mpz_class> y(k, 0);
  for (std::size_t i = 0; i < pivot_row.size(); ++i) {
    const std::size_t r = pivot_row[i];
    mpz_class rest = b[r];
    for (std::size_t j = 0; j < i; ++j) rest -= M[j][r] * y[j];
    if (!mpz_divisible_p(rest.get_mpz_t(), M[i][r].get_mpz_t())) return std::nullopt;
    y[i] = rest / M[i][r];
  }
  for (std::size_t r = 0; r < m; ++r) {
    mpz_class s = 0;
    for (std::size_t j = 0; j < pivot_row.size(); ++j) s += M[j][r] * y[j];
    if (s != b[r]) return std::nullopt;
  }
  std::vector<mpz_class> x(k, 0);
  for (std::size_t j = 0; j < pivot_row.size(); ++j)
    for (std::size_t i = 0; i < k; ++i) x[i] += U[j][i] * y[j];
  return x;
}

EtaIdentity make_identity(const EtaQuotient& e, long terms) {
  EtaQuotient lhs, rhs;
  for (const auto& f : e.simplified().factors) {
    if (sgn(f.shift) != 0) {
      EtaFactor g = f;
      g.exponent = -f.exponent;
      lhs.factors.push_back(g);
    } else {
      rhs.factors.push_back(f);
    }
  }
  if (lhs.factors.empty()) {
    // Nothing is shifted: move the negative powers to the left.
    std::vector<EtaFactor> pos, neg;
    for (const auto& f : rhs.factors) (f.exponent > 0 ? pos : neg).push_back(f);
    for (auto& f : neg) f.exponent = -f.exponent;
    lhs.factors = neg;
    rhs.factors = pos;
  }
  if (!lhs.factors.empty() &&
      std::all_of(lhs.factors.begin(), lhs.factors.end(), [](const EtaFactor& f) { return f.exponent < 0; })) {
    for (auto& f : lhs.factors) f.exponent = -f.exponent;
    for (auto& f : rhs.factors) f.exponent = -f.exponent;
  }
  EtaIdentity id;
  id.lhs = lhs;
  if (lhs.lead_exponent() != rhs.lead_exponent()) {
    // Not a constant: report the first exponent where the two sides differ.
    id.rhs = rhs;
    id.constant = CycNumber(0);
    id.report.equal = false;
    id.report.compared_below = std::min(lhs.lead_exponent(), rhs.lead_exponent());
    id.report.first_mismatch = id.report.compared_below;
    id.report.lhs_coeff = lhs.lead_exponent() <= rhs.lead_exponent() ? lhs.lead_coefficient().str() : "0";
    id.report.rhs_coeff = rhs.lead_exponent() <= lhs.lead_exponent() ? rhs.lead_coefficient().str() : "0";
    return id;
  }
  id.constant = lhs.lead_coefficient() / rhs.lead_coefficient();
  rhs.prefactor = id.constant;
  id.rhs = rhs;
  id.report = assert_identity(id.lhs, id.rhs, lhs.lead_exponent() + terms);
  return id;
}

}  // namespace

InputForm::InputForm(long N, long Nprime, std::vector<long> coeffs)
    : N_(N), Np_(Nprime), m_(lnn_module(N, Nprime)), c_(std::move(coeffs)) {
  if (c_.size() != m_.size())
    throw std::invalid_argument("InputForm: expected " + std::to_string(m_.size()) + " coefficients");
  ZVector z(c_.begin(), c_.end());
  if (!is_invariant(GroupRingVector::from_integers(m_, z)))
    throw std::invalid_argument("InputForm: vector is not invariant under the Weil representation");
}

InputForm InputForm::from_subgroups(long N, long Nprime, const std::vector<std::pair<Subgroup, long>>& terms) {
  const FqModule m = lnn_module(N, Nprime);
  std::vector<long> c(m.size(), 0);
  for (const auto& [h, a] : terms) {
    if (h.parent().orders() != m.orders()) throw std::invalid_argument("InputForm: subgroup of a different module");
    for (std::size_t i : h.elements()) c[i] += a;
  }
  return InputForm(N, Nprime, std::move(c));
}

long InputForm::at(long x, long y, long z, long w) const {
  const long coords[4] = {x, y, z, w};
  return c_[m_.encode(coords)];
}

WeylVector weyl_vector(const InputForm& f) {
  long s1 = 0, s2 = 0;
  for (long x = 0; x < f.N(); ++x)
    for (long y = 0; y < f.Nprime(); ++y) {
      s1 += f.at(0, x, 0, y);
      s2 += f.at(0, x, y, 0);
    }
  return {ratio(s1, 24), ratio(s2, 24 * f.Nprime())};
}

LiftResult lift(const InputForm& f, long terms) {
  if (terms < 1) throw std::invalid_argument("lift: need at least one term");
  const long N = f.N(), Np = f.Nprime(), den = 24 * Np;
  LiftResult r;
  r.weight = ratio(f.at(0, 0, 0, 0), 2);
  r.weyl = weyl_vector(f);
  const mpq_class rho1 = r.weyl.rho_kappa * Np, rho2 = r.weyl.rho_kappa_prime / Np;

  CyclicSeries s1(N, static_cast<std::size_t>(terms));
  for (long lam = 1; lam < terms; ++lam)
    for (long x = 0; x < N; ++x)
      if (long c = f.at(0, x, 0, lam % Np)) s1.mul_binomial(static_cast<std::size_t>(lam), x, c);
  r.psi1 = FracQSeries(den, rho1 + terms);
  const long k1 = lead_numerator(rho1, den);
  for (long j = 0; j < terms; ++j)
    if (!s1.coefficient_is_zero(static_cast<std::size_t>(j))) r.psi1.set(k1 + j * den, s1.coefficient(static_cast<std::size_t>(j)));

  const long L = terms * Np;
  CyclicSeries s2(N, static_cast<std::size_t>(L));
  for (long lam = 1; lam < L; ++lam)
    for (long x = 0; x < N; ++x)
      if (long c = f.at(0, x, lam % Np, 0)) s2.mul_binomial(static_cast<std::size_t>(lam), x, c);
  r.psi2 = FracQSeries(den, rho2 + terms);
  const long k2 = lead_numerator(rho2, den);
  for (long j = 0; j < L; ++j)
    if (!s2.coefficient_is_zero(static_cast<std::size_t>(j))) r.psi2.set(k2 + j * 24, s2.coefficient(static_cast<std::size_t>(j)));
  return r;
}

std::vector<CatalogEntry> lift_catalog(long N, long Nprime) {
  if (N < 1 || Nprime < 1) throw std::invalid_argument("lift_catalog: N and N' must be positive");
  if (N % Nprime != 0) return {};
  std::vector<CatalogEntry> out = family_exNy0(N, Nprime);
  if (N != Nprime) return out;
  std::set<std::vector<std::size_t>> seen;
  for (const auto& e : out) seen.insert(assemble(e.spec).elements());
  for (const auto& p : normalized_params(N)) {
    if (p.y == 0 || !classify_params(p).is_coisotropic) continue;
    for (long u = 1; u < N; ++u) {
      if (std::gcd(u, N) != 1) continue;
      CatalogEntry e;
      try {
        e = family_exy_y(N, p, u);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (seen.insert(assemble(e.spec).elements()).second) out.push_back(std::move(e));
    }
  }
  return out;
}

CatalogDecomposition decompose(const InputForm& f) {
  CatalogDecomposition d;
  d.entries = lift_catalog(f.N(), f.Nprime());
  const std::size_t n = f.module().size();
  std::vector<ZVector> cols;
  std::vector<bool> used(n, false);
  for (const auto& e : d.entries) {
    ZVector c(n, 0);
    const Subgroup h = assemble(e.spec);
    for (std::size_t i : h.elements()) {
      c[i] = 1;
      used[i] = true;
    }
    cols.push_back(std::move(c));
  }
  // Keep only coordinates that some column or f touches.
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) {
      rows.push_back(i);
    } else if (f.coeffs()[i] != 0) {
      throw UnsupportedInput("decompose: f is outside the span of the cataloged subgroups");
    }
  }
  std::vector<ZVector> sub(cols.size(), ZVector(rows.size()));
  ZVector b(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    b[r] = f.coeffs()[rows[r]];
    for (std::size_t j = 0; j < cols.size(); ++j) sub[j][r] = cols[j][rows[r]];
  }
  // Try an independent set of columns first, favouring subgroups inside the
  // support of f; its solution is unique and usually sparse. The full column
  // Hermite form decides integrality in general.
  std::vector<std::size_t> order;
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      bool inside = true;
      for (std::size_t r = 0; r < rows.size() && inside; ++r)
        if (sgn(sub[j][r]) != 0 && b[r] == 0) inside = false;
      if (inside == (pass == 0)) order.push_back(j);
    }
  const std::uint64_t prime = modular_prime(1, 0).p;
  ModEchelon ech(prime, rows.size());
  std::vector<std::size_t> basis;
  std::vector<ZVector> basis_cols;
  for (std::size_t j : order) {
    std::vector<std::uint64_t> v(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) v[r] = sgn(sub[j][r]) != 0 ? 1 : 0;
    if (ech.add(std::move(v))) {
      basis.push_back(j);
      basis_cols.push_back(sub[j]);
    }
  }
  std::optional<std::vector<mpz_class>> x;
  if (auto y = solve_integral(basis_cols, b)) {
    x.emplace(cols.size(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) (*x)[basis[i]] = (*y)[i];
  } else {
    x = solve_integral(sub, b);
  }
  if (!x) throw UnsupportedInput("decompose: f is not an integral combination of the cataloged subgroups");
  for (const auto& v : *x) {
    if (!v.fits_slong_p()) throw ResourceLimitError("decompose: coefficient overflow");
    d.alpha.push_back(v.get_si());
  }
  return d;
}

std::pair<EtaQuotient, EtaQuotient> entry_eta(const CatalogEntry& e) {
  EtaQuotient t1, t2;
  using K = CatalogEntry::Kind;
  if (e.kind == K::YMinusY) {
    const long N = e.xyz.N, x = e.xyz.x, y = e.xyz.y, z = e.xyz.z;
    const long uinv = N == 1 ? 0 : inverse_mod(e.unit, N);
    t1.factors.push_back({mpq_class(x * z), frac_part(ratio(e.unit * x * z, N)), 1});
    t2.factors.push_back({ratio(x, z), frac_part(ratio(-uinv * y, z)), 1});
    return {t1, t2};
  }
  const long N = e.spec.first.N, Np = e.spec.second.N;
  if (e.kind == K::FirstFamily) {
    t1.factors.push_back({mpq_class(e.d1 * e.d4), frac_part(ratio(-e.unit * e.d1 * e.d2, N)), 1});
    t2.factors.push_back({ratio(e.d1, e.d4), 0, 1});
  } else {
    const long ainv = Np == 1 ? 0 : inverse_mod(e.unit, Np);
    t1.factors.push_back({ratio(Np * e.d1, e.d3), 0, 1});
    t2.factors.push_back({ratio(e.d1 * e.d3, Np), frac_part(ratio(ainv * e.d1 * e.d2, N)), 1});
  }
  return {t1, t2};
}

std::pair<EtaQuotient, EtaQuotient> eta_identify(const InputForm& f) {
  const CatalogDecomposition d = decompose(f);
  EtaQuotient t1, t2;
  for (std::size_t i = 0; i < d.entries.size(); ++i) {
    if (d.alpha[i] == 0) continue;
    auto [a, b] = entry_eta(d.entries[i]);
    accumulate(t1, power(a, d.alpha[i]));
    accumulate(t2, power(b, d.alpha[i]));
  }
  return {t1.simplified(), t2.simplified()};
}

LiftCheck check_lift_against_eta(const InputForm& f, long terms) {
  LiftResult r = lift(f, terms);
  auto [e1, e2] = eta_identify(f);
  LiftCheck c;
  c.leads_match = e1.lead_exponent() == r.psi1.lead_exponent() && e2.lead_exponent() == r.psi2.lead_exponent();
  c.report1 = compare_to_precision(r.psi1.normalized(), e1.expand(r.psi1.trunc()).normalized());
  c.report2 = compare_to_precision(r.psi2.normalized(), e2.expand(r.psi2.trunc()).normalized());
  c.psi1_matches = c.report1.equal;
  c.psi2_matches = c.report2.equal;
  return c;
}

CharacterReport character_trivial_check(long N, const std::vector<long>& alpha) {
  CharacterReport r;
  r.divisors = divisors(N);
  if (alpha.size() != r.divisors.size()) throw std::invalid_argument("character_trivial_check: one coefficient per divisor");
  r.alpha = alpha;
  long s1 = 0, s2 = 0, k = 0;
  std::map<long, long> val;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const long d = r.divisors[i];
    s1 += d * alpha[i];
    s2 += (N / d) * alpha[i];
    k += alpha[i];
    for (auto [p, e] : factorize(d)) val[p] += e * alpha[i];
  }
  r.weyl_first_integral = mod(s1, 24) == 0;
  r.weyl_second_integral = mod(s2, 24) == 0;
  r.weight_even_integer = mod(k, 4) == 0;
  r.product_is_square = std::all_of(val.begin(), val.end(), [](const auto& pe) { return pe.second % 2 == 0; });
  return r;
}

CharacterReport character_trivial_check(const InputForm& f) {
  if (f.Nprime() != 1) throw std::invalid_argument("character_trivial_check: needs N' = 1");
  const CatalogDecomposition d = decompose(f);
  const std::vector<long> divs = divisors(f.N());
  std::vector<long> alpha(divs.size(), 0);
  for (std::size_t i = 0; i < d.entries.size(); ++i) {
    // Over D_{N,1} every cataloged subgroup is H_{d,0,N/d} with d = d1.
    const auto pos = std::find(divs.begin(), divs.end(), d.entries[i].d1) - divs.begin();
    alpha[static_cast<std::size_t>(pos)] += d.alpha[i];
  }
  return character_trivial_check(f.N(), alpha);
}

std::string EtaIdentity::str() const { return lhs.str() + " = " + rhs.str(); }

RelationLift relation_to_eta_identity(long N, long p, const ZVector& rel, long terms) {
  const std::vector<CatalogEntry> list = selfdual_list_Np(N, p);
  if (rel.size() != list.size()) throw std::invalid_argument("relation_to_eta_identity: wrong relation length");
  const FqModule m = lnn_module(N, p);
  std::vector<mpz_class> sum(m.size(), 0);
  EtaQuotient t1, t2;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (sgn(rel[i]) == 0) continue;
    if (!rel[i].fits_slong_p()) throw std::invalid_argument("relation_to_eta_identity: coefficient too large");
    const long a = rel[i].get_si();
    const Subgroup h = assemble(list[i].spec);
    for (std::size_t idx : h.elements()) sum[idx] += a;
    auto [e1, e2] = entry_eta(list[i]);
    accumulate(t1, power(e1, a));
    accumulate(t2, power(e2, a));
  }
  if (std::any_of(sum.begin(), sum.end(), [](const mpz_class& v) { return sgn(v) != 0; }))
    throw std::invalid_argument("relation_to_eta_identity: vector is not a relation");
  // The lift of the zero form is constant and splits as psi1(tau1) psi2(tau2),
  // so each side is constant on its own.
  return {make_identity(t1, terms), make_identity(t2, terms)};
}

EtaProductCheck verify_eta_identity(long p, long terms) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("verify_eta_identity: p must be prime");
  EtaProductCheck c;
  c.p = p;
  EtaQuotient lhs, rhs;
  for (long a = 1; a < p; ++a) lhs.factors.push_back({1, ratio(a, p), 1});
  rhs.prefactor = e_of(ratio(p - 1, 48));
  rhs.factors = {{mpq_class(p), 0, p + 1}, {1, 0, -1}, {mpq_class(p * p), 0, -1}};
  c.stated.lhs = lhs;
  c.stated.rhs = rhs;
  c.stated.constant = rhs.prefactor;
  c.stated.report = assert_identity(lhs, rhs, lhs.lead_exponent() + terms);

  const std::vector<ZVector> rels = relations_Np(p, p);
  if (rels.size() != 1) throw VerificationError("verify_eta_identity: expected one relation on D_{p,p}");
  c.from_lift = relation_to_eta_identity(p, p, rels[0], terms);
  const EtaIdentity& d = c.from_lift.tau1;
  c.constant_matches = d.constant == c.stated.constant && sorted_factors(d.lhs) == sorted_factors(lhs) &&
                       sorted_factors(d.rhs) == sorted_factors(rhs);
  return c;
}

}  // namespace weilrep
