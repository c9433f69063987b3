#include <doctest.h>

#include "oracles.hpp"
#include "weilrep/borcherds.hpp"
#include "weilrep/errors.hpp"
#include "weilrep/numtheory.hpp"

using namespace weilrep;

namespace {

mpq_class Q(long a, long b = 1) {
  mpq_class r(a, b);
  r.canonicalize();
  return r;
}

Subgroup h_xyz(long N, long x, long y, long z) {
  SelfDualSpec s;
  s.first = {N, x, y, z};
  s.second = {1, 1, 0, 1};
  return assemble(s);
}

// Independent trivial-character test over the divisors of N.
bool oracle_trivial(long N, const std::vector<long>& alpha) {
  const auto ds = divisors(N);
  long s1 = 0, s2 = 0, s0 = 0;
  mpq_class prod = 1;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    s1 += ds[i] * alpha[i];
    s2 += (N / ds[i]) * alpha[i];
    s0 += alpha[i];
    for (long k = 0; k < std::abs(alpha[i]); ++k) prod = alpha[i] > 0 ? mpq_class(prod * ds[i]) : mpq_class(prod / ds[i]);
  }
  const mpz_class num = prod.get_num(), den = prod.get_den();
  return s1 % 24 == 0 && s2 % 24 == 0 && s0 % 4 == 0 && mpz_perfect_square_p(num.get_mpz_t()) &&
         mpz_perfect_square_p(den.get_mpz_t());
}

}  // namespace

TEST_SUITE("borcherds") {
  TEST_CASE("Weyl vectors") {
    const WeylVector w = weyl_vector(InputForm::from_subgroups(6, 1, {{h_xyz(6, 2, 0, 3), 1}}));
    CHECK(w.rho_kappa == Q(1, 12));
    CHECK(w.rho_kappa_prime == Q(1, 12));
    for (long N : {1, 2, 5, 12}) {
      const WeylVector v = weyl_vector(InputForm::from_subgroups(N, 1, {{h_xyz(N, 1, 0, N), 1}}));
      CHECK(v.rho_kappa == Q(1, 24));
    }
    std::vector<std::pair<Subgroup, long>> terms;
    for (long d : divisors(6)) terms.push_back({h_xyz(6, d, 0, 6 / d), 1});
    const InputForm f = InputForm::from_subgroups(6, 1, terms);
    CHECK(weyl_vector(f).rho_kappa == Q(1, 2));
    CHECK(weyl_vector(f).rho_kappa_prime == Q(1, 2));
    CHECK(lift(f, 20).weight == 2);
  }

  TEST_CASE("input validation") {
    std::vector<long> c(36, 0);
    c[1] = 1;  // e_(0,1) alone is not T-invariant
    CHECK_THROWS_AS(InputForm(6, 1, c), std::invalid_argument);
    CHECK_THROWS_AS(InputForm(6, 1, std::vector<long>(35, 0)), std::invalid_argument);
    const InputForm zero(6, 1, std::vector<long>(36, 0));
    CHECK(zero.at(0, 0, 0, 0) == 0);
    const LiftResult r = lift(zero, 30);
    CHECK(r.weight == 0);
    CHECK(equals_to_precision(r.psi1, FracQSeries::one(r.psi1.trunc())));
    CHECK(equals_to_precision(r.psi2, FracQSeries::one(r.psi2.trunc())));
    const auto [t1, t2] = eta_identify(zero);
    CHECK(t1.factors.empty());
    CHECK(t2.factors.empty());
  }

  TEST_CASE("lifts are multiplicative") {
    const Subgroup a = h_xyz(6, 2, 0, 3), b = h_xyz(6, 1, 0, 6);
    const InputForm f = InputForm::from_subgroups(6, 1, {{a, 1}}), g = InputForm::from_subgroups(6, 1, {{b, 2}});
    const InputForm fg = InputForm::from_subgroups(6, 1, {{a, 1}, {b, 2}});
    const LiftResult lf = lift(f, 60), lg = lift(g, 60), lfg = lift(fg, 60);
    CHECK(equals_to_precision(mul(lf.psi1, lg.psi1), lfg.psi1));
    CHECK(equals_to_precision(mul(lf.psi2, lg.psi2), lfg.psi2));
    CHECK(lfg.weight == lf.weight + lg.weight);
  }

  TEST_CASE("eta(d tau) lifts for N' = 1") {
    for (long N : {1, 4, 6, 12})
      for (long d : divisors(N)) {
        const InputForm f = InputForm::from_subgroups(N, 1, {{h_xyz(N, d, 0, N / d), 1}});
        const LiftResult r = lift(f, 80);
        EtaQuotient q;
        q.factors = {{mpq_class(d), 0, 1}};
        CHECK(r.psi1.lead_exponent() == Q(d, 24));
        CHECK(equals_to_precision(r.psi1, q.expand(r.psi1.trunc()).normalized()));
      }
  }

  TEST_CASE("every catalog entry lifts to its eta quotients") {
    const std::vector<std::pair<long, long>> cases = {{1, 1}, {2, 1}, {6, 1}, {8, 1}, {12, 1},
                                                      {2, 2}, {4, 2}, {6, 3}, {4, 4}};
    for (auto [N, Np] : cases) {
      for (const CatalogEntry& e : lift_catalog(N, Np)) {
        CAPTURE(e.str());
        const Subgroup h = assemble(e.spec);
        const LiftCheck c = check_lift_against_eta(InputForm::from_subgroups(N, Np, {{h, 1}}), 60);
        CHECK(c.ok());
      }
    }
    CHECK(lift_catalog(4, 3).empty());
    CHECK_THROWS_AS(lift_catalog(0, 1), std::invalid_argument);
  }

  TEST_CASE("decomposition recovers the coefficients") {
    const auto cat = lift_catalog(6, 1);
    REQUIRE(cat.size() == 4);
    std::vector<std::pair<Subgroup, long>> terms;
    const long alpha[] = {3, -2, 0, 5};
    for (std::size_t i = 0; i < cat.size(); ++i) terms.push_back({assemble(cat[i].spec), alpha[i]});
    const CatalogDecomposition d = decompose(InputForm::from_subgroups(6, 1, terms));
    REQUIRE(d.alpha.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(d.alpha[i] == alpha[i]);

    // a mixed form on D_{4,2}
    const auto cat42 = lift_catalog(4, 2);
    const InputForm g =
        InputForm::from_subgroups(4, 2, {{assemble(cat42.front().spec), 2}, {assemble(cat42.back().spec), -1}});
    const CatalogDecomposition dg = decompose(g);
    std::vector<long> rebuilt(g.coeffs().size(), 0);
    for (std::size_t i = 0; i < dg.entries.size(); ++i) {
      const Subgroup h = assemble(dg.entries[i].spec);
      for (std::size_t x : h.elements()) rebuilt[x] += dg.alpha[i];
    }
    CHECK(rebuilt == g.coeffs());
  }

  TEST_CASE("character triviality") {
    CHECK_FALSE(character_trivial_check(6, {1, -1, -1, 1}).weyl_first_integral);
    CHECK(character_trivial_check(6, {0, 0, 0, 0}).trivial());
    CHECK(character_trivial_check(1, {24}).trivial());
    CHECK_FALSE(character_trivial_check(1, {12}).trivial());
    CHECK(character_trivial_check(2, {8, 8}).trivial());
    const InputForm f = InputForm::from_subgroups(2, 1, {{h_xyz(2, 1, 0, 2), 8}, {h_xyz(2, 2, 0, 1), 8}});
    const CharacterReport r = character_trivial_check(f);
    CHECK(r.trivial());
    CHECK(r.alpha == std::vector<long>{8, 8});
    CHECK_THROWS_AS(character_trivial_check(InputForm(2, 2, std::vector<long>(16, 0))), std::invalid_argument);

    for (long N : {1, 2, 3, 4}) {
      const auto ds = divisors(N);
      const long B = N == 1 ? 48 : (ds.size() == 2 ? 24 : 8);
      std::vector<long> a(ds.size(), -B);
      for (;;) {
        CHECK(character_trivial_check(N, a).trivial() == oracle_trivial(N, a));
        std::size_t i = 0;
        while (i < a.size() && a[i] == B) a[i++] = -B;
        if (i == a.size()) break;
        ++a[i];
      }
    }
  }

  TEST_CASE("relations lift to eta identities") {
    for (auto [N, p] : std::vector<std::pair<long, long>>{{2, 2}, {3, 3}, {4, 2}, {6, 2}, {6, 3}}) {
      for (const ZVector& rel : relations_Np(N, p)) {
        const RelationLift r = relation_to_eta_identity(N, p, rel, 100);
        CAPTURE(r.tau1.str());
        CAPTURE(r.tau2.str());
        CHECK(r.ok());
      }
    }
    ZVector bad(selfdual_list_Np(2, 2).size(), 0);
    bad[0] = 1;
    CHECK_THROWS_AS(relation_to_eta_identity(2, 2, bad, 20), std::invalid_argument);
  }

  TEST_CASE("product of shifted etas") {
    const EtaProductCheck c = verify_eta_identity(3, 150);
    CHECK(c.ok());
    CHECK(c.stated.constant == CycNumber::root_of_unity(1, 24));
    CHECK(verify_eta_identity(2, 150).ok());
  }
}
