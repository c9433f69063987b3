#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "weilrep/numtheory.hpp"
#include "weilrep/weil.hpp"

using namespace weilrep;

namespace {

Mat2 random_sl2(std::mt19937& rng) {
  std::uniform_int_distribution<long> k(-4, 4);
  Mat2 m;
  for (int i = 0; i < 6; ++i) m = m * mat_T(k(rng)) * mat_S();
  return m;
}

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

}  // namespace

TEST_SUITE("weil") {
  TEST_CASE("continued-fraction words evaluate back") {
    CHECK(sl2_word(Mat2{}).tokens.empty());
    const Mat2 st = mat_S() * mat_T();
    CHECK(sl2_word(st).evaluate() == st);
    std::mt19937 rng(11);
    for (int t = 0; t < 300; ++t) {
      const Mat2 m = random_sl2(rng);
      REQUIRE(m.det() == 1);
      CHECK(sl2_word(m).evaluate() == m);
    }
    CHECK(sl2_word(Mat2{-1, 0, 0, -1}).evaluate() == Mat2{-1, 0, 0, -1});
    CHECK_THROWS_AS(sl2_word(Mat2{2, 0, 0, 1}), std::invalid_argument);
  }

  TEST_CASE("T and S entries against the defining formulas") {
    for (auto [N, Np] : std::vector<std::pair<long, long>>{{2, 1}, {3, 1}, {2, 2}, {4, 2}}) {
      const FqModule m = lnn_module(N, Np);
      const oracle::Lnn D{N, Np};
      const WeilMatrix T = rho_T(m), S = rho_S(m);
      const double root = std::sqrt(double(m.size()));
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
          const auto x = D.element(i), y = D.element(j);
          CHECK(close(T.entry(i, j).to_complex(), i == j ? oracle::e(D.q(x)) : 0.0));
          CHECK(close(S.entry(i, j).to_complex(), oracle::e(-D.b(x, y)) / root));
        }
    }
    // rho(S) e_0 = (1/2) sum e_g on D_{2,1}
    const FqModule d21 = lnn_module(2, 1);
    const GroupRingVector s0 = apply_S(GroupRingVector::basis(d21, 0));
    CHECK(s0.terms().size() == 4);
    for (const auto& [i, c] : s0.terms()) CHECK(c == CycNumber(mpq_class(1, 2)));
    CHECK(apply_T(GroupRingVector::basis(d21, 0)) == GroupRingVector::basis(d21, 0));
  }

  TEST_CASE("representation relations") {
    for (auto [N, Np] : std::vector<std::pair<long, long>>{{1, 1}, {5, 1}, {6, 1}, {2, 2}, {3, 3}}) {
      const FqModule m = lnn_module(N, Np);
      const WeilMatrix S = rho_S(m), T = rho_T(m), I = WeilMatrix::identity(m);
      const WeilMatrix S2 = S * S;
      CHECK(S2 * S2 == I);
      CHECK((S * T) * (S * T) * (S * T) == S2);
      CHECK(S * S.conj_transpose() == I);
      // rho(-I) e_g = e_{-g}
      for (std::size_t g = 0; g < m.size(); ++g)
        CHECK(S2.apply(GroupRingVector::basis(m, g)) == GroupRingVector::basis(m, m.neg(g)));
    }
  }

  TEST_CASE("rho is multiplicative on random matrices") {
    const FqModule m = lnn_module(3, 1);
    std::mt19937 rng(5);
    for (int t = 0; t < 10; ++t) {
      const Mat2 a = random_sl2(rng), b = random_sl2(rng);
      CHECK(rho(m, a * b) == rho(m, a) * rho(m, b));
    }
  }

  TEST_CASE("vector actions match matrices") {
    const FqModule m = lnn_module(4, 2);
    std::mt19937 rng(9);
    std::uniform_int_distribution<long> c(-3, 3);
    ZVector z(m.size());
    for (auto& x : z) x = c(rng);
    const GroupRingVector v = GroupRingVector::from_integers(m, z);
    CHECK(apply_S(v) == rho_S(m).apply(v));
    CHECK(apply_T(v) == rho_T(m).apply(v));
    const Mat2 g = random_sl2(rng);
    CHECK(apply_rho(g, v) == rho(m, g).apply(v));
  }

  TEST_CASE("S on characteristic functions") {
    for (auto [N, Np] : std::vector<std::pair<long, long>>{{4, 1}, {2, 2}, {6, 1}}) {
      const FqModule m = lnn_module(N, Np);
      const long root = rational_sqrt(static_cast<long>(m.size()));
      for (const auto& h : enumerate_subgroups(m)) {
        mpq_class c(static_cast<long>(h.size()), root);
        c.canonicalize();
        CHECK(apply_S(characteristic_vector(h)) == characteristic_vector(complement(h)) * CycNumber(c));
      }
    }
  }

  TEST_CASE("mu matrices") {
    for (long N : {2, 5, 6, 12})
      for (long u = 1; u < N; ++u) {
        if (std::gcd(u, N) != 1) continue;
        const Mat2 mu = mu_matrix(u, N);
        CHECK(mu.det() == 1);
        CHECK(mu.c == N);
        CHECK(mu.d == u);
        CHECK(mod(mu.a * u, N) == 1 % N);
      }
    const FqModule d51 = lnn_module(5, 1);
    const MuReport r = verify_mu(d51, 2);
    CHECK(r.ok());
    CHECK(r.checked > 0);
    const GroupRingVector img = apply_rho(mu_matrix(2, 5), GroupRingVector::basis(d51, d51.index_of({1, 0, 0, 0})));
    CHECK(img == GroupRingVector::basis(d51, d51.index_of({2, 0, 0, 0})));
    for (long u : {1, 5, 7, 11}) CHECK(verify_mu(lnn_module(12, 1), u).ok());
    CHECK_THROWS_AS(mu_matrix(2, 4), std::invalid_argument);
  }

  TEST_CASE("invariant spaces") {
    CHECK(invariant_space(FqModule::trivial()).dimension == 1);
    for (long N = 1; N <= 12; ++N) {
      const FqModule m = lnn_module(N, 1);
      const InvariantSpace inv = invariant_space(m);
      CHECK(inv.certified);
      CHECK(static_cast<long>(inv.dimension) == oracle::sigma0(N));
      for (const auto& v : inv.basis) CHECK(is_invariant(GroupRingVector::from_integers(m, v)));
    }
    CHECK(invariant_space(lnn_module(2, 2)).dimension == 5);
    CHECK(invariant_space(lnn_module(3, 3)).dimension == 7);
    for (auto [N, Np] : std::vector<std::pair<long, long>>{{2, 1}, {3, 1}, {2, 2}, {4, 1}}) {
      const FqModule m = lnn_module(N, Np);
      CHECK(invariant_space_dense(m).size() == invariant_space(m).dimension);
      CHECK(invariant_dimension_by_primary_parts(m) == invariant_space(m).dimension);
    }
    CHECK(invariant_dimension_by_primary_parts(lnn_module(12, 2)) == invariant_space(lnn_module(12, 2)).dimension);
  }

  TEST_CASE("self-dual isotropic span") {
    const SelfDualSpanReport r = verify_selfdual_span(lnn_module(6, 2));
    CHECK(r.span_equal);
    CHECK(r.invariant_dimension == 10);
    for (long p : {2, 3}) {
      const SelfDualSpanReport q = verify_selfdual_span(lnn_module(p, p));
      CHECK(q.family_size == static_cast<std::size_t>(2 * p + 2));
      CHECK(q.family_rank == static_cast<std::size_t>(2 * p + 1));
      CHECK(q.invariant_dimension == static_cast<std::size_t>(2 * p + 1));
    }
    const FqModule a2({3}, {Mod1Rational(1, 3)}, {{Mod1Rational(2, 3)}});
    CHECK_THROWS_AS(verify_selfdual_span(a2), std::invalid_argument);
  }

  TEST_CASE("averaging operator") {
    const FqModule m = lnn_module(4, 2);
    const AveragingReport r = verify_averaging_expansion(m);
    CHECK(r.ok());
    for (const auto& e : r.entries) {
      CHECK(e.expansion_holds);
      CHECK(e.triangular);
      CHECK((e.n_H == 1) == e.self_dual);
    }
    // M v^{0} on D_{p,1} is (1/p) times the indicator of the isotropic vectors.
    for (long p : {3, 5}) {
      const FqModule d = lnn_module(p, 1);
      const GroupRingVector mv = averaging_apply(GroupRingVector::basis(d, 0));
      for (std::size_t g = 0; g < d.size(); ++g)
        CHECK(mv.at(g) == (d.q_num(g) == 0 ? CycNumber(mpq_class(1, p)) : CycNumber(0)));
    }
    const WeilMatrix M = averaging_operator(lnn_module(3, 1));
    const GroupRingVector v = GroupRingVector::basis(lnn_module(3, 1), 4);
    CHECK(M.apply(v) == averaging_apply(v));
  }

  TEST_CASE("poset fixed space") {
    const FixedSpaceReport r = verify_poset_fixed_space(lnn_module(6, 1));
    CHECK(r.equal);
    CHECK(r.fixed_dim == 4);
    CHECK(verify_poset_fixed_space(lnn_module(2, 2)).equal);
  }
}
