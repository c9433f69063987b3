#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "weilrep/cyclo.hpp"
#include "weilrep/fqmod.hpp"

using namespace weilrep;

TEST_SUITE("fqmod") {
  TEST_CASE("hyperbolic planes") {
    const FqModule h1 = hyperbolic(1);
    CHECK(h1.size() == 1);
    CHECK(h1.level() == 1);
    CHECK(hyperbolic(2).q_value({1, 1}) == Mod1Rational(1, 2));
    CHECK(hyperbolic(6).b_value({1, 0}, {0, 1}) == Mod1Rational(1, 6));
    for (long N = 2; N <= 12; ++N) CHECK(hyperbolic(N).level() == N);
  }

  TEST_CASE("direct sums and D_{N,N'}") {
    const FqModule a = direct_sum(hyperbolic(5), FqModule::trivial());
    CHECK(a.size() == 25);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.q_num(i) == hyperbolic(5).q_num(i));
    CHECK(direct_sum(hyperbolic(2), hyperbolic(2)).size() == 16);
    const FqModule d62 = lnn_module(6, 2);
    CHECK(d62.size() == 144);
    CHECK(d62.q_value({1, 1, 1, 1}) == Mod1Rational(2, 3));
    CHECK(d62.level() == 6);
    CHECK(lnn_module(2, 1).q_value({1, 1, 0, 0}) == Mod1Rational(1, 2));
    CHECK(lnn_module(4, 1).b_value({2, 1, 0, 0}, {0, 2, 0, 0}) == Mod1Rational(0, 1));
    CHECK(lnn_module(3, 3).q_value({0, 0, 0, 0}).is_zero());
  }

  TEST_CASE("Q and B agree with the coordinate formula") {
    for (auto [N, Np] : std::vector<std::pair<long, long>>{{4, 2}, {6, 3}, {5, 1}, {6, 6}}) {
      const FqModule m = lnn_module(N, Np);
      const oracle::Lnn D{N, Np};
      for (long i = 0; i < D.size(); ++i) {
        const auto v = D.element(i);
        CHECK(std::abs(m.q_num(static_cast<std::size_t>(i)) / double(m.level()) - D.q(v)) < 1e-12);
      }
      std::mt19937 rng(N * 100 + Np);
      std::uniform_int_distribution<long> pick(0, D.size() - 1);
      for (int t = 0; t < 200; ++t) {
        const long i = pick(rng), j = pick(rng);
        CHECK(std::abs(m.b_num(i, j) / double(m.level()) - D.b(D.element(i), D.element(j))) < 1e-12);
      }
    }
  }

  TEST_CASE("polarization and bilinearity") {
    const FqModule m = lnn_module(6, 2);
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, m.size() - 1);
    const long L = m.level();
    for (int t = 0; t < 500; ++t) {
      const std::size_t x = pick(rng), y = pick(rng), z = pick(rng);
      CHECK(m.b_num(x, y) == ((m.q_num(m.add(x, y)) - m.q_num(x) - m.q_num(y)) % L + L) % L);
      CHECK(m.b_num(x, y) == m.b_num(y, x));
      CHECK(m.b_num(m.add(x, y), z) == (m.b_num(x, z) + m.b_num(y, z)) % L);
      CHECK(m.q_num(m.scale(3, x)) == (9 * m.q_num(x)) % L);
    }
  }

  TEST_CASE("element indexing") {
    const FqModule m = lnn_module(4, 2);
    for (std::size_t i = 0; i < m.size(); ++i) CHECK(m.index_of(m.element(i)) == i);
    CHECK(m.element(1) == Element{0, 0, 0, 1});
    CHECK_THROWS_AS(m.index_of({4, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(m.index_of({0, 0, 0}), std::invalid_argument);
    for (std::size_t i = 0; i < m.size(); ++i) CHECK(m.add(i, m.neg(i)) == 0);
  }

  TEST_CASE("signature mod 8") {
    CHECK(signature_mod8(FqModule::trivial()) == 0);
    CHECK(signature_mod8(hyperbolic(3)) == 0);
    for (long N = 1; N <= 6; ++N)
      for (long Np = 1; Np <= N; ++Np)
        if (N % Np == 0) CHECK(signature_mod8(lnn_module(N, Np)) == 0);
    // Z/3 with Q(x) = x^2/3: sum e(Q) = i sqrt 3.
    const FqModule a2({3}, {Mod1Rational(1, 3)}, {{Mod1Rational(2, 3)}});
    const auto g = oracle::e(0) + oracle::e(1.0 / 3) + oracle::e(4.0 / 3);
    const int s = signature_mod8(a2);
    const auto expect = std::sqrt(3.0) * oracle::e(s / 8.0);
    CHECK(std::abs(g - expect) < 1e-9);
    CHECK(s == 2);
    // (Z/2)^2 with Q = 1/2 on both generators and B = 1/2 off the diagonal: sum e(Q) = -2.
    const FqModule d4({2, 2}, {Mod1Rational(1, 2), Mod1Rational(1, 2)},
                      {{Mod1Rational(0, 1), Mod1Rational(1, 2)}, {Mod1Rational(1, 2), Mod1Rational(0, 1)}});
    CHECK(signature_mod8(d4) == 4);
  }

  TEST_CASE("p-primary decomposition") {
    const auto parts = p_primary_decomposition(lnn_module(6, 1));
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].prime == 2);
    CHECK(parts[0].module.size() == 4);
    CHECK(parts[1].prime == 3);
    CHECK(parts[1].module.size() == 9);
    const FqModule m = lnn_module(6, 1);
    for (const auto& c : parts)
      for (std::size_t i = 0; i < c.module.size(); ++i) {
        const long qa = c.module.q_num(i) * (m.level() / c.module.level());
        CHECK(qa % m.level() == m.q_num(c.embedding[i]));
      }
    CHECK(p_primary_decomposition(lnn_module(4, 1)).size() == 1);
    const FqModule big = lnn_module(12, 6);
    std::size_t prod = 1;
    for (const auto& c : p_primary_decomposition(big)) prod *= c.module.size();
    CHECK(prod == big.size());
  }
}
