#include <doctest.h>

#include "oracles.hpp"
#include "weilrep/qseries.hpp"

using namespace weilrep;

namespace {

mpq_class Q(long a, long b = 1) {
  mpq_class r(a, b);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_SUITE("qseries") {
  TEST_CASE("eta(tau) against the Euler product") {
    const FracQSeries s = eta_series(1, 0, Q(1, 24) + 60);
    const auto euler = oracle::euler_power(1, 60);
    for (long n = 0; n < 60; ++n) CHECK(s.coefficient(Q(1, 24) + n) == CycNumber(mpq_class(euler[n])));
    CHECK(s.lead_exponent() == Q(1, 24));
    CHECK(s.coefficient(Q(1, 24) + 1) == CycNumber(-1));
    CHECK(s.coefficient(Q(1, 24) + 2) == CycNumber(-1));
    CHECK(s.coefficient(Q(1, 24) + 3) == CycNumber(0));
  }

  TEST_CASE("1/eta counts partitions") {
    const FracQSeries inv = pow(eta_series(1, 0, Q(1, 24) + 80), -1);
    const auto p = oracle::partitions(80);
    CHECK(inv.lead_exponent() == Q(-1, 24));
    for (long n = 0; n < 80; ++n) CHECK(inv.coefficient(Q(-1, 24) + n) == CycNumber(mpq_class(p[n])));
  }

  TEST_CASE("Jacobi's cube identity") {
    // eta^3 = sum_{n >= 0} (-1)^n (2n + 1) q^((2n + 1)^2 / 8)
    const FracQSeries c = pow(eta_series(1, 0, Q(1, 24) + 200), 3);
    FracQSeries j(8, c.trunc());
    for (long n = 0; (2 * n + 1) * (2 * n + 1) < 8 * 201; ++n)
      if (Q((2 * n + 1) * (2 * n + 1), 8) < c.trunc()) j.set((2 * n + 1) * (2 * n + 1), CycNumber(n % 2 ? -(2 * n + 1) : 2 * n + 1));
    CHECK(equals_to_precision(c, j));
  }

  TEST_CASE("pentagonal expansion equals the naive product") {
    const std::vector<std::pair<mpq_class, mpq_class>> cases = {
        {1, 0}, {2, 0}, {1, Q(1, 2)}, {1, Q(1, 3)}, {3, Q(2, 5)}, {Q(1, 2), Q(1, 7)}, {Q(5, 3), Q(-1, 4)}};
    for (const auto& [d, r] : cases) {
      const mpq_class t = d / 24 + 300;
      const auto rep = compare_to_precision(eta_series(d, r, t), eta_series_naive(d, r, t));
      CHECK(rep.equal);
      CHECK(rep.compared_below == t);
    }
  }

  TEST_CASE("shifts and scales") {
    const FracQSeries s = eta_series(1, Q(1, 2), 10);
    CHECK(s.lead_coefficient() == CycNumber::root_of_unity(1, 48));
    // eta(d tau) is eta(tau) with q -> q^d
    const FracQSeries a = eta_series(3, 0, Q(3, 24) + 90), b = eta_series(1, 0, Q(1, 24) + 30);
    for (const auto& [k, c] : b.terms()) CHECK(a.coefficient(Q(3 * k, b.exp_den())) == c);
    CHECK(a.terms().size() == b.terms().size());
    // shifting by 1 multiplies by e(1/24)
    const FracQSeries u = eta_series(2, 1, 20), v = eta_series(2, 0, 20);
    CHECK(equals_to_precision(u, v.scaled(CycNumber::root_of_unity(1, 24))));
  }

  TEST_CASE("arithmetic") {
    const FracQSeries e1 = eta_series(1, 0, 40), e2 = eta_series(2, 0, 40);
    CHECK(equals_to_precision(mul(e1, e1), pow(e1, 2)));
    CHECK(mul(e1, e2).lead_exponent() == Q(1, 8));
    const FracQSeries one = div(e1, e1);
    CHECK(equals_to_precision(one, FracQSeries::one(one.trunc())));
    CHECK(equals_to_precision(div(mul(e1, e2), e2), e1.truncated(div(mul(e1, e2), e2).trunc())));
    CHECK(pow(e1, 0).lead_exponent() == 0);
    // mul keeps exactly the determined range: min(Ta + lb, Tb + la)
    CHECK(mul(e1, e2).trunc() == std::min(e1.trunc() + e2.lead_exponent(), e2.trunc() + e1.lead_exponent()));
  }

  TEST_CASE("precision handling") {
    const FracQSeries a = eta_series(1, 0, 10), b = eta_series(1, 0, 20);
    CHECK(equals_to_precision(a, b));
    CHECK_THROWS_AS(compare_to_precision(a, b, mpq_class(15)), std::invalid_argument);
    FracQSeries c = b;
    c.set(24 * 5 + 1, CycNumber(7));
    const PrecisionReport r = compare_to_precision(b, c);
    CHECK_FALSE(r.equal);
    REQUIRE(r.first_mismatch);
    CHECK(*r.first_mismatch == Q(121, 24));
    FracQSeries d(24, 5);
    CHECK_THROWS_AS(d.set(24 * 5, CycNumber(1)), std::invalid_argument);
    CHECK(d.is_zero());
    CHECK(d.lead_exponent() == 5);
  }

  TEST_CASE("text rendering") {
    const FracQSeries s = eta_series(1, 0, 2);
    CHECK(s.str() == "q^(1/24): 1\nq^(25/24): -1\nO(q^(2))\n");
  }

  TEST_CASE("eta quotients") {
    EtaQuotient q;
    q.factors = {{2, 0, 3}, {1, 0, -1}, {4, 0, -1}, {2, 0, 0}};
    CHECK(q.lead_exponent() == Q(1, 24));
    const EtaQuotient s = q.simplified();
    CHECK(s.factors.size() == 3);
    const FracQSeries generic = div(pow(eta_series(2, 0, 60), 3), mul(eta_series(1, 0, 60), eta_series(4, 0, 60)));
    CHECK(equals_to_precision(q.expand(generic.trunc()), generic));
    EtaQuotient empty;
    CHECK(equals_to_precision(empty.expand(50), FracQSeries::one(50)));
    CHECK(assert_identity(q, q, 100).equal);
  }

  TEST_CASE("prod eta(tau + a/p) identities") {
    for (long p : {2, 3, 5, 7}) {
      EtaQuotient lhs, rhs;
      for (long a = 1; a < p; ++a) lhs.factors.push_back({1, Q(a, p), 1});
      rhs.prefactor = CycNumber::root_of_unity(p - 1, 48);
      rhs.factors = {{mpq_class(p), 0, p + 1}, {1, 0, -1}, {mpq_class(p * p), 0, -1}};
      const PrecisionReport r = assert_identity(lhs, rhs, lhs.lead_exponent() + 200);
      CHECK(r.equal);
      rhs.prefactor = CycNumber(1);
      if (p > 1) CHECK_FALSE(assert_identity(lhs, rhs, lhs.lead_exponent() + 5).equal);
    }
  }

  TEST_CASE("cyclic series") {
    CyclicSeries s(3, 30);
    s.mul_binomial(1, 1, 2);
    s.mul_binomial(1, 1, -2);
    CHECK(s.coefficient(0) == CycNumber(1));
    for (std::size_t j = 1; j < 30; ++j) CHECK(s.coefficient_is_zero(j));
    // prod_x (1 - z^x t) = 1 - t^3
    CyclicSeries t(3, 10);
    for (long x = 0; x < 3; ++x) t.mul_binomial(1, x, 1);
    CHECK(t.coefficient(3) == CycNumber(-1));
    CHECK(t.coefficient_is_zero(1));
    CHECK(t.coefficient_is_zero(2));
  }
}
