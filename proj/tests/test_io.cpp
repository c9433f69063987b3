#include <doctest.h>

#include "weilrep/io.hpp"
#include "weilrep/lnn.hpp"
#include "weilrep/subgroups.hpp"

using namespace weilrep;

TEST_SUITE("io") {
  TEST_CASE("rationals") {
    CHECK(rational_str(mpq_class(3)) == "3");
    CHECK(rational_str(mpq_class(-6, 4)) == "-3/2");
    CHECK(parse_rational("-3/2") == mpq_class(-3, 2));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS(parse_rational("x/2"));
  }

  TEST_CASE("round trips") {
    for (auto [N, Np] : std::vector<std::pair<long, long>>{{1, 1}, {6, 1}, {4, 2}}) {
      const FqModule m = lnn_module(N, Np);
      const FqModule r = fqmodule_from_json(Json::parse(to_json(m).dump()));
      CHECK(r.orders() == m.orders());
      CHECK(r == m);
      for (std::size_t x = 0; x < m.size(); ++x) CHECK(r.q_num(x) == m.q_num(x));
    }
    const CycNumber c = CycNumber::root_of_unity(5, 12) + mpq_class(2, 3);
    CHECK(cycnumber_from_json(Json::parse(to_json(c).dump())) == c);
    const FracQSeries s = eta_series(2, mpq_class(1, 3), 12);
    const FracQSeries t = fracqseries_from_json(Json::parse(to_json(s).dump()));
    CHECK(t.exp_den() == s.exp_den());
    CHECK(t.trunc() == s.trunc());
    CHECK(t.terms() == s.terms());
  }

  TEST_CASE("structured output") {
    const Json e = to_json(family_exNy0(6, 1).front());
    CHECK(e.contains("params"));
    CHECK(e.at("kind").is_string());
    const Json h = to_json(hxyz_subgroup({4, 1, 1, 2}));
    CHECK(h.at("order") == 8);
  }
}
