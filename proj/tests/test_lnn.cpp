#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "weilrep/lnn.hpp"
#include "weilrep/numtheory.hpp"
#include "weilrep/weil.hpp"

using namespace weilrep;

namespace {

// H_{x,y,z} over N computed by closure inside the plane, independent of the library.
std::set<std::pair<long, long>> h_oracle(long N, long x, long y, long z) {
  std::set<std::pair<long, long>> s;
  for (long i = 0; i < N; ++i)
    for (long j = 0; j < N; ++j) s.insert({(i * x) % N, ((i * y + j * z) % N + N) % N});
  return s;
}

std::set<std::pair<long, long>> as_pairs(const Subgroup& h) {
  std::set<std::pair<long, long>> s;
  for (const auto& c : h.coords()) s.insert({c[0], c[1]});
  return s;
}

}  // namespace

TEST_SUITE("lnn_catalog") {
  TEST_CASE("parametrized subgroups of the plane") {
    CHECK(hxyz_subgroup({6, 2, 0, 3}).size() == 6);
    CHECK(hxyz_subgroup({5, 5, 0, 5}).size() == 1);
    const Subgroup h = Subgroup::generated_by(plane(4), std::vector<Element>{{2, 1}, {0, 2}});
    CHECK(canonical_params(h) == HxyzParams{4, 2, 1, 2});
    for (long N = 1; N <= 12; ++N) {
      const auto params = normalized_params(N);
      CHECK(static_cast<long>(params.size()) == oracle::subgroup_count(N, N));
      for (const auto& p : params) {
        CHECK(is_normalized(p));
        CHECK(as_pairs(hxyz_subgroup(p)) == h_oracle(N, p.x, p.y, p.z));
        CHECK(hxyz_subgroup(p).size() == p.order());
      }
    }
  }

  TEST_CASE("normalization") {
    std::string note;
    const HxyzParams p = normalize_params(4, 3, 1, 2, &note);
    CHECK(p == HxyzParams{4, 1, 1, 2});
    CHECK_FALSE(note.empty());
    note.clear();
    CHECK(normalize_params(6, 2, 0, 3, &note) == HxyzParams{6, 2, 0, 3});
    CHECK(note.empty());
    for (long N = 2; N <= 9; ++N)
      for (long x = 0; x < N; ++x)
        for (long y = 0; y < N; ++y)
          for (long z = 0; z < N; ++z) {
            const HxyzParams q = normalize_params(N, x, y, z);
            CHECK(as_pairs(hxyz_subgroup(q)) == h_oracle(N, x, y, z));
          }
  }

  TEST_CASE("complements and classification") {
    CHECK(hxyz_complement({6, 2, 0, 3}) == HxyzParams{6, 2, 0, 3});
    CHECK(hxyz_complement({4, 2, 1, 2}) == HxyzParams{4, 2, 1, 2});
    CHECK(hxyz_complement({7, 7, 0, 7}) == HxyzParams{7, 1, 0, 1});
    const SubgroupClass a = classify_params({6, 2, 0, 3});
    CHECK(a.is_isotropic);
    CHECK(a.is_self_dual);
    CHECK_FALSE(classify_params({4, 2, 1, 2}).is_isotropic);
    for (long N = 1; N <= 12; ++N)
      for (const auto& p : normalized_params(N)) {
        const Subgroup h = hxyz_subgroup(p);
        CHECK(hxyz_subgroup(hxyz_complement(p)) == complement(h));
        CHECK(classify_params(p) == classify(h));
        CHECK(canonical_params(h) == p);
      }
  }

  TEST_CASE("co-isotropic subgroups for square-free N") {
    for (long N : {1, 2, 3, 5, 6, 10, 15, 30}) {
      std::set<std::pair<long, long>> expect;
      for (long d1 : divisors(N))
        for (long d2 : divisors(N))
          if (N % (d1 * d2) == 0) expect.insert({d1, d2});
      std::set<std::pair<long, long>> got, brute;
      for (const auto& p : coisotropic_squarefree(N)) {
        CHECK(p.y == 0);
        got.insert({p.x, p.z});
      }
      for (const auto& p : normalized_params(N))
        if (classify_params(p).is_coisotropic) brute.insert({p.x, p.z});
      CHECK(got == expect);
      CHECK(brute == expect);
    }
  }

  TEST_CASE("assembling from two co-isotropic triples") {
    SelfDualSpec s;
    s.first = {2, 1, 0, 1};
    s.second = {2, 1, 0, 1};
    s.a = 1;
    s.d = 1;
    CHECK(condsum_check(s).ok());
    const Subgroup h = assemble(s);
    CHECK(classify(h).is_isotropic);
    CHECK(classify(h).is_self_dual);
    // Breaking the (c, d) isotropy condition: the assembled group is no longer isotropic.
    SelfDualSpec t;
    t.first = {4, 1, 0, 2};
    t.second = {2, 1, 0, 1};
    t.c = 1;
    t.d = 1;
    const CondSumReport r = condsum_check(t);
    CHECK_FALSE(r.cd_isotropic);
    CHECK_FALSE(classify(assemble(t)).is_isotropic);
    // y = 0 in the y = -y family is an instance of the first family.
    const CatalogEntry e = family_exy_y(4, {4, 2, 0, 2}, 1);
    CHECK(classify(assemble(e.spec)).is_self_dual);
  }

  TEST_CASE("first and second families") {
    CHECK(family_exNy0(2, 2).size() == 6);
    std::set<std::vector<std::size_t>> fam, all;
    for (const auto& e : family_exNy0(2, 2)) fam.insert(assemble(e.spec).elements());
    for (const auto& h : enumerate_self_dual_isotropic(lnn_module(2, 2))) all.insert(h.elements());
    CHECK(fam == all);
    for (long N = 1; N <= 12; ++N) {
      const auto f = family_exNy0(N, 1);
      CHECK(static_cast<long>(f.size()) == oracle::sigma0(N));
      std::set<long> ds;
      for (const auto& e : f) {
        CHECK(e.spec.first == HxyzParams{N, e.d1, 0, N / e.d1});
        ds.insert(e.d1);
      }
      CHECK(static_cast<long>(ds.size()) == oracle::sigma0(N));
    }
    for (auto [N, Np] : std::vector<std::pair<long, long>>{{4, 2}, {6, 3}, {4, 4}, {9, 3}})
      for (const auto& e : family_exNy0(N, Np)) {
        CHECK(condsum_check(e.spec).ok());
        const SubgroupClass k = classify(assemble(e.spec));
        CHECK(k.is_isotropic);
        CHECK(k.is_self_dual);
      }
    CHECK_THROWS_AS(family_exNy0(4, 3), std::invalid_argument);
  }

  TEST_CASE("y = -y family") {
    const CatalogEntry e = family_exy_y(4, {4, 1, 1, 2}, 1);
    CHECK(condsum_check(e.spec).ok());
    const Subgroup h = assemble(e.spec);
    CHECK(classify(h).is_isotropic);
    CHECK(classify(h).is_self_dual);
    // (2, 1, 2) is self-dual but not isotropic, hence not co-isotropic either.
    CHECK_THROWS_AS(family_exy_y(4, {4, 2, 1, 2}, 1), std::invalid_argument);
    for (long N : {4, 8, 9})
      for (const auto& p : normalized_params(N)) {
        if (p.y == 0 || !classify_params(p).is_coisotropic) continue;
        for (long u = 1; u < N; ++u) {
          if (std::gcd(u, N) != 1) continue;
          const Subgroup g = assemble(family_exy_y(N, p, u).spec);
          CHECK(classify(g).is_isotropic);
          CHECK(classify(g).is_self_dual);
        }
      }
  }

  TEST_CASE("generators and relations for D_{N,p}") {
    for (auto [N, p] : std::vector<std::pair<long, long>>{{2, 2}, {3, 3}, {4, 2}, {6, 2}, {6, 3}, {5, 5}}) {
      const auto list = selfdual_list_Np(N, p);
      CHECK(static_cast<long>(list.size()) == 2 * oracle::sigma0(N) + 2 * (p - 1) * oracle::sigma0(N / p));
      const FqModule m = lnn_module(N, p);
      std::set<std::vector<std::size_t>> listed, all;
      std::vector<ZVector> rows;
      for (const auto& e : list) {
        const Subgroup h = assemble(e.spec);
        listed.insert(h.elements());
        ZVector v(m.size(), 0);
        for (auto x : h.elements()) v[x] = 1;
        rows.push_back(v);
      }
      for (const auto& h : enumerate_self_dual_isotropic(m)) all.insert(h.elements());
      CHECK(listed == all);
      const auto rels = relations_Np(N, p);
      CHECK(static_cast<long>(rels.size()) == oracle::sigma0(N / p));
      CHECK(static_cast<long>(list.size() - rank(rows, m.size())) == oracle::sigma0(N / p));
      for (const auto& r : rels)
        for (std::size_t x = 0; x < m.size(); ++x) {
          mpz_class s = 0;
          for (std::size_t i = 0; i < rows.size(); ++i) s += r[i] * rows[i][x];
          CHECK(s == 0);
        }
      CHECK(static_cast<long>(invariant_space(m).dimension) ==
            (2 * p - 3) * oracle::sigma0(N / p) + 2 * oracle::sigma0(N));
    }
    const auto r = relations_Np(2, 2);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == ZVector{1, -1, -1, 1, -1, 1});
    CHECK_THROWS_AS(selfdual_list_Np(6, 4), std::invalid_argument);
    CHECK_THROWS_AS(selfdual_list_Np(6, 5), std::invalid_argument);
  }

  TEST_CASE("dimension formula") {
    CHECK(dimension_formula(6, 2) == 10);
    CHECK(dimension_formula(4, 2) == 8);
    CHECK(dimension_formula(6, 3) == 14);
    CHECK(dimension_formula(2, 2) == 5);
    for (long N = 1; N <= 30; ++N) CHECK(dimension_formula(N, 1) == oracle::sigma0(N));
    for (auto [N, Np] : std::vector<std::pair<long, long>>{{6, 2}, {4, 2}, {12, 2}, {6, 6}, {10, 10}, {12, 6}})
      CHECK(static_cast<long>(invariant_dimension_by_primary_parts(lnn_module(N, Np))) == dimension_formula(N, Np));
    CHECK(dimension_formula(30, 6) == 70);
    CHECK_THROWS_AS(dimension_formula(8, 4), std::invalid_argument);
  }

  TEST_CASE("reconstructing specs") {
    for (auto [N, Np] : std::vector<std::pair<long, long>>{{2, 2}, {4, 2}, {6, 3}, {6, 1}, {4, 4}}) {
      for (const auto& h : enumerate_self_dual_isotropic(lnn_module(N, Np))) {
        const SelfDualSpec s = reconstruct_spec(h, N, Np);
        CHECK(assemble(s) == h);
        CHECK(condsum_check(s).ok());
      }
    }
    // y = 0 family members come back with b = c = 0, the swapped ones with a = d = 0
    for (auto [N, Np] : std::vector<std::pair<long, long>>{{2, 2}, {4, 2}, {6, 3}, {4, 4}, {8, 4}})
      for (const auto& e : family_exNy0(N, Np)) {
        CAPTURE(e.str());
        const SelfDualSpec s = reconstruct_spec(assemble(e.spec), N, Np);
        if (e.kind == CatalogEntry::Kind::FirstFamily) {
          CHECK(s.b == 0);
          CHECK(s.c == 0);
        } else {
          CHECK(s.a == 0);
          CHECK(s.d == 0);
        }
        CHECK(reconstruct_spec(assemble(s), N, Np) == s);
      }
    for (long N = 1; N <= 8; ++N)
      for (const auto& h : enumerate_self_dual_isotropic(lnn_module(N, 1))) {
        const SelfDualSpec s = reconstruct_spec(h, N, 1);
        CHECK(s.first.y == 0);
        CHECK(s.first.x * s.first.z == N);
        CHECK(s.second == HxyzParams{1, 1, 0, 1});
      }
  }
}
