#include "weilrep/acceptance.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include "weilrep/borcherds.hpp"
#include "weilrep/lnn.hpp"
#include "weilrep/numtheory.hpp"
#include "weilrep/qseries.hpp"
#include "weilrep/subgroups.hpp"
#include "weilrep/weil.hpp"

namespace weilrep {

namespace {

using Pairs = std::vector<std::pair<long, long>>;
const Pairs kNpPairs = {{2, 2}, {3, 3}, {4, 2}, {6, 2}, {6, 3}};

// Runs body, which fills detail and returns the verdict; exceptions count as failures.
CriterionResult run(int id, const std::string& name, const std::function<bool(std::ostringstream&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream detail;
  try {
    r.passed = body(detail);
  } catch (const std::exception& e) {
    r.passed = false;
    detail << " exception: " << e.what();
  }
  r.detail = detail.str();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ZVector indicator(const Subgroup& h) {
  ZVector v(h.parent().size(), 0);
  for (std::size_t x : h.elements()) v[x] = 1;
  return v;
}

Subgroup h_d(long N, long d) {
  SelfDualSpec s;
  s.first = {N, d, 0, N / d};
  s.second = {1, 1, 0, 1};
  return assemble(s);
}

}  // namespace

CriterionResult criterion_invariant_dimensions() {
  return run(1, "invariant dimensions, N'=1, N <= 30", [](std::ostringstream& out) {
    long bad = 0;
    for (long N = 1; N <= 30; ++N) {
      const FqModule m = lnn_module(N, 1);
      const InvariantSpace inv = invariant_space(m);
      std::vector<ZVector> fam;
      for (long d : divisors(N)) fam.push_back(indicator(h_d(N, d)));
      const std::size_t fam_rank = rank(fam, m.size());
      std::vector<ZVector> joint = fam;
      joint.insert(joint.end(), inv.basis.begin(), inv.basis.end());
      const auto s0 = static_cast<std::size_t>(sigma0(N));
      if (!inv.certified || inv.dimension != s0 || fam_rank != s0 || rank(joint, m.size()) != s0) {
        ++bad;
        out << " N=" << N << ": dim " << inv.dimension << ", family rank " << fam_rank << ", sigma0 " << s0 << ";";
      }
    }
    out << " " << 30 - bad << "/30 levels match sigma0(N)";
    return bad == 0;
  });
}

CriterionResult criterion_span() {
  return run(2, "self-dual isotropic span = invariants", [](std::ostringstream& out) {
    Pairs cases;
    for (long N = 1; N <= 12; ++N) cases.push_back({N, 1});
    cases.insert(cases.end(), kNpPairs.begin(), kNpPairs.end());
    long bad = 0;
    for (auto [N, Np] : cases) {
      const SelfDualSpanReport rep = verify_selfdual_span(lnn_module(N, Np));
      if (!rep.span_equal) {
        ++bad;
        out << " D_{" << N << "," << Np << "}: dim " << rep.invariant_dimension << " rank " << rep.family_rank << ";";
      }
    }
    out << " " << cases.size() - bad << "/" << cases.size() << " modules";
    return bad == 0;
  });
}

CriterionResult criterion_dimension_formulas() {
  return run(3, "dimension formulas", [](std::ostringstream& out) {
    long bad = 0;
    for (auto [N, p] : kNpPairs) {
      const long expect = (2 * p - 3) * sigma0(N / p) + 2 * sigma0(N);
      const InvariantSpace inv = invariant_space(lnn_module(N, p));
      if (!inv.certified || static_cast<long>(inv.dimension) != expect || dimension_formula(N, p) != expect) {
        ++bad;
        out << " D_{" << N << "," << p << "}: kernel " << inv.dimension << " vs " << expect << ";";
      }
    }
    for (auto [N, Np] : Pairs{{6, 2}, {4, 2}, {12, 2}, {30, 6}}) {
      const FqModule m = lnn_module(N, Np);
      const long f = dimension_formula(N, Np);
      const auto by_parts = static_cast<long>(invariant_dimension_by_primary_parts(m));
      bool ok = by_parts == f;
      std::string how = "primary parts";
      if (m.size() <= enumeration_bound()) {
        const InvariantSpace inv = invariant_space(m);
        ok = ok && inv.certified && static_cast<long>(inv.dimension) == f;
        how = "full kernel";
      }
      out << " D_{" << N << "," << Np << "}=" << f << " (" << how << ");";
      if (!ok) ++bad;
    }
    return bad == 0;
  });
}

CriterionResult criterion_closed_forms() {
  return run(4, "H_{x,y,z} closed forms vs brute force, N <= 12", [](std::ostringstream& out) {
    long triples = 0, bad = 0;
    for (long N = 1; N <= 12; ++N) {
      const auto params = normalized_params(N);
      std::set<std::vector<std::size_t>> from_params;
      for (const auto& p : params) {
        ++triples;
        const Subgroup h = hxyz_subgroup(p);
        from_params.insert(h.elements());
        const bool ok = canonical_params(h) == p && h.size() == p.order() &&
                        hxyz_subgroup(hxyz_complement(p)) == complement(h) && classify_params(p) == classify(h) &&
                        normalize_params(N, p.x, p.y, p.z) == p;
        if (!ok) {
          ++bad;
          if (bad <= 5) out << " " << p.str() << ";";
        }
      }
      std::set<std::vector<std::size_t>> all;
      for (const auto& h : enumerate_subgroups(plane(N))) all.insert(h.elements());
      if (all != from_params) {
        ++bad;
        out << " N=" << N << ": parametrization misses subgroups;";
      }
    }
    out << " " << triples << " triples, " << bad << " discrepancies";
    return bad == 0;
  });
}

CriterionResult criterion_catalog() {
  return run(5, "catalog completeness for D_{N,p}, N <= 6", [](std::ostringstream& out) {
    long bad = 0, cases = 0;
    for (long N = 2; N <= 6; ++N)
      for (long p : divisors(N)) {
        if (!is_prime(static_cast<std::uint64_t>(p))) continue;
        ++cases;
        const FqModule m = lnn_module(N, p);
        const auto list = selfdual_list_Np(N, p);
        std::set<std::vector<std::size_t>> listed, enumerated;
        std::vector<ZVector> rows;
        for (const auto& e : list) {
          const Subgroup h = assemble(e.spec);
          listed.insert(h.elements());
          rows.push_back(indicator(h));
        }
        for (const auto& h : enumerate_self_dual_isotropic(m)) enumerated.insert(h.elements());
        const long count = 2 * sigma0(N) + 2 * (p - 1) * sigma0(N / p);
        // Relations live in the kernel of the transpose: sum_i r_i v_i = 0.
        const std::size_t nullity = list.size() - rank(rows, m.size());
        const auto rels = relations_Np(N, p);
        bool rels_ok = rank(rels, list.size()) == rels.size();
        for (const auto& r : rels)
          for (std::size_t x = 0; x < m.size() && rels_ok; ++x) {
            mpz_class s = 0;
            for (std::size_t i = 0; i < list.size(); ++i) s += r[i] * rows[i][x];
            rels_ok = sgn(s) == 0;
          }
        const bool ok = listed == enumerated && static_cast<long>(list.size()) == count &&
                        static_cast<long>(listed.size()) == count && static_cast<long>(nullity) == sigma0(N / p) &&
                        static_cast<long>(rels.size()) == sigma0(N / p) && rels_ok;
        out << " D_{" << N << "," << p << "}: " << list.size() << " generators, nullity " << nullity << ";";
        if (!ok) ++bad;
      }
    return bad == 0 && cases == 6;
  });
}

CriterionResult criterion_weil_relations() {
  return run(6, "Weil representation relations, |D| <= 144", [](std::ostringstream& out) {
    Pairs cases;
    for (long N = 1; N <= 12; ++N) cases.push_back({N, 1});
    for (auto pr : Pairs{{2, 2}, {3, 3}, {4, 2}, {6, 2}}) cases.push_back(pr);
    long bad = 0, subgroups = 0;
    for (auto [N, Np] : cases) {
      const FqModule m = lnn_module(N, Np);
      const WeilMatrix S = rho_S(m), T = rho_T(m), I = WeilMatrix::identity(m);
      const WeilMatrix S2 = S * S, ST = S * T;
      const bool mats = S2 * S2 == I && ST * ST * ST == S2 && S * S.conj_transpose() == I && T * T.conj_transpose() == I;
      const long root = rational_sqrt(static_cast<long>(m.size()));
      long sub_bad = 0;
      for (const auto& h : enumerate_subgroups(m)) {
        ++subgroups;
        mpq_class c(static_cast<long>(h.size()), root);
        c.canonicalize();
        if (apply_S(characteristic_vector(h)) != characteristic_vector(complement(h)) * CycNumber(c)) ++sub_bad;
      }
      if (!mats || sub_bad) {
        ++bad;
        out << " D_{" << N << "," << Np << "}: matrices " << (mats ? "ok" : "FAIL") << ", " << sub_bad << " subgroup failures;";
      }
    }
    out << " " << cases.size() - bad << "/" << cases.size() << " modules, " << subgroups << " subgroups";
    return bad == 0;
  });
}

CriterionResult criterion_lift_eta() {
  return run(7, "lift of v^{H_{d,0,N/d}} = eta(d tau), 200 terms", [](std::ostringstream& out) {
    long cases = 0, bad = 0;
    for (long N = 1; N <= 12; ++N)
      for (long d : divisors(N)) {
        ++cases;
        const InputForm f = InputForm::from_subgroups(N, 1, {{h_d(N, d), 1}});
        const LiftResult r = lift(f, 200);
        const auto [e1, e2] = eta_identify(f);
        const EtaQuotient expect{CycNumber(1), {{mpq_class(d), 0, 1}}};
        mpq_class rho(d, 24);
        rho.canonicalize();
        const auto c1 = compare_to_precision(r.psi1.normalized(), expect.expand(r.psi1.trunc()).normalized());
        const auto c2 = compare_to_precision(r.psi2.normalized(), expect.expand(r.psi2.trunc()).normalized());
        const bool ok = c1.equal && c2.equal && c1.compared_below == rho + 200 && c2.compared_below == rho + 200 &&
                        r.psi1.lead_exponent() == rho && r.psi2.lead_exponent() == rho &&
                        r.weyl.rho_kappa_prime == rho && r.weyl.rho_kappa == rho &&
                        e1.factors == expect.factors && e2.factors == expect.factors;
        if (!ok) {
          ++bad;
          out << " N=" << N << " d=" << d << ";";
        }
      }
    out << " " << cases - bad << "/" << cases << " divisor pairs";
    return bad == 0;
  });
}

CriterionResult criterion_eta_identity() {
  return run(8, "prod eta(tau + a/p) identity, 200 terms", [](std::ostringstream& out) {
    bool all = true;
    for (long p : {2, 3, 5, 7}) {
      const auto t0 = std::chrono::steady_clock::now();
      const EtaProductCheck c = verify_eta_identity(p, 200);
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const bool ok = c.ok() && s < 60;
      out << " p=" << p << (ok ? " ok" : " FAIL") << " (C=" << c.from_lift.tau1.constant.str() << ");";
      all = all && ok;
    }
    return all;
  });
}

CriterionResult criterion_eta_cross_oracle() {
  return run(9, "pentagonal eta = naive product, order 300", [](std::ostringstream& out) {
    const std::vector<std::pair<mpq_class, mpq_class>> cases = {
        {1, 0}, {2, 0}, {5, 0}, {1, mpq_class(1, 2)}, {1, mpq_class(1, 3)}, {3, mpq_class(2, 5)},
        {mpq_class(1, 2), mpq_class(1, 7)}, {mpq_class(3, 4), mpq_class(5, 6)}};
    long bad = 0;
    for (const auto& [d, r] : cases) {
      const mpq_class trunc = d / 24 + 300;
      const auto rep = compare_to_precision(eta_series(d, r, trunc), eta_series_naive(d, r, trunc));
      if (!rep.equal || rep.compared_below != trunc) ++bad;
    }
    out << " " << cases.size() - bad << "/" << cases.size() << " (scale, shift) pairs";
    return bad == 0;
  });
}

std::vector<CriterionResult> run_acceptance() {
  return {criterion_invariant_dimensions(), criterion_span(),      criterion_dimension_formulas(),
          criterion_closed_forms(),         criterion_catalog(),   criterion_weil_relations(),
          criterion_lift_eta(),             criterion_eta_identity(), criterion_eta_cross_oracle()};
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << " :" << r.detail << " [" << std::fixed
     << std::setprecision(2) << r.seconds << " s]";
  return os.str();
}

}  // namespace weilrep
