#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weilrep/fqmod.hpp"
#include "weilrep/lnn.hpp"
#include "weilrep/qseries.hpp"

namespace weilrep {

// An integral weight-0 invariant F = sum c_g e_g on D_{N,N'}; invariance under
// rho(T) and rho(S) is checked on construction.
class InputForm {
 public:
  InputForm(long N, long Nprime, std::vector<long> coeffs);
  // sum alpha_i v^{H_i}
  static InputForm from_subgroups(long N, long Nprime, const std::vector<std::pair<Subgroup, long>>& terms);

  long N() const { return N_; }
  long Nprime() const { return Np_; }
  const FqModule& module() const { return m_; }
  const std::vector<long>& coeffs() const { return c_; }
  long at(long x, long y, long z, long w) const;
  bool invariant() const { return true; }  // construction fails otherwise

 private:
  long N_, Np_;
  FqModule m_;
  std::vector<long> c_;
};

struct WeylVector {
  mpq_class rho_kappa_prime;  // (1/24) sum c_(0,x,0,y)
  mpq_class rho_kappa;        // (1/(24N')) sum c_(0,x,y,0)
};

WeylVector weyl_vector(const InputForm& f);

struct LiftResult {
  mpq_class weight;
  WeylVector weyl;
  FracQSeries psi1, psi2;  // product parts with leading coefficient 1
  std::optional<EtaQuotient> eta1, eta2;
  std::string constant_note = "undetermined";
};

// Product expansion at (infinity, infinity), each factor to `terms` beyond its
// leading exponent:
//   psi1 = q^(rho1) prod_{l >= 1} prod_x (1 - z_N^x q^l)^c(0,x,0,l),      rho1 = N' rho_kappa
//   psi2 = q^(rho2) prod_{l >= 1} prod_x (1 - z_N^x q^(l/N'))^c(0,x,l,0), rho2 = rho_kappa' / N'
// The prefactors are the ones forced by the Euler products; for N' = 1 they are
// rho_kappa' and rho_kappa.
LiftResult lift(const InputForm& f, long terms);

// family_exNy0(N, N') followed, when N = N', by every valid member of the
// y = -y family with y != 0; deduplicated as subgroups. Empty unless N' | N.
std::vector<CatalogEntry> lift_catalog(long N, long Nprime);

// Integer coefficients of f on lift_catalog(N, N').
struct CatalogDecomposition {
  std::vector<CatalogEntry> entries;
  std::vector<long> alpha;
};
// Throws UnsupportedInput when f is not an integral combination of the catalog.
CatalogDecomposition decompose(const InputForm& f);

// Eta quotients in tau_1 and tau_2 of a single catalog entry.
std::pair<EtaQuotient, EtaQuotient> entry_eta(const CatalogEntry& e);
std::pair<EtaQuotient, EtaQuotient> eta_identify(const InputForm& f);

struct LiftCheck {
  bool psi1_matches = false, psi2_matches = false;
  bool leads_match = false;  // leading exponents equal the Weyl-vector prefactors
  PrecisionReport report1, report2;
  bool ok() const { return psi1_matches && psi2_matches && leads_match; }
};
// Compares the normalized lift with the normalized eta expansions.
LiftCheck check_lift_against_eta(const InputForm& f, long terms);

struct CharacterReport {
  std::vector<long> divisors, alpha;
  bool weyl_first_integral = false;   // sum d alpha_d = 0 mod 24
  bool weyl_second_integral = false;  // sum (N/d) alpha_d = 0 mod 24
  bool weight_even_integer = false;   // (1/2) sum alpha_d in 2Z
  bool product_is_square = false;     // prod d^alpha_d is a rational square
  bool trivial() const {
    return weyl_first_integral && weyl_second_integral && weight_even_integer && product_is_square;
  }
};
CharacterReport character_trivial_check(long N, const std::vector<long>& alpha);  // alpha over divisors(N)
CharacterReport character_trivial_check(const InputForm& f);                     // requires N' = 1

// lhs = constant * rhs, verified exactly below the truncation.
struct EtaIdentity {
  EtaQuotient lhs, rhs;  // rhs carries the constant as its prefactor
  CycNumber constant;
  PrecisionReport report;
  bool ok() const { return report.equal; }
  std::string str() const;
};

struct RelationLift {
  EtaIdentity tau1, tau2;
  bool ok() const { return tau1.ok() && tau2.ok(); }
};

// Lifts a relation among selfdual_list_Np(N, p) and verifies both one-variable
// identities `terms` beyond their leading exponents.
RelationLift relation_to_eta_identity(long N, long p, const ZVector& rel, long terms);

// The identity prod_{a=1}^{p-1} eta(tau + a/p) = e((p-1)/48) eta(p tau)^(p+1) / (eta(tau) eta(p^2 tau)).
struct EtaProductCheck {
  long p = 0;
  EtaIdentity stated;      // the closed form, constant included
  RelationLift from_lift;  // derived from the relation on D_{p,p}
  bool constant_matches = false;
  bool ok() const { return stated.ok() && from_lift.ok() && constant_matches; }
};
EtaProductCheck verify_eta_identity(long p, long terms);

}  // namespace weilrep
