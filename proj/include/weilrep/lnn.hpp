#pragma once

#include <string>
#include <vector>

#include "weilrep/fqmod.hpp"
#include "weilrep/linalg.hpp"
#include "weilrep/subgroups.hpp"

namespace weilrep {

// (Z/NZ)^2 with Q(x, y) = xy/N, kept with two coordinates also for N = 1.
FqModule plane(long N);

// H_{x,y,z} = <(x, y), (0, z)> in plane(N). Normalized: x | N, z | N, 0 <= y < z,
// x the least nonzero first coordinate and z the least r with (0, r) in H.
struct HxyzParams {
  long N = 1, x = 1, y = 0, z = 1;
  bool operator==(const HxyzParams& o) const = default;
  std::size_t order() const { return static_cast<std::size_t>((N / x) * (N / z)); }
  std::string str() const;
};

// Normal form of <(x, y), (0, z)>; `note` receives a message when the input
// was not already normalized.
HxyzParams normalize_params(long N, long x, long y, long z, std::string* note = nullptr);
bool is_normalized(const HxyzParams& p);
// All normalized triples for N, i.e. one per subgroup of plane(N).
std::vector<HxyzParams> normalized_params(long N);

Subgroup hxyz_subgroup(const HxyzParams& p);
HxyzParams canonical_params(const Subgroup& h);
HxyzParams hxyz_complement(const HxyzParams& p);
SubgroupClass classify_params(const HxyzParams& p);
// Square-free N: the co-isotropic subgroups are H_{d1,0,d2} with d1 d2 | N.
std::vector<HxyzParams> coisotropic_squarefree(long N);

// H^{(a,b),(c,d)}_{(x,y,z),(x',y',z')} = <(x,y,a,b), (0,z,c,d), (0,0,N'/z',-N'y'/(x'z')), (0,0,0,N'/x')>
// in D_{N,N'}; first lives over N, second over N'.
struct SelfDualSpec {
  HxyzParams first, second;
  long a = 0, b = 0, c = 0, d = 0;
  bool operator==(const SelfDualSpec& o) const = default;
  std::string str() const;
};

Subgroup assemble(const SelfDualSpec& s);

struct CondSumReport {
  bool ab_isotropic = false;  // (N/N') ab + xy = 0 mod N
  bool cd_isotropic = false;  // cd = 0 mod N'
  bool orthogonal = false;    // (N/N')(ad + bc) + xz = 0 mod N
  bool ok() const { return ab_isotropic && cd_isotropic && orthogonal; }
};
// Throws std::invalid_argument unless N' | N, N'xz = N x'z', both triples are
// co-isotropic and (a,b), (c,d) lie in H_{x',y',z'}.
CondSumReport condsum_check(const SelfDualSpec& s);

// Members of the two y = 0 families over D_{N,N'} and of the y = -y family over D_{N,N}.
struct CatalogEntry {
  enum class Kind { FirstFamily, SecondFamily, YMinusY };
  Kind kind = Kind::FirstFamily;
  long d1 = 1, d2 = 1, d3 = 1, d4 = 1;  // y = 0 families
  HxyzParams xyz;                        // y = -y family
  long unit = 0;                         // a, resp. u
  SelfDualSpec spec;
  std::string str() const;
};

// Both y = 0 families, deduplicated as subgroups (first occurrence kept).
std::vector<CatalogEntry> family_exNy0(long N, long Nprime);
CatalogEntry family_exy_y(long N, const HxyzParams& p, long u);

// Generators for D_{N,p} in the order H_d + H_{1,0,p} (d | N), H_d + H_{p,0,1} (d | N),
// then the two twisted families for d' | N/p and a = 1..p-1.
std::vector<CatalogEntry> selfdual_list_Np(long N, long p);
// One relation per d' | N/p, as coefficient vectors over selfdual_list_Np(N, p).
std::vector<ZVector> relations_Np(long N, long p);

// prod over p | N' of (n_p(2p - 1) + 2) times prod over the other p | N of (n_p + 1).
long dimension_formula(long N, long Nprime);

// Inverse of assemble on self-dual isotropic subgroups of D_{N,N'}, with
// representatives (a,b) with b least, then a, and (c,d) with c least, then d.
SelfDualSpec reconstruct_spec(const Subgroup& h, long N, long Nprime);

}  // namespace weilrep
