#include "weilrep/lnn.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "weilrep/errors.hpp"
#include "weilrep/numtheory.hpp"

namespace weilrep {

namespace {

std::mutex module_mutex;

const FqModule& cached_plane(long N) {
  static std::map<long, FqModule> cache;
  std::lock_guard<std::mutex> lock(module_mutex);
  auto it = cache.find(N);
  if (it == cache.end()) {
    Mod1Rational zero, b(1, N);
    it = cache.emplace(N, FqModule({N, N}, {zero, zero}, {{zero, b}, {b, zero}})).first;
  }
  return it->second;
}

const FqModule& cached_lnn(long N, long Nprime) {
  static std::map<std::pair<long, long>, FqModule> cache;
  std::lock_guard<std::mutex> lock(module_mutex);
  auto key = std::make_pair(N, Nprime);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, lnn_module(N, Nprime)).first;
  return it->second;
}

void require_params(const HxyzParams& p) {
  if (!is_normalized(p)) throw std::invalid_argument("H_{x,y,z}: parameters " + p.str() + " are not normalized");
}

bool in_hxyz(const HxyzParams& p, long a, long b) {
  a = mod(a, p.N);
  b = mod(b, p.N);
  if (a % p.x != 0) return false;
  return mod(b - (a / p.x) * p.y, p.z) == 0;
}

std::vector<long> units_mod(long n) {
  std::vector<long> out;
  for (long a = 0; a < n; ++a)
    if (std::gcd(a, n) == 1) out.push_back(a);
  return out;
}

CatalogEntry make_y0(long N, long Nprime, long d1, long d2, long d3, long d4, long a, CatalogEntry::Kind kind) {
  CatalogEntry e;
  e.kind = kind;
  e.d1 = d1;
  e.d2 = d2;
  e.d3 = d3;
  e.d4 = d4;
  e.unit = a;
  e.spec.first = {N, d1, 0, d2};
  e.spec.second = {Nprime, d3, 0, d4};
  const long ainv = Nprime == 1 ? 0 : inverse_mod(a, Nprime);
  const long p = mod(a * d3, Nprime), q = mod(-ainv * d4, Nprime);
  if (kind == CatalogEntry::Kind::FirstFamily) {
    e.spec.a = p;
    e.spec.d = q;
  } else {
    e.spec.b = q;
    e.spec.c = p;
  }
  return e;
}

}  // namespace

FqModule plane(long N) {
  if (N < 1) throw std::invalid_argument("plane: N must be positive");
  return cached_plane(N);
}

std::string HxyzParams::str() const {
  std::ostringstream os;
  os << "(" << N << "; " << x << ", " << y << ", " << z << ")";
  return os.str();
}

std::string SelfDualSpec::str() const {
  std::ostringstream os;
  os << "H[" << first.str() << ", " << second.str() << "; (" << a << ", " << b << "), (" << c << ", " << d << ")]";
  return os.str();
}

std::string CatalogEntry::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::FirstFamily:
      os << "y0-first(d=" << d1 << "," << d2 << "," << d3 << "," << d4 << "; a=" << unit << ")";
      break;
    case Kind::SecondFamily:
      os << "y0-second(d=" << d1 << "," << d2 << "," << d3 << "," << d4 << "; a=" << unit << ")";
      break;
    case Kind::YMinusY:
      os << "y-minus-y(" << xyz.str() << "; u=" << unit << ")";
      break;
  }
  return os.str();
}

HxyzParams normalize_params(long N, long x, long y, long z, std::string* note) {
  if (N < 1) throw std::invalid_argument("normalize_params: N must be positive");
  x = mod(x, N);
  y = mod(y, N);
  z = mod(z, N);
  // First coordinates of <(x,y),(0,z)> are the multiples of g = gcd(x, N); k0 x = g mod N.
  const long g = std::gcd(x, N);
  const long r = N / g;
  const long k0 = r == 1 ? 0 : inverse_mod((x / g) % r, r);
  // (0, r') lies in H iff r' is a combination of z and (N/g) y.
  const long zz = std::gcd(std::gcd(N, z), mod((N / g) * y, N));
  HxyzParams p{N, g, 0, zz};
  p.y = g == N ? 0 : mod(k0 * y, zz);
  if (note != nullptr && !(p == HxyzParams{N, x, y, z}))
    *note = "normalized " + HxyzParams{N, x, y, z}.str() + " to " + p.str();
  return p;
}

bool is_normalized(const HxyzParams& p) {
  if (p.N < 1 || p.x < 1 || p.z < 1 || p.N % p.x != 0 || p.N % p.z != 0) return false;
  if (p.y < 0 || p.y >= p.z) return false;
  return ((p.N / p.x) * p.y) % p.z == 0;
}

std::vector<HxyzParams> normalized_params(long N) {
  std::vector<HxyzParams> out;
  for (long x : divisors(N))
    for (long z : divisors(N))
      for (long y = 0; y < z; ++y) {
        HxyzParams p{N, x, y, z};
        if (is_normalized(p)) out.push_back(p);
      }
  return out;
}

Subgroup hxyz_subgroup(const HxyzParams& p) {
  require_params(p);
  const FqModule& m = cached_plane(p.N);
  return Subgroup::generated_by(m, std::vector<Element>{{mod(p.x, p.N), mod(p.y, p.N)}, {0, mod(p.z, p.N)}});
}

HxyzParams canonical_params(const Subgroup& h) {
  const FqModule& m = h.parent();
  if (m.rank() != 2 || m.orders()[0] != m.orders()[1])
    throw std::invalid_argument("canonical_params: subgroup must live in (Z/NZ)^2");
  const long N = m.orders()[0];
  HxyzParams p{N, N, 0, N};
  for (std::size_t idx : h.elements()) {
    const Element e = m.element(idx);
    if (e[0] != 0) p.x = std::min(p.x, e[0]);
    if (e[0] == 0 && e[1] != 0) p.z = std::min(p.z, e[1]);
  }
  const long xr = p.x % N;
  long y = N;
  for (std::size_t idx : h.elements()) {
    const Element e = m.element(idx);
    if (e[0] == xr) y = std::min(y, e[1]);
  }
  p.y = y;
  return p;
}

HxyzParams hxyz_complement(const HxyzParams& p) {
  require_params(p);
  const long N = p.N;
  const long t = (N / p.x) * p.y / p.z;  // N y / (x z), integral for normalized triples
  HxyzParams c{N, N / p.z, 0, N / p.x};
  c.y = mod(-t, c.z);
  return c;
}

SubgroupClass classify_params(const HxyzParams& p) {
  require_params(p);
  const long N = p.N, x = p.x, y = p.y, z = p.z;
  SubgroupClass c;
  c.is_isotropic = (x * z) % N == 0 && (x * y) % N == 0;
  c.is_self_orthogonal = (x * z) % N == 0 && (2 * x * y) % N == 0;
  c.is_coisotropic = N % (x * z) == 0 && (N * y) % (x * z * z) == 0;
  c.is_self_dual = hxyz_complement(p) == p;
  return c;
}

std::vector<HxyzParams> coisotropic_squarefree(long N) {
  if (!is_squarefree(N)) throw std::invalid_argument("coisotropic_squarefree: N must be square-free");
  std::vector<HxyzParams> out;
  for (long d1 : divisors(N))
    for (long d2 : divisors(N))
      if (N % (d1 * d2) == 0) out.push_back({N, d1, 0, d2});
  return out;
}

Subgroup assemble(const SelfDualSpec& s) {
  require_params(s.first);
  require_params(s.second);
  const long N = s.first.N, Np = s.second.N;
  if (N % Np != 0) throw std::invalid_argument("assemble: N' must divide N");
  const HxyzParams& q = s.second;
  if ((Np * q.y) % (q.x * q.z) != 0)
    throw std::invalid_argument("assemble: N'y'/(x'z') is not integral for " + q.str());
  const FqModule& m = cached_lnn(N, Np);
  auto el = [&](long a, long b, long c, long d) { return Element{mod(a, N), mod(b, N), mod(c, Np), mod(d, Np)}; };
  return Subgroup::generated_by(m, std::vector<Element>{el(s.first.x, s.first.y, s.a, s.b), el(0, s.first.z, s.c, s.d),
                                                        el(0, 0, Np / q.z, -(Np * q.y) / (q.x * q.z)),
                                                        el(0, 0, 0, Np / q.x)});
}

CondSumReport condsum_check(const SelfDualSpec& s) {
  require_params(s.first);
  require_params(s.second);
  const long N = s.first.N, Np = s.second.N;
  if (N % Np != 0) throw std::invalid_argument("condsum_check: N' must divide N");
  const long x = s.first.x, y = s.first.y, z = s.first.z;
  if (Np * x * z != N * s.second.x * s.second.z)
    throw std::invalid_argument("condsum_check: N'xz != Nx'z' for " + s.str());
  if (!classify_params(s.first).is_coisotropic || !classify_params(s.second).is_coisotropic)
    throw std::invalid_argument("condsum_check: both triples must be co-isotropic in " + s.str());
  if (!in_hxyz(s.second, s.a, s.b) || !in_hxyz(s.second, s.c, s.d))
    throw std::invalid_argument("condsum_check: (a,b) and (c,d) must lie in H_{x',y',z'} for " + s.str());
  const long r = N / Np;
  CondSumReport rep;
  rep.ab_isotropic = mod(r * s.a * s.b + x * y, N) == 0;
  rep.cd_isotropic = mod(s.c * s.d, Np) == 0;
  rep.orthogonal = mod(r * (s.a * s.d + s.b * s.c) + x * z, N) == 0;
  return rep;
}

std::vector<CatalogEntry> family_exNy0(long N, long Nprime) {
  if (N < 1 || Nprime < 1 || N % Nprime != 0) throw std::invalid_argument("family_exNy0: need N' | N");
  std::vector<CatalogEntry> out;
  std::set<std::vector<std::size_t>> seen;
  for (auto kind : {CatalogEntry::Kind::FirstFamily, CatalogEntry::Kind::SecondFamily})
    for (long d1 : divisors(N))
      for (long d2 : divisors(N)) {
        if (N % (d1 * d2) != 0) continue;
        for (long d3 : divisors(Nprime))
          for (long d4 : divisors(Nprime)) {
            if (Nprime % (d3 * d4) != 0 || Nprime * d1 * d2 != N * d3 * d4) continue;
            for (long a : units_mod(Nprime)) {
              CatalogEntry e = make_y0(N, Nprime, d1, d2, d3, d4, a, kind);
              if (seen.insert(assemble(e.spec).elements()).second) out.push_back(std::move(e));
            }
          }
      }
  return out;
}

CatalogEntry family_exy_y(long N, const HxyzParams& p, long u) {
  if (p.N != N) throw std::invalid_argument("family_exy_y: parameters must be taken over N");
  require_params(p);
  if (!classify_params(p).is_coisotropic) throw std::invalid_argument("family_exy_y: " + p.str() + " is not co-isotropic");
  if (std::gcd(mod(u, N), N) != 1) throw std::invalid_argument("family_exy_y: u must be a unit mod N");
  const long uinv = N == 1 ? 0 : inverse_mod(mod(u, N), N);
  CatalogEntry e;
  e.kind = CatalogEntry::Kind::YMinusY;
  e.xyz = p;
  e.unit = mod(u, N);
  e.spec.first = p;
  e.spec.second = normalize_params(N, p.x, -p.y, p.z);
  e.spec.a = mod(-u * p.x, N);
  e.spec.b = mod(uinv * p.y, N);
  e.spec.c = 0;
  e.spec.d = mod(uinv * p.z, N);
  if (!condsum_check(e.spec).ok()) throw std::invalid_argument("family_exy_y: conditions fail for " + e.spec.str());
  return e;
}

std::vector<CatalogEntry> selfdual_list_Np(long N, long p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("selfdual_list_Np: p must be prime");
  if (N < 1 || N % p != 0) throw std::invalid_argument("selfdual_list_Np: p must divide N");
  std::vector<CatalogEntry> out;
  using K = CatalogEntry::Kind;
  for (long d : divisors(N)) out.push_back(make_y0(N, p, d, N / d, 1, p, 1, K::FirstFamily));
  for (long d : divisors(N)) out.push_back(make_y0(N, p, d, N / d, p, 1, 1, K::FirstFamily));
  for (K kind : {K::FirstFamily, K::SecondFamily})
    for (long dp : divisors(N / p))
      for (long a = 1; a < p; ++a) out.push_back(make_y0(N, p, dp, N / (p * dp), 1, 1, a, kind));
  return out;
}

std::vector<ZVector> relations_Np(long N, long p) {
  const auto list = selfdual_list_Np(N, p);
  const auto divN = divisors(N), divNp = divisors(N / p);
  const std::size_t s = divN.size(), t = divNp.size();
  auto pos = [&](long d) { return static_cast<std::size_t>(std::find(divN.begin(), divN.end(), d) - divN.begin()); };
  std::vector<ZVector> out;
  for (std::size_t j = 0; j < t; ++j) {
    const long dp = divNp[j];
    ZVector v(list.size(), 0);
    v[pos(dp)] += 1;
    v[s + pos(dp)] -= 1;
    v[pos(p * dp)] -= 1;
    v[s + pos(p * dp)] += 1;
    for (long a = 1; a < p; ++a) {
      v[2 * s + j * (p - 1) + (a - 1)] -= 1;
      v[2 * s + t * (p - 1) + j * (p - 1) + (a - 1)] += 1;
    }
    out.push_back(std::move(v));
  }
  return out;
}

long dimension_formula(long N, long Nprime) {
  if (N < 1 || Nprime < 1 || N % Nprime != 0) throw std::invalid_argument("dimension_formula: N' must divide N");
  if (!is_squarefree(Nprime)) throw std::invalid_argument("dimension_formula: N' must be square-free");
  long dim = 1;
  for (auto [p, n] : factorize(N)) dim *= Nprime % p == 0 ? n * (2 * p - 1) + 2 : n + 1;
  return dim;
}

SelfDualSpec reconstruct_spec(const Subgroup& h, long N, long Nprime) {
  const FqModule& m = h.parent();
  if (!(m == cached_lnn(N, Nprime))) throw std::invalid_argument("reconstruct_spec: subgroup is not in D_{N,N'}");
  const SubgroupClass cls = classify(h);
  if (!cls.is_isotropic || !cls.is_self_dual)
    throw std::invalid_argument("reconstruct_spec: subgroup must be self-dual isotropic");
  const ProjectionReport pr = projection_check(h, coordinate_split(m, 2));
  if (!pr.ok()) throw VerificationError("reconstruct_spec: projection lemma fails: " + pr.violations.front());

  const FqModule& p1 = cached_plane(N);
  const FqModule& p2 = cached_plane(Nprime);
  std::set<std::size_t> e1, e2;
  for (std::size_t idx : h.elements()) {
    const Element e = m.element(idx);
    e1.insert(p1.index_of({e[0], e[1]}));
    e2.insert(p2.index_of({e[2], e[3]}));
  }
  SelfDualSpec s;
  s.first = canonical_params(Subgroup(p1, {e1.begin(), e1.end()}, {}));
  s.second = canonical_params(Subgroup(p2, {e2.begin(), e2.end()}, {}));
  std::pair<long, long> ab{Nprime, Nprime}, cd{Nprime, Nprime};
  const long x = s.first.x % N, y = s.first.y, z = s.first.z % N;
  for (std::size_t idx : h.elements()) {
    const Element e = m.element(idx);
    // least b, resp. least c, first: b = c = 0 whenever the coset allows it
    if (e[0] == x && e[1] == y) ab = std::min(ab, {e[3], e[2]});
    if (e[0] == 0 && e[1] == z) cd = std::min(cd, {e[2], e[3]});
  }
  s.a = ab.second;
  s.b = ab.first;
  s.c = cd.first;
  s.d = cd.second;
  if (assemble(s) != h) throw VerificationError("reconstruct_spec: reassembly differs for " + s.str());
  return s;
}

}  // namespace weilrep
