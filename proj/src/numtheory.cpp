#include "weilrep/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace weilrep {

long mod(long a, long n) {
  if (n <= 0) throw std::invalid_argument("mod: modulus must be positive");
  long r = a % n;
  return r < 0 ? r + n : r;
}

long inverse_mod(long a, long n) {
  if (n <= 0) throw std::invalid_argument("inverse_mod: modulus must be positive");
  if (n == 1) return 0;
  long r0 = n, r1 = mod(a, n);
  long s0 = 0, s1 = 1;
  while (r1 != 0) {
    long q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1)
    throw std::invalid_argument("inverse_mod: " + std::to_string(a) + " is not a unit mod " +
                                std::to_string(n));
  return mod(s0, n);
}

std::vector<std::pair<long, int>> factorize(long n) {
  if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<long> divisors(long n) {
  if (n <= 0) throw std::invalid_argument("divisors: n must be positive");
  std::vector<long> small, large;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

long sigma0(long n) {
  long s = 1;
  for (auto [p, e] : factorize(n)) s *= e + 1;
  return s;
}

long euler_phi(long n) {
  long r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

bool is_squarefree(long n) {
  for (auto [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all 64-bit n.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

long isqrt_exact(long n) {
  if (n < 0) return -1;
  long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : -1;
}

}  // namespace weilrep
