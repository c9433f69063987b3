#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace weilrep {

// Representative of a mod n in [0, n).
long mod(long a, long n);

// Inverse of a modulo n in [0, n); throws std::invalid_argument if gcd(a, n) != 1.
long inverse_mod(long a, long n);

std::vector<std::pair<long, int>> factorize(long n);
std::vector<long> divisors(long n);  // ascending
long sigma0(long n);
long euler_phi(long n);
bool is_squarefree(long n);
bool is_prime(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);

// Exact square root of n >= 0, or -1 if n is not a perfect square.
long isqrt_exact(long n);

}  // namespace weilrep
