#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "weilrep/mod1.hpp"

namespace weilrep {

// Coordinates with respect to the module's generators, coords[i] in [0, orders[i]).
using Element = std::vector<long>;

// A finite quadratic module given by generator orders, Q on the generators and
// the Gram matrix of B(x, y) = Q(x + y) - Q(x) - Q(y).
//
// Elements are also addressed by a dense index in [0, size()), mixed radix with
// the first coordinate most significant. Copies share the immutable data.
class FqModule {
 public:
  FqModule(std::vector<long> orders, std::vector<Mod1Rational> q_gen,
           std::vector<std::vector<Mod1Rational>> b_gram);

  static FqModule trivial();

  std::size_t rank() const;
  const std::vector<long>& orders() const;
  const std::vector<Mod1Rational>& q_gen() const;
  const std::vector<std::vector<Mod1Rational>>& b_gram() const;

  std::size_t size() const;
  long level() const;

  std::size_t index_of(const Element& x) const;  // validates coordinates
  Element element(std::size_t idx) const;
  void decode(std::size_t idx, long* coords) const;
  std::size_t encode(const long* coords) const;  // coordinates reduced mod orders

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t sub(std::size_t a, std::size_t b) const;
  std::size_t neg(std::size_t a) const;
  std::size_t scale(long k, std::size_t a) const;

  // level()·Q(x) and level()·B(x, y) as residues in [0, level()).
  long q_num(std::size_t idx) const;
  long b_num(std::size_t a, std::size_t b) const;

  Mod1Rational q_value(const Element& x) const;
  Mod1Rational b_value(const Element& x, const Element& y) const;

  // Same presentation (orders and Gram data), not isomorphism.
  bool operator==(const FqModule& o) const;
  bool same_data(const FqModule& o) const { return d_ == o.d_; }

 private:
  struct Data;
  explicit FqModule(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

FqModule hyperbolic(long N);
FqModule direct_sum(const FqModule& a, const FqModule& b);
// D_{N,N'} = hyperbolic(N) + hyperbolic(N'), coordinates (x, y, z, w), Q = xy/N + zw/N'.
FqModule lnn_module(long N, long Nprime);

// s mod 8 with sum_x e(Q(x)) = sqrt|D| e(s/8).
int signature_mod8(const FqModule& m);

struct PrimaryComponent {
  long prime;
  FqModule module;
  // embedding[i] = index in the parent of the i-th element of the component
  std::vector<std::size_t> embedding;
};

std::vector<PrimaryComponent> p_primary_decomposition(const FqModule& m);

}  // namespace weilrep
