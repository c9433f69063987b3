#include "weilrep/fqmod.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "weilrep/numtheory.hpp"

namespace weilrep {

struct FqModule::Data {
  std::vector<long> orders;
  std::vector<Mod1Rational> q_gen;
  std::vector<std::vector<Mod1Rational>> b_gram;
  std::vector<std::size_t> stride;
  std::size_t size = 1;
  long level = 1;
  std::vector<long> qs;                // level·Q(g_i)
  std::vector<std::vector<long>> bs;   // level·B(g_i, g_j)
  std::vector<long> q_table;           // level·Q(x) per index, filled for small modules

  long q_from_coords(const long* c) const {
    const std::size_t k = orders.size();
    __int128 acc = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (c[i] == 0) continue;
      acc += static_cast<__int128>(c[i]) * c[i] % level * qs[i];
      for (std::size_t j = i + 1; j < k; ++j)
        if (c[j] != 0) acc += static_cast<__int128>(c[i]) * c[j] % level * bs[i][j];
      acc %= level;
    }
    return static_cast<long>(acc % level);
  }
};

namespace {

constexpr std::size_t kMaxModuleSize = std::size_t{1} << 32;
constexpr std::size_t kQTableLimit = std::size_t{1} << 24;

}  // namespace

FqModule::FqModule(std::vector<long> orders, std::vector<Mod1Rational> q_gen,
                   std::vector<std::vector<Mod1Rational>> b_gram) {
  const std::size_t k = orders.size();
  if (q_gen.size() != k || b_gram.size() != k)
    throw std::invalid_argument("FqModule: orders, q_gen and b_gram sizes differ");
  for (const auto& row : b_gram)
    if (row.size() != k) throw std::invalid_argument("FqModule: b_gram is not square");

  auto d = std::make_shared<Data>();
  for (std::size_t i = 0; i < k; ++i) {
    if (orders[i] < 1) throw std::invalid_argument("FqModule: generator orders must be >= 1");
    if (d->size > kMaxModuleSize / static_cast<std::size_t>(orders[i]))
      throw std::invalid_argument("FqModule: module too large");
    d->size *= static_cast<std::size_t>(orders[i]);
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!(b_gram[i][i] == q_gen[i].times(2)))
      throw std::invalid_argument("FqModule: B(g_i, g_i) != 2 Q(g_i) for generator " +
                                  std::to_string(i));
    if (!q_gen[i].times(orders[i]).times(orders[i]).is_zero())
      throw std::invalid_argument("FqModule: Q(d_i g_i) != 0 for generator " + std::to_string(i));
    for (std::size_t j = 0; j < k; ++j) {
      if (!(b_gram[i][j] == b_gram[j][i]))
        throw std::invalid_argument("FqModule: b_gram is not symmetric");
      if (!b_gram[i][j].times(orders[i]).is_zero())
        throw std::invalid_argument("FqModule: B(d_i g_i, g_j) != 0");
    }
  }
  long L = 1;
  for (std::size_t i = 0; i < k; ++i) {
    L = std::lcm(L, q_gen[i].den());
    for (std::size_t j = 0; j < k; ++j) L = std::lcm(L, b_gram[i][j].den());
  }
  d->level = L;
  d->qs.resize(k);
  d->bs.assign(k, std::vector<long>(k));
  for (std::size_t i = 0; i < k; ++i) {
    d->qs[i] = q_gen[i].num() * (L / q_gen[i].den());
    for (std::size_t j = 0; j < k; ++j) d->bs[i][j] = b_gram[i][j].num() * (L / b_gram[i][j].den());
  }
  d->stride.assign(k, 1);
  for (std::size_t i = k; i-- > 1;) d->stride[i - 1] = d->stride[i] * orders[i];
  d->orders = std::move(orders);
  d->q_gen = std::move(q_gen);
  d->b_gram = std::move(b_gram);

  if (d->size <= kQTableLimit) {
    d->q_table.resize(d->size);
    std::vector<long> c(k, 0);
    for (std::size_t idx = 0; idx < d->size; ++idx) {
      d->q_table[idx] = d->q_from_coords(c.data());
      for (std::size_t i = k; i-- > 0;) {
        if (++c[i] < d->orders[i]) break;
        c[i] = 0;
      }
    }
  }
  d_ = std::move(d);

  // Non-degeneracy: every nonzero x pairs nontrivially with some generator.
  std::vector<long> c(k);
  for (std::size_t idx = 1; idx < d_->size; ++idx) {
    decode(idx, c.data());
    bool found = false;
    for (std::size_t j = 0; j < k && !found; ++j) {
      __int128 acc = 0;
      for (std::size_t i = 0; i < k; ++i) acc += static_cast<__int128>(c[i]) * d_->bs[i][j];
      found = acc % L != 0;
    }
    if (!found)
      throw std::invalid_argument("FqModule: bilinear form is degenerate (radical contains index " +
                                  std::to_string(idx) + ")");
  }
}

FqModule FqModule::trivial() { return FqModule({}, {}, {}); }

std::size_t FqModule::rank() const { return d_->orders.size(); }
const std::vector<long>& FqModule::orders() const { return d_->orders; }
const std::vector<Mod1Rational>& FqModule::q_gen() const { return d_->q_gen; }
const std::vector<std::vector<Mod1Rational>>& FqModule::b_gram() const { return d_->b_gram; }
std::size_t FqModule::size() const { return d_->size; }
long FqModule::level() const { return d_->level; }

std::size_t FqModule::index_of(const Element& x) const {
  if (x.size() != rank())
    throw std::invalid_argument("element has " + std::to_string(x.size()) + " coordinates, expected " +
                                std::to_string(rank()));
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < 0 || x[i] >= d_->orders[i])
      throw std::invalid_argument("element coordinate " + std::to_string(i) + " out of range");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) idx += static_cast<std::size_t>(x[i]) * d_->stride[i];
  return idx;
}

Element FqModule::element(std::size_t idx) const {
  if (idx >= d_->size) throw std::invalid_argument("element index out of range");
  Element x(rank());
  decode(idx, x.data());
  return x;
}

void FqModule::decode(std::size_t idx, long* coords) const {
  for (std::size_t i = 0; i < d_->orders.size(); ++i) {
    coords[i] = static_cast<long>(idx / d_->stride[i]);
    idx %= d_->stride[i];
  }
}

std::size_t FqModule::encode(const long* coords) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < d_->orders.size(); ++i)
    idx += static_cast<std::size_t>(mod(coords[i], d_->orders[i])) * d_->stride[i];
  return idx;
}

namespace {
constexpr std::size_t kMaxRank = 64;
}

std::size_t FqModule::add(std::size_t a, std::size_t b) const {
  const std::size_t k = rank();
  std::size_t idx = 0;
  for (std::size_t i = 0; i < k; ++i) {
    long ai = static_cast<long>(a / d_->stride[i]), bi = static_cast<long>(b / d_->stride[i]);
    a %= d_->stride[i];
    b %= d_->stride[i];
    long s = ai + bi;
    if (s >= d_->orders[i]) s -= d_->orders[i];
    idx += static_cast<std::size_t>(s) * d_->stride[i];
  }
  return idx;
}

std::size_t FqModule::neg(std::size_t a) const {
  const std::size_t k = rank();
  std::size_t idx = 0;
  for (std::size_t i = 0; i < k; ++i) {
    long ai = static_cast<long>(a / d_->stride[i]);
    a %= d_->stride[i];
    long s = ai == 0 ? 0 : d_->orders[i] - ai;
    idx += static_cast<std::size_t>(s) * d_->stride[i];
  }
  return idx;
}

std::size_t FqModule::sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }

std::size_t FqModule::scale(long k, std::size_t a) const {
  const std::size_t r = rank();
  std::size_t idx = 0;
  for (std::size_t i = 0; i < r; ++i) {
    long ai = static_cast<long>(a / d_->stride[i]);
    a %= d_->stride[i];
    long s = static_cast<long>(static_cast<__int128>(ai) * mod(k, d_->orders[i]) % d_->orders[i]);
    idx += static_cast<std::size_t>(s) * d_->stride[i];
  }
  return idx;
}

long FqModule::q_num(std::size_t idx) const {
  if (!d_->q_table.empty()) return d_->q_table[idx];
  long c[kMaxRank];
  if (rank() > kMaxRank) throw std::invalid_argument("FqModule: rank too large");
  decode(idx, c);
  return d_->q_from_coords(c);
}

long FqModule::b_num(std::size_t a, std::size_t b) const {
  const long L = d_->level;
  if (!d_->q_table.empty()) return mod(d_->q_table[add(a, b)] - d_->q_table[a] - d_->q_table[b], L);
  return mod(q_num(add(a, b)) - q_num(a) - q_num(b), L);
}

Mod1Rational FqModule::q_value(const Element& x) const {
  return Mod1Rational(q_num(index_of(x)), level());
}

Mod1Rational FqModule::b_value(const Element& x, const Element& y) const {
  const std::size_t k = rank();
  std::size_t ix = index_of(x), iy = index_of(y);
  (void)ix;
  (void)iy;
  __int128 acc = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      acc = (acc + static_cast<__int128>(x[i]) * y[j] % level() * d_->bs[i][j]) % level();
  return Mod1Rational(static_cast<long>(acc), level());
}

bool FqModule::operator==(const FqModule& o) const {
  if (d_ == o.d_) return true;
  return d_->orders == o.d_->orders && d_->q_gen == o.d_->q_gen && d_->b_gram == o.d_->b_gram;
}

FqModule hyperbolic(long N) {
  if (N <= 0) throw std::invalid_argument("hyperbolic: N must be positive");
  if (N == 1) return FqModule::trivial();
  Mod1Rational zero, b(1, N);
  return FqModule({N, N}, {zero, zero}, {{zero, b}, {b, zero}});
}

FqModule direct_sum(const FqModule& a, const FqModule& b) {
  std::vector<long> orders = a.orders();
  orders.insert(orders.end(), b.orders().begin(), b.orders().end());
  std::vector<Mod1Rational> q = a.q_gen();
  q.insert(q.end(), b.q_gen().begin(), b.q_gen().end());
  const std::size_t ka = a.rank(), k = orders.size();
  std::vector<std::vector<Mod1Rational>> g(k, std::vector<Mod1Rational>(k));
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < ka; ++j) g[i][j] = a.b_gram()[i][j];
  for (std::size_t i = ka; i < k; ++i)
    for (std::size_t j = ka; j < k; ++j) g[i][j] = b.b_gram()[i - ka][j - ka];
  return FqModule(std::move(orders), std::move(q), std::move(g));
}

FqModule lnn_module(long N, long Nprime) {
  if (N <= 0 || Nprime <= 0) throw std::invalid_argument("lnn_module: N and N' must be positive");
  if (N % Nprime != 0) throw std::invalid_argument("lnn_module: N' must divide N");
  // Always four coordinates, even when N' = 1, so elements read (x, y, z, w).
  Mod1Rational zero, b1(1, N), b2(1, Nprime);
  return FqModule({N, N, Nprime, Nprime}, {zero, zero, zero, zero},
                  {{zero, b1, zero, zero}, {b1, zero, zero, zero}, {zero, zero, zero, b2}, {zero, zero, b2, zero}});
}

std::vector<PrimaryComponent> p_primary_decomposition(const FqModule& m) {
  long exponent = 1;
  for (long d : m.orders()) exponent = std::lcm(exponent, d);
  std::vector<PrimaryComponent> out;
  const std::size_t k = m.rank();
  for (auto [p, e] : factorize(exponent)) {
    std::vector<std::size_t> gens;
    std::vector<long> mult, orders;
    for (std::size_t i = 0; i < k; ++i) {
      long d = m.orders()[i], pp = 1;
      while (d % p == 0) {
        d /= p;
        pp *= p;
      }
      if (pp == 1) continue;
      gens.push_back(i);
      mult.push_back(d);
      orders.push_back(pp);
    }
    const std::size_t r = gens.size();
    std::vector<Mod1Rational> q(r);
    std::vector<std::vector<Mod1Rational>> g(r, std::vector<Mod1Rational>(r));
    for (std::size_t a = 0; a < r; ++a) {
      q[a] = m.q_gen()[gens[a]].times(mult[a]).times(mult[a]);
      for (std::size_t b = 0; b < r; ++b)
        g[a][b] = m.b_gram()[gens[a]][gens[b]].times(mult[a]).times(mult[b]);
    }
    FqModule comp(orders, std::move(q), std::move(g));
    std::vector<std::size_t> emb(comp.size());
    std::vector<long> cc(r), pc(k);
    for (std::size_t idx = 0; idx < comp.size(); ++idx) {
      comp.decode(idx, cc.data());
      std::fill(pc.begin(), pc.end(), 0);
      for (std::size_t a = 0; a < r; ++a) pc[gens[a]] = cc[a] * mult[a];
      emb[idx] = m.encode(pc.data());
    }
    out.push_back({p, std::move(comp), std::move(emb)});
  }
  return out;
}

}  // namespace weilrep
