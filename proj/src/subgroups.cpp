#include "weilrep/subgroups.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "weilrep/errors.hpp"
#include "weilrep/numtheory.hpp"

namespace weilrep {

namespace {

bool sorted_contains(const std::vector<std::size_t>& v, std::size_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

// Elements of <G, x> for a subgroup G given as a sorted element list.
std::vector<std::size_t> join(const FqModule& m, const std::vector<std::size_t>& g, std::size_t x) {
  std::vector<std::size_t> out = g;
  std::size_t cur = x;
  while (!sorted_contains(g, cur)) {
    for (std::size_t h : g) out.push_back(m.add(h, cur));
    cur = m.add(cur, x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct VecHash {
  std::size_t operator()(const std::vector<std::size_t>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (std::size_t x : v) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

void check_bound(const FqModule& m) {
  const std::size_t bound = enumeration_bound();
  if (m.size() > bound)
    throw ResourceLimitError("module of order " + std::to_string(m.size()) + " exceeds the enumeration bound " +
                             std::to_string(bound) + " (set WEILREP_MAX_D to raise it)");
}

bool orthogonal_to_all(const FqModule& m, std::size_t x, const std::vector<std::size_t>& gens) {
  for (std::size_t g : gens)
    if (m.b_num(x, g) != 0) return false;
  return true;
}

}  // namespace

Subgroup::Subgroup(FqModule parent, std::vector<std::size_t> elements, std::vector<std::size_t> gens)
    : parent_(std::move(parent)) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  for (std::size_t x : elements)
    if (x >= parent_.size()) throw std::invalid_argument("Subgroup: element index out of range");
  if (elements.empty() || elements.front() != 0) throw std::invalid_argument("Subgroup: must contain 0");
  // Greedy generating set from the given generators, then from the elements.
  std::vector<std::size_t> span{0};
  std::vector<std::size_t> used;
  auto absorb = [&](std::size_t x) {
    if (sorted_contains(span, x)) return;
    span = join(parent_, span, x);
    used.push_back(x);
  };
  for (std::size_t g : gens) {
    if (!sorted_contains(elements, g)) throw std::invalid_argument("Subgroup: generator outside the element set");
    absorb(g);
  }
  for (std::size_t x : elements) absorb(x);
  if (span != elements) throw std::invalid_argument("Subgroup: element set is not closed under addition");
  elements_ = std::move(elements);
  gens_ = std::move(used);
}

Subgroup Subgroup::generated_by(const FqModule& m, const std::vector<std::size_t>& gens) {
  std::vector<std::size_t> span{0};
  std::vector<std::size_t> used;
  for (std::size_t g : gens) {
    if (g >= m.size()) throw std::invalid_argument("Subgroup: generator index out of range");
    if (sorted_contains(span, g)) continue;
    span = join(m, span, g);
    used.push_back(g);
  }
  return Subgroup(m, std::move(span), std::move(used));
}

Subgroup Subgroup::generated_by(const FqModule& m, const std::vector<Element>& gens) {
  std::vector<std::size_t> idx;
  for (const auto& g : gens) idx.push_back(m.index_of(g));
  return generated_by(m, idx);
}

bool Subgroup::contains(std::size_t idx) const { return sorted_contains(elements_, idx); }

bool Subgroup::contains(const Subgroup& o) const {
  return std::includes(elements_.begin(), elements_.end(), o.elements_.begin(), o.elements_.end());
}

std::vector<Element> Subgroup::coords() const {
  std::vector<Element> out;
  out.reserve(elements_.size());
  for (std::size_t x : elements_) out.push_back(parent_.element(x));
  return out;
}

bool Subgroup::operator<(const Subgroup& o) const {
  if (elements_.size() != o.elements_.size()) return elements_.size() < o.elements_.size();
  return elements_ < o.elements_;
}

std::size_t enumeration_bound() {
  const char* env = std::getenv("WEILREP_MAX_D");
  if (env == nullptr || *env == '\0') return 10000;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw std::invalid_argument("WEILREP_MAX_D must be a positive integer");
  return static_cast<std::size_t>(v);
}

namespace {

std::vector<Subgroup> layered_closure(const FqModule& m, bool isotropic_only) {
  check_bound(m);
  std::vector<std::size_t> candidates;  // one generator per cyclic subgroup
  {
    std::unordered_set<std::vector<std::size_t>, VecHash> seen;
    for (std::size_t x = 1; x < m.size(); ++x) {
      if (isotropic_only && m.q_num(x) != 0) continue;
      auto c = join(m, {0}, x);
      if (seen.insert(c).second) candidates.push_back(x);
    }
  }
  struct Node {
    std::vector<std::size_t> elements;
    std::vector<std::size_t> gens;
  };
  std::unordered_set<std::vector<std::size_t>, VecHash> seen;
  std::vector<Node> all{{{0}, {}}};
  seen.insert({0});
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t gi : frontier) {
      for (std::size_t x : candidates) {
        const Node& g = all[gi];
        if (sorted_contains(g.elements, x)) continue;
        if (isotropic_only && !orthogonal_to_all(m, x, g.gens)) continue;
        auto e = join(m, g.elements, x);
        if (!seen.insert(e).second) continue;
        auto gens = g.gens;
        gens.push_back(x);
        all.push_back({std::move(e), std::move(gens)});
        next.push_back(all.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  out.reserve(all.size());
  for (auto& n : all) out.emplace_back(m, std::move(n.elements), std::move(n.gens));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Subgroup> enumerate_subgroups(const FqModule& m) { return layered_closure(m, false); }

std::vector<Subgroup> enumerate_isotropic_subgroups(const FqModule& m) { return layered_closure(m, true); }

std::vector<Subgroup> enumerate_self_dual_isotropic(const FqModule& m) {
  std::vector<Subgroup> out;
  for (auto& h : enumerate_isotropic_subgroups(m))
    if (h.size() * h.size() == m.size() && complement(h) == h) out.push_back(std::move(h));
  return out;
}

Subgroup complement(const Subgroup& h) {
  const FqModule& m = h.parent();
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < m.size(); ++x)
    if (orthogonal_to_all(m, x, h.gens())) out.push_back(x);
  return Subgroup(m, std::move(out), {});
}

SubgroupClass classify(const Subgroup& h) {
  const FqModule& m = h.parent();
  SubgroupClass c;
  c.is_self_orthogonal = true;
  for (std::size_t x : h.elements())
    if (!orthogonal_to_all(m, x, h.gens())) {
      c.is_self_orthogonal = false;
      break;
    }
  c.is_isotropic = c.is_self_orthogonal;
  for (std::size_t x : h.elements())
    if (c.is_isotropic && m.q_num(x) != 0) c.is_isotropic = false;
  const Subgroup perp = complement(h);
  c.is_self_dual = perp == h;
  bool perp_iso = true;
  for (std::size_t x : perp.elements())
    if (m.q_num(x) != 0 || !orthogonal_to_all(m, x, perp.gens())) {
      perp_iso = false;
      break;
    }
  c.is_coisotropic = perp_iso;
  return c;
}

GroupRingVector characteristic_vector(const Subgroup& h) {
  GroupRingVector v(h.parent());
  for (std::size_t x : h.elements()) v.set(x, CycNumber(1));
  return v;
}

OrthogonalSplit primary_split(const FqModule& m) {
  long e = 1;
  for (long d : m.orders()) e = std::lcm(e, d);
  OrthogonalSplit s{m, {}, {}};
  for (auto [p, a] : factorize(e)) {
    long pa = 1;
    for (int i = 0; i < a; ++i) pa *= p;
    const long rest = e / pa;
    const long eps = rest * inverse_mod(rest, pa);  // 1 mod p^a, 0 mod rest
    std::vector<std::size_t> proj(m.size());
    for (std::size_t x = 0; x < m.size(); ++x) proj[x] = m.scale(eps, x);
    s.projections.push_back(std::move(proj));
    s.labels.push_back("p=" + std::to_string(p));
  }
  return s;
}

OrthogonalSplit coordinate_split(const FqModule& m, std::size_t k) {
  const std::size_t r = m.rank();
  if (k > r) throw std::invalid_argument("coordinate_split: block size exceeds rank");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = k; j < r; ++j)
      if (!m.b_gram()[i][j].is_zero()) throw std::invalid_argument("coordinate_split: blocks are not orthogonal");
  OrthogonalSplit s{m, {std::vector<std::size_t>(m.size()), std::vector<std::size_t>(m.size())}, {"first", "second"}};
  std::vector<long> c(r), c1(r), c2(r);
  for (std::size_t x = 0; x < m.size(); ++x) {
    m.decode(x, c.data());
    for (std::size_t i = 0; i < r; ++i) {
      c1[i] = i < k ? c[i] : 0;
      c2[i] = i < k ? 0 : c[i];
    }
    s.projections[0][x] = m.encode(c1.data());
    s.projections[1][x] = m.encode(c2.data());
  }
  return s;
}

ProjectionReport projection_check(const Subgroup& h, const OrthogonalSplit& split) {
  const FqModule& m = h.parent();
  if (!(m == split.module)) throw std::invalid_argument("projection_check: split belongs to another module");
  const SubgroupClass cls = classify(h);
  if (!(cls.is_isotropic && cls.is_self_dual))
    throw std::invalid_argument("projection_check: subgroup is not self-dual isotropic");
  ProjectionReport rep;
  const std::size_t nb = split.projections.size();

  auto image = [&](const std::vector<std::size_t>& proj, const std::vector<std::size_t>& from) {
    std::vector<std::size_t> out;
    for (std::size_t x : from) out.push_back(proj[x]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  std::vector<std::size_t> all(m.size());
  std::iota(all.begin(), all.end(), 0);
  // Complement of a subgroup (given by generators) inside a block.
  auto block_perp = [&](const std::vector<std::size_t>& block, const std::vector<std::size_t>& gens) {
    std::vector<std::size_t> out;
    for (std::size_t x : block)
      if (orthogonal_to_all(m, x, gens)) out.push_back(x);
    return out;
  };
  auto isotropic_set = [&](const std::vector<std::size_t>& s) {
    for (std::size_t x : s) {
      if (m.q_num(x) != 0) return false;
      for (std::size_t y : s)
        if (m.b_num(x, y) != 0) return false;
    }
    return true;
  };

  std::vector<std::size_t> block_orders;
  std::vector<std::vector<std::size_t>> projs, perps;
  for (std::size_t b = 0; b < nb; ++b) {
    const auto& pb = split.projections[b];
    const std::string& lab = split.labels[b];
    auto block = image(pb, all);
    auto hb = image(pb, h.elements());
    const Subgroup hb_group(m, hb, {});
    auto perp = block_perp(block, hb_group.gens());
    rep.projection_sizes.push_back(hb.size());
    rep.complement_sizes.push_back(perp.size());
    block_orders.push_back(block.size());

    std::vector<std::size_t> meet;
    for (std::size_t x : h.elements())
      if (pb[x] == x) meet.push_back(x);
    if (meet != perp) rep.violations.push_back(lab + ": H meets the block outside the complement of its projection");
    if (!isotropic_set(perp)) rep.violations.push_back(lab + ": projection is not co-isotropic");

    // The other side: projection onto the sum of the remaining blocks.
    std::vector<std::size_t> rest_proj(m.size());
    for (std::size_t x = 0; x < m.size(); ++x) rest_proj[x] = m.sub(x, pb[x]);
    auto rest_block = image(rest_proj, all);
    auto hr = image(rest_proj, h.elements());
    const Subgroup hr_group(m, hr, {});
    auto rest_perp = block_perp(rest_block, hr_group.gens());
    if (hb.size() * rest_perp.size() != h.size() || hr.size() * perp.size() != h.size())
      rep.violations.push_back(lab + ": cardinality identity |H_1||H_2^perp| = |H_2||H_1^perp| = |H| fails");
    projs.push_back(std::move(hb));
    perps.push_back(std::move(perp));
  }

  rep.coprime_blocks = true;
  for (std::size_t a = 0; a < nb; ++a)
    for (std::size_t b = a + 1; b < nb; ++b)
      if (std::gcd(block_orders[a], block_orders[b]) != 1) rep.coprime_blocks = false;
  if (rep.coprime_blocks) {
    std::size_t prod = 1;
    for (std::size_t b = 0; b < nb; ++b) {
      prod *= projs[b].size();
      if (projs[b] != perps[b]) rep.violations.push_back(split.labels[b] + ": projection is not self-dual");
      for (std::size_t x : projs[b])
        if (!h.contains(x)) {
          rep.violations.push_back(split.labels[b] + ": projection is not contained in H");
          break;
        }
    }
    if (prod != h.size()) rep.violations.push_back("H is not the direct sum of its projections");
  }
  return rep;
}

}  // namespace weilrep
