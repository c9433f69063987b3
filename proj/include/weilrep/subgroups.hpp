#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "weilrep/fqmod.hpp"
#include "weilrep/group_ring.hpp"

namespace weilrep {

// A subgroup stored as its full, sorted set of element indices.
class Subgroup {
 public:
  Subgroup(FqModule parent, std::vector<std::size_t> elements, std::vector<std::size_t> gens);
  static Subgroup generated_by(const FqModule& m, const std::vector<std::size_t>& gens);
  static Subgroup generated_by(const FqModule& m, const std::vector<Element>& gens);

  const FqModule& parent() const { return parent_; }
  const std::vector<std::size_t>& elements() const { return elements_; }
  const std::vector<std::size_t>& gens() const { return gens_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(std::size_t idx) const;
  bool contains(const Subgroup& o) const;
  std::vector<Element> coords() const;

  bool operator==(const Subgroup& o) const { return elements_ == o.elements_; }
  bool operator!=(const Subgroup& o) const { return !(*this == o); }
  // Canonical order: by size, then lexicographically by element indices.
  bool operator<(const Subgroup& o) const;

 private:
  FqModule parent_;
  std::vector<std::size_t> elements_;
  std::vector<std::size_t> gens_;
};

struct SubgroupClass {
  bool is_isotropic = false;
  bool is_self_orthogonal = false;
  bool is_self_dual = false;
  bool is_coisotropic = false;
  bool operator==(const SubgroupClass& o) const = default;
};

// Upper bound on |D| for enumerations: WEILREP_MAX_D if set, else 10^4.
std::size_t enumeration_bound();

std::vector<Subgroup> enumerate_subgroups(const FqModule& m);
std::vector<Subgroup> enumerate_isotropic_subgroups(const FqModule& m);
std::vector<Subgroup> enumerate_self_dual_isotropic(const FqModule& m);

Subgroup complement(const Subgroup& h);
SubgroupClass classify(const Subgroup& h);
GroupRingVector characteristic_vector(const Subgroup& h);

// An orthogonal decomposition D = D_1 + ... + D_r, given by the projections
// onto each block as maps on element indices.
struct OrthogonalSplit {
  FqModule module;
  std::vector<std::vector<std::size_t>> projections;  // projections[b][x] = pi_b(x)
  std::vector<std::string> labels;
};
OrthogonalSplit primary_split(const FqModule& m);
// Blocks given by the first `k` generators and the remaining ones.
OrthogonalSplit coordinate_split(const FqModule& m, std::size_t k);

struct ProjectionReport {
  std::vector<std::size_t> projection_sizes;   // |H_b|
  std::vector<std::size_t> complement_sizes;   // |H_b^perp| inside block b
  bool coprime_blocks = false;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
// Checks that the projections of a self-dual isotropic H are co-isotropic with
// H meeting each block in the block complement of the projection, the
// cardinality identity |H_1||H_2^perp| = |H|, and, for blocks of coprime order,
// that H is the direct sum of its self-dual projections.
ProjectionReport projection_check(const Subgroup& h, const OrthogonalSplit& split);

}  // namespace weilrep
