#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "weilrep/cyclo.hpp"
#include "weilrep/fqmod.hpp"
#include "weilrep/group_ring.hpp"
#include "weilrep/linalg.hpp"
#include "weilrep/subgroups.hpp"

namespace weilrep {

// Integer 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  long a = 1, b = 0, c = 0, d = 1;
  Mat2 operator*(const Mat2& o) const;
  bool operator==(const Mat2& o) const = default;
  long det() const { return a * d - b * c; }
  std::string str() const;
};
Mat2 mat_S();
Mat2 mat_T(long k = 1);

struct SL2Token {
  bool is_S = false;
  long power = 1;  // exponent of T when !is_S
  bool operator==(const SL2Token& o) const = default;
};

struct SL2Word {
  std::vector<SL2Token> tokens;  // target = tokens[0] * tokens[1] * ...
  Mat2 target;
  Mat2 evaluate() const;
  std::string str() const;
};

// Continued-fraction decomposition of a determinant-one matrix into S and T^k.
SL2Word sl2_word(const Mat2& mat);

// Exact matrix of the Weil representation: scale * body, where the body has
// entries in Z[x]/(x^N - 1), x standing for e(1/N), N = level.
class WeilMatrix {
 public:
  struct Term {
    std::int32_t exp;
    std::int64_t coeff;
  };

  static WeilMatrix identity(const FqModule& m);
  static WeilMatrix rho_T(const FqModule& m, long k = 1);
  static WeilMatrix rho_S(const FqModule& m);

  const FqModule& module() const { return m_; }
  std::size_t dim() const { return m_.size(); }
  long conductor() const;
  const CycNumber& scale() const { return scale_; }

  CycNumber entry(std::size_t i, std::size_t j) const;
  WeilMatrix operator*(const WeilMatrix& o) const;
  WeilMatrix conj_transpose() const;
  bool operator==(const WeilMatrix& o) const;
  bool operator!=(const WeilMatrix& o) const { return !(*this == o); }
  GroupRingVector apply(const GroupRingVector& v) const;

 private:
  struct Entry {
    std::uint32_t col;
    std::uint32_t start;
    std::uint32_t len;
  };
  struct Row {
    std::vector<Entry> entries;  // sorted by column
    std::vector<Term> terms;
  };
  explicit WeilMatrix(FqModule m);
  const Entry* find(std::size_t i, std::size_t j) const;

  FqModule m_;
  long N_;
  CycNumber scale_{1};
  std::vector<Row> rows_;

  friend WeilMatrix averaging_operator(const FqModule& m);
};

WeilMatrix rho_T(const FqModule& m);
WeilMatrix rho_S(const FqModule& m);
WeilMatrix rho(const FqModule& m, const Mat2& mat);

// The same actions on vectors, without building matrices.
GroupRingVector apply_T(const GroupRingVector& v, long k = 1);
GroupRingVector apply_S(const GroupRingVector& v);
GroupRingVector apply_word(const SL2Word& w, const GroupRingVector& v);
GroupRingVector apply_rho(const Mat2& mat, const GroupRingVector& v);
bool is_invariant(const GroupRingVector& v);

// [[a, b], [N, u]] with a = u^{-1} mod N taken in [0, N) and b = (a u - 1)/N.
Mat2 mu_matrix(long u, long N);

struct MuReport {
  Mat2 matrix;
  SL2Word word;
  std::size_t checked = 0;
  std::vector<std::size_t> violations;  // isotropic indices where rho(M_u) e_g != e_{ug}
  bool ok() const { return violations.empty(); }
};
MuReport verify_mu(const FqModule& m, long u);

// M = (1/N sum_n rho(T)^n) rho(S).
WeilMatrix averaging_operator(const FqModule& m);
GroupRingVector averaging_apply(const GroupRingVector& v);

struct InvariantSpace {
  std::size_t dimension = 0;
  std::vector<ZVector> basis;  // primitive integer vectors indexed by D
  bool certified = false;      // dimension matched by an independent rank bound over a prime field
};
// Joint fixed space of rho(T) and rho(S).
InvariantSpace invariant_space(const FqModule& m);
// Plain Gauss-Jordan over the cyclotomic field on [rho(T) - I; rho(S) - I]; small modules only.
std::vector<KVector> invariant_space_dense(const FqModule& m);
// dim of the invariants as the product over p-primary components.
std::size_t invariant_dimension_by_primary_parts(const FqModule& m);

struct SelfDualSpanReport {
  std::size_t invariant_dimension = 0;
  std::size_t family_size = 0;
  std::size_t family_rank = 0;
  bool span_equal = false;
};
SelfDualSpanReport verify_selfdual_span(const FqModule& m);

// Expansion of M v^H over isotropic H for prime-power level:
// M v^H = c (v^H + sum_{H'} (v^{H'} - v^{H''})), c = |H|/sqrt|D|, over the distinct
// H' = <H, g> with g isotropic in H^perp \ H and H'' = <H, p g>.
struct AveragingEntry {
  std::size_t subgroup_size = 0;
  bool self_dual = false;
  mpq_class n_H;                 // coefficient of v^H
  bool expansion_holds = false;  // the identity above holds exactly
  bool maximal_subgroup_unique = false;
  bool triangular = false;       // only supergroups of H occur
};
struct AveragingReport {
  std::vector<AveragingEntry> entries;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
AveragingReport verify_averaging_expansion(const FqModule& m);

struct FixedSpaceReport {
  std::size_t isotropic_span_dim = 0;
  std::size_t fixed_dim = 0;
  std::size_t self_dual_rank = 0;
  bool equal = false;
};
// Fixed space of M on span{v^H : H isotropic} versus span{v^H : H self-dual isotropic}.
FixedSpaceReport verify_poset_fixed_space(const FqModule& m);

}  // namespace weilrep
