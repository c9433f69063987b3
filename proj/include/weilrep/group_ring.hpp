#pragma once

#include <cstddef>
#include <map>

#include "weilrep/cyclo.hpp"
#include "weilrep/fqmod.hpp"
#include "weilrep/linalg.hpp"

namespace weilrep {

// Sparse vector in C[D] with cyclotomic coefficients, keyed by element index.
class GroupRingVector {
 public:
  explicit GroupRingVector(FqModule m) : m_(std::move(m)) {}
  static GroupRingVector basis(const FqModule& m, std::size_t idx);
  static GroupRingVector from_integers(const FqModule& m, const ZVector& coords);

  const FqModule& module() const { return m_; }
  const std::map<std::size_t, CycNumber>& terms() const { return terms_; }

  CycNumber at(std::size_t idx) const;
  void set(std::size_t idx, const CycNumber& c);
  void add_to(std::size_t idx, const CycNumber& c);

  bool is_zero() const { return terms_.empty(); }
  GroupRingVector operator+(const GroupRingVector& o) const;
  GroupRingVector operator-(const GroupRingVector& o) const;
  GroupRingVector operator*(const CycNumber& c) const;
  bool operator==(const GroupRingVector& o) const;
  bool operator!=(const GroupRingVector& o) const { return !(*this == o); }

  // Dense rational coordinates; throws std::domain_error if a coefficient is irrational.
  QVector rational_coords() const;

 private:
  void check_same(const GroupRingVector& o) const;
  FqModule m_;
  std::map<std::size_t, CycNumber> terms_;
};

}  // namespace weilrep
