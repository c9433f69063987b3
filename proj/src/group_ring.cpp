#include "weilrep/group_ring.hpp"

#include <stdexcept>

namespace weilrep {

GroupRingVector GroupRingVector::basis(const FqModule& m, std::size_t idx) {
  GroupRingVector v(m);
  v.set(idx, CycNumber(1));
  return v;
}

GroupRingVector GroupRingVector::from_integers(const FqModule& m, const ZVector& coords) {
  if (coords.size() != m.size()) throw std::invalid_argument("GroupRingVector: wrong number of coordinates");
  GroupRingVector v(m);
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (sgn(coords[i]) != 0) v.terms_.emplace(i, CycNumber(coords[i]));
  return v;
}

CycNumber GroupRingVector::at(std::size_t idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? CycNumber() : it->second;
}

void GroupRingVector::set(std::size_t idx, const CycNumber& c) {
  if (idx >= m_.size()) throw std::invalid_argument("GroupRingVector: index out of range");
  if (c.is_zero())
    terms_.erase(idx);
  else
    terms_[idx] = c;
}

void GroupRingVector::add_to(std::size_t idx, const CycNumber& c) {
  if (c.is_zero()) return;
  if (idx >= m_.size()) throw std::invalid_argument("GroupRingVector: index out of range");
  auto it = terms_.find(idx);
  if (it == terms_.end()) {
    terms_.emplace(idx, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void GroupRingVector::check_same(const GroupRingVector& o) const {
  if (!(m_ == o.m_)) throw std::invalid_argument("GroupRingVector: vectors live over different modules");
}

GroupRingVector GroupRingVector::operator+(const GroupRingVector& o) const {
  check_same(o);
  GroupRingVector r = *this;
  for (const auto& [i, c] : o.terms_) r.add_to(i, c);
  return r;
}

GroupRingVector GroupRingVector::operator-(const GroupRingVector& o) const {
  check_same(o);
  GroupRingVector r = *this;
  for (const auto& [i, c] : o.terms_) r.add_to(i, -c);
  return r;
}

GroupRingVector GroupRingVector::operator*(const CycNumber& c) const {
  GroupRingVector r(m_);
  if (c.is_zero()) return r;
  for (const auto& [i, x] : terms_) r.terms_.emplace(i, x * c);
  return r;
}

bool GroupRingVector::operator==(const GroupRingVector& o) const {
  if (!(m_ == o.m_) || terms_.size() != o.terms_.size()) return false;
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  for (; a != terms_.end(); ++a, ++b)
    if (a->first != b->first || a->second != b->second) return false;
  return true;
}

QVector GroupRingVector::rational_coords() const {
  QVector v(m_.size(), 0);
  for (const auto& [i, c] : terms_) v[i] = c.rational_value();
  return v;
}

}  // namespace weilrep
