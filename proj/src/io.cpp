#include "weilrep/io.hpp"

#include <stdexcept>

namespace weilrep {

std::string rational_str(const mpq_class& r0) {
  mpq_class r = r0;
  r.canonicalize();
  return r.get_den() == 1 ? r.get_num().get_str() : r.get_str();
}

mpq_class parse_rational(const std::string& s) {
  mpq_class r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0) throw std::invalid_argument("not a rational: '" + s + "'");
  r.canonicalize();
  return r;
}

Json to_json(const FqModule& m) {
  Json q = Json::array(), b = Json::array();
  for (const auto& v : m.q_gen()) q.push_back(v.str());
  for (const auto& row : m.b_gram()) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(v.str());
    b.push_back(r);
  }
  return {{"orders", m.orders()}, {"q_gen", q}, {"b_gram", b}};
}

FqModule fqmodule_from_json(const Json& j) {
  std::vector<long> orders = j.at("orders").get<std::vector<long>>();
  std::vector<Mod1Rational> q;
  for (const auto& v : j.at("q_gen")) q.push_back(Mod1Rational::parse(v.get<std::string>()));
  std::vector<std::vector<Mod1Rational>> b;
  for (const auto& row : j.at("b_gram")) {
    b.emplace_back();
    for (const auto& v : row) b.back().push_back(Mod1Rational::parse(v.get<std::string>()));
  }
  return FqModule(std::move(orders), std::move(q), std::move(b));
}

Json to_json(const CycNumber& c) {
  Json terms = Json::array();
  for (std::size_t e = 0; e < c.coeffs().size(); ++e)
    if (sgn(c.coeffs()[e]) != 0) terms.push_back(Json::array({e, rational_str(c.coeffs()[e])}));
  return {{"conductor", c.conductor()}, {"terms", terms}};
}

CycNumber cycnumber_from_json(const Json& j) {
  const long M = j.at("conductor").get<long>();
  std::vector<mpq_class> c;
  for (const auto& t : j.at("terms")) {
    const auto e = t.at(0).get<std::size_t>();
    if (c.size() <= e) c.resize(e + 1, 0);
    c[e] += parse_rational(t.at(1).get<std::string>());
  }
  return CycNumber::from_polynomial(M, std::move(c));
}

Json to_json(const SubgroupClass& c) {
  return {{"isotropic", c.is_isotropic},
          {"self_orthogonal", c.is_self_orthogonal},
          {"self_dual", c.is_self_dual},
          {"coisotropic", c.is_coisotropic}};
}

Json to_json(const Subgroup& h) {
  Json gens = Json::array();
  for (std::size_t g : h.gens()) gens.push_back(h.parent().element(g));
  return {{"order", h.size()}, {"elements", h.coords()}, {"gens", gens}};
}

Json to_json(const FracQSeries& s) {
  Json terms = Json::array();
  for (const auto& [k, c] : s.terms()) terms.push_back(Json::array({k, to_json(c)}));
  return {{"exp_den", s.exp_den()}, {"trunc", rational_str(s.trunc())}, {"terms", terms}};
}

FracQSeries fracqseries_from_json(const Json& j) {
  FracQSeries s(j.at("exp_den").get<long>(), parse_rational(j.at("trunc").get<std::string>()));
  for (const auto& t : j.at("terms")) s.set(t.at(0).get<long>(), cycnumber_from_json(t.at(1)));
  return s;
}

Json to_json(const EtaQuotient& q) {
  Json f = Json::array();
  for (const auto& x : q.factors)
    f.push_back({{"scale", rational_str(x.scale)}, {"shift", rational_str(x.shift)}, {"exponent", x.exponent}});
  return {{"prefactor", to_json(q.prefactor)}, {"factors", f}, {"text", q.str()}};
}

Json to_json(const HxyzParams& p) { return {{"N", p.N}, {"x", p.x}, {"y", p.y}, {"z", p.z}}; }

Json to_json(const SelfDualSpec& s) {
  return {{"first", to_json(s.first)}, {"second", to_json(s.second)},
          {"ab", {s.a, s.b}},           {"cd", {s.c, s.d}},           {"text", s.str()}};
}

Json to_json(const CatalogEntry& e) {
  static const char* kinds[] = {"first", "second", "y_minus_y"};
  Json j = {{"kind", kinds[static_cast<int>(e.kind)]}, {"params", to_json(e.spec)}, {"unit", e.unit}, {"text", e.str()}};
  if (e.kind == CatalogEntry::Kind::YMinusY)
    j["xyz"] = to_json(e.xyz);
  else
    j["d"] = {e.d1, e.d2, e.d3, e.d4};
  return j;
}

Json to_json(const PrecisionReport& r) {
  Json j = {{"equal", r.equal}, {"compared_below", rational_str(r.compared_below)}};
  if (r.first_mismatch) {
    j["first_mismatch"] = rational_str(*r.first_mismatch);
    j["lhs_coeff"] = r.lhs_coeff;
    j["rhs_coeff"] = r.rhs_coeff;
  }
  return j;
}

Json to_json(const EtaIdentity& id) {
  return {{"lhs", to_json(id.lhs)},
          {"rhs", to_json(id.rhs)},
          {"constant", to_json(id.constant)},
          {"verified", id.ok()},
          {"report", to_json(id.report)},
          {"text", id.str()}};
}

}  // namespace weilrep
