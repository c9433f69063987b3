#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "weilrep/acceptance.hpp"
#include "weilrep/borcherds.hpp"
#include "weilrep/errors.hpp"
#include "weilrep/io.hpp"
#include "weilrep/numtheory.hpp"
#include "weilrep/weil.hpp"

using namespace weilrep;

namespace {

enum Exit { kOk = 0, kUsage = 1, kMismatch = 2, kResource = 3 };

struct ModuleArgs {
  long N = 0, Nprime = 1;
  std::string module_json;
};

void add_module_flags(CLI::App* app, ModuleArgs& a) {
  app->add_option("--N", a.N, "level N of D_{N,N'}");
  app->add_option("--Nprime", a.Nprime, "N' of D_{N,N'}")->capture_default_str();
  app->add_option("--module", a.module_json, "module as JSON {orders, q_gen, b_gram}");
}

FqModule module_from(const ModuleArgs& a) {
  if (!a.module_json.empty()) return fqmodule_from_json(Json::parse(a.module_json));
  if (a.N < 1 || a.Nprime < 1) throw CLI::ValidationError("give --N (and --Nprime) or --module");
  return lnn_module(a.N, a.Nprime);
}

void check_bound(const FqModule& m) {
  if (m.size() > enumeration_bound())
    throw ResourceLimitError("module of order " + std::to_string(m.size()) + " exceeds the bound " +
                             std::to_string(enumeration_bound()) + " (set WEILREP_MAX_D)");
}

bool text_output = false;

void emit(const Json& j) {
  std::cout << (text_output ? j.dump(2) : j.dump()) << "\n";
}

// Coefficients of an invariant on D_{N,N'}: a JSON array in element-index order,
// or an object {"x,y,z,w": c}.
std::vector<long> parse_coeffs(const std::string& s, const FqModule& m) {
  const Json j = Json::parse(s);
  if (j.is_array()) return j.get<std::vector<long>>();
  if (!j.is_object()) throw CLI::ValidationError("--coeffs must be a JSON array or object");
  std::vector<long> c(m.size(), 0);
  for (const auto& [key, val] : j.items()) {
    Element e;
    std::stringstream ss(key);
    for (std::string part; std::getline(ss, part, ',');) e.push_back(std::stol(part));
    c[m.index_of(e)] += val.get<long>();
  }
  return c;
}

int cmd_discform(const ModuleArgs& a) {
  const FqModule m = module_from(a);
  Json j = to_json(m);
  j["size"] = m.size();
  j["level"] = m.level();
  j["signature_mod8"] = signature_mod8(m);
  j["gauss_sum"] = to_json(gauss_sum(m));
  emit(j);
  return kOk;
}

int cmd_subgroups(const ModuleArgs& a, const std::string& which) {
  const FqModule m = module_from(a);
  std::vector<Subgroup> hs;
  if (which == "all")
    hs = enumerate_subgroups(m);
  else if (which == "isotropic")
    hs = enumerate_isotropic_subgroups(m);
  else
    hs = enumerate_self_dual_isotropic(m);
  for (const auto& h : hs) {
    Json j = to_json(h);
    j["class"] = to_json(classify(h));
    std::cout << j.dump() << "\n";
  }
  return kOk;
}

int cmd_invariants(const ModuleArgs& a, bool by_parts) {
  const FqModule m = module_from(a);
  if (by_parts) {
    emit({{"dimension", invariant_dimension_by_primary_parts(m)}, {"method", "primary parts"}});
    return kOk;
  }
  check_bound(m);
  const InvariantSpace inv = invariant_space(m);
  Json basis = Json::array();
  for (const auto& v : inv.basis) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(x.get_si());
    basis.push_back(row);
  }
  Json j = {{"dimension", inv.dimension}, {"certified", inv.certified}, {"basis", basis}};
  const auto family = enumerate_self_dual_isotropic(m);
  if (!family.empty()) j["selfdual_family_rank"] = verify_selfdual_span(m).family_rank;
  emit(j);
  return kOk;
}

int cmd_lnn_selfdual(long N, long Nprime) {
  for (const auto& e : lift_catalog(N, Nprime)) {
    const Subgroup h = assemble(e.spec);
    Json j = to_json(e);
    j["subgroup"] = to_json(h);
    j["class"] = to_json(classify(h));
    if (N % Nprime == 0) {
      try {
        const CondSumReport r = condsum_check(e.spec);
        j["conditions"] = {{"ab_isotropic", r.ab_isotropic}, {"cd_isotropic", r.cd_isotropic}, {"orthogonal", r.orthogonal}};
      } catch (const std::invalid_argument&) {
      }
    }
    std::cout << j.dump() << "\n";
  }
  return kOk;
}

int cmd_lnn_relations(long N, long p) {
  const auto list = selfdual_list_Np(N, p);
  Json gens = Json::array(), rels = Json::array();
  for (const auto& e : list) gens.push_back(e.str());
  for (const auto& r : relations_Np(N, p)) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(x.get_si());
    rels.push_back(row);
  }
  emit({{"generators", gens}, {"relations", rels}, {"dimension", dimension_formula(N, p)}});
  return kOk;
}

int cmd_lift(long N, long Nprime, const std::string& coeffs, long prec) {
  const FqModule m = lnn_module(N, Nprime);
  check_bound(m);
  const InputForm f(N, Nprime, parse_coeffs(coeffs, m));
  const LiftResult r = lift(f, prec);
  Json j = {{"weight", rational_str(r.weight)},
            {"weyl", {rational_str(r.weyl.rho_kappa_prime), rational_str(r.weyl.rho_kappa)}},
            {"psi1", to_json(r.psi1)},
            {"psi2", to_json(r.psi2)},
            {"eta1", nullptr},
            {"eta2", nullptr},
            {"constant", r.constant_note}};
  int code = kOk;
  try {
    const auto [e1, e2] = eta_identify(f);
    j["eta1"] = to_json(e1);
    j["eta2"] = to_json(e2);
    const LiftCheck c = check_lift_against_eta(f, prec);
    j["eta_check"] = {{"psi1", to_json(c.report1)}, {"psi2", to_json(c.report2)}, {"leading_exponents", c.leads_match}};
    if (!c.ok()) code = kMismatch;
  } catch (const UnsupportedInput& e) {
    j["eta_note"] = e.what();
  }
  if (text_output) {
    std::cout << "weight " << rational_str(r.weight) << "\nweyl (" << rational_str(r.weyl.rho_kappa_prime) << ", "
              << rational_str(r.weyl.rho_kappa) << ")\n";
    if (!j["eta1"].is_null())
      std::cout << "eta1 " << j["eta1"]["text"].get<std::string>() << "\neta2 " << j["eta2"]["text"].get<std::string>() << "\n";
    std::cout << "psi1\n" << r.psi1.str() << "psi2\n" << r.psi2.str();
  } else {
    emit(j);
  }
  return code;
}

int cmd_verify_eta(long p, long prec) {
  const EtaProductCheck c = verify_eta_identity(p, prec);
  const Json j = {{"p", p},
                  {"terms", prec},
                  {"verified", c.ok()},
                  {"stated", to_json(c.stated)},
                  {"from_lift", {{"tau1", to_json(c.from_lift.tau1)}, {"tau2", to_json(c.from_lift.tau2)}}},
                  {"constant_matches", c.constant_matches}};
  if (text_output) {
    std::cout << (c.ok() ? "PASS " : "FAIL ") << c.stated.str() << "\n";
    std::cout << "  from the lift: " << c.from_lift.tau1.str() << "\n";
  } else {
    emit(j);
  }
  return c.ok() ? kOk : kMismatch;
}

int cmd_eta_expand(const std::string& d, const std::string& shift, long prec) {
  const mpq_class scale = parse_rational(d), r = parse_rational(shift);
  if (sgn(scale) <= 0) throw CLI::ValidationError("--d must be positive");
  const FracQSeries s = eta_series(scale, r, scale / 24 + prec);
  if (text_output)
    std::cout << s.str();
  else
    emit(to_json(s));
  return kOk;
}

int cmd_repro() {
  bool all = true;
  for (const auto& r : run_acceptance()) {
    std::cout << format_result(r) << std::endl;
    all = all && r.passed;
  }
  return all ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weil representation invariants and Borcherds lifts for L_{N,N'}"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  ModuleArgs mod;
  auto* discform = app.add_subcommand("discform", "describe a discriminant form");
  add_module_flags(discform, mod);

  std::string which = "all";
  auto* subgroups = app.add_subcommand("subgroups", "enumerate subgroups, one JSON object per line");
  add_module_flags(subgroups, mod);
  subgroups->add_option("--kind", which, "all, isotropic or selfdual")
      ->check(CLI::IsMember({"all", "isotropic", "selfdual"}));

  bool by_parts = false;
  auto* invariants = app.add_subcommand("invariants", "invariants of the Weil representation");
  add_module_flags(invariants, mod);
  invariants->add_flag("--by-primary-parts", by_parts, "only the dimension, as a product over primary parts");

  long N = 0, Nprime = 1, p = 0, prec = 200;
  auto* lnn = app.add_subcommand("lnn", "self-dual isotropic subgroups of D_{N,N'}");
  lnn->require_subcommand(1);
  auto* selfdual = lnn->add_subcommand("selfdual", "cataloged self-dual isotropic subgroups");
  selfdual->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  selfdual->add_option("--Nprime", Nprime)->capture_default_str()->check(CLI::PositiveNumber);
  auto* relations = lnn->add_subcommand("relations", "linear relations among the D_{N,p} generators");
  relations->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  relations->add_option("--p", p)->required();

  std::string coeffs;
  auto* lift_cmd = app.add_subcommand("lift", "product expansion of the lift of an invariant");
  lift_cmd->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  lift_cmd->add_option("--Nprime", Nprime)->capture_default_str()->check(CLI::PositiveNumber);
  lift_cmd->add_option("--coeffs", coeffs, "JSON array over D, or {\"x,y,z,w\": c}")->required();
  lift_cmd->add_option("--prec", prec, "terms beyond the leading exponent")->capture_default_str()->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify-eta", "prod_a eta(tau + a/p) identity");
  verify->add_option("--p", p)->required();
  verify->add_option("--prec", prec)->capture_default_str()->check(CLI::PositiveNumber);

  std::string d = "1", shift = "0";
  auto* eta = app.add_subcommand("eta", "eta function expansions");
  eta->require_subcommand(1);
  auto* expand = eta->add_subcommand("expand", "q-expansion of eta(d tau + shift)");
  expand->add_option("--d", d)->capture_default_str();
  expand->add_option("--shift", shift)->capture_default_str();
  expand->add_option("--prec", prec)->capture_default_str()->check(CLI::PositiveNumber);

  auto* repro = app.add_subcommand("repro", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  text_output = format == "text";

  try {
    if (*discform) return cmd_discform(mod);
    if (*subgroups) return cmd_subgroups(mod, which);
    if (*invariants) return cmd_invariants(mod, by_parts);
    if (*selfdual) return cmd_lnn_selfdual(N, Nprime);
    if (*relations) return cmd_lnn_relations(N, p);
    if (*lift_cmd) return cmd_lift(N, Nprime, coeffs, prec);
    if (*verify) return cmd_verify_eta(p, prec);
    if (*expand) return cmd_eta_expand(d, shift, prec);
    if (*repro) return cmd_repro();
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource bound: " << e.what() << "\n";
    return kResource;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kMismatch;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "invalid JSON: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
