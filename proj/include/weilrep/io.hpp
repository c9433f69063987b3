#pragma once

#include <json.hpp>

#include "weilrep/borcherds.hpp"
#include "weilrep/cyclo.hpp"
#include "weilrep/fqmod.hpp"
#include "weilrep/lnn.hpp"
#include "weilrep/qseries.hpp"
#include "weilrep/subgroups.hpp"

namespace weilrep {

// nlohmann::json keeps object keys sorted, so dumps are deterministic.
using Json = nlohmann::json;

std::string rational_str(const mpq_class& r);  // "n/d", or "n" for integers
mpq_class parse_rational(const std::string& s);

Json to_json(const FqModule& m);  // {orders, q_gen, b_gram}
FqModule fqmodule_from_json(const Json& j);

Json to_json(const CycNumber& c);  // {conductor, terms: [[e, "n/d"], ...]}
CycNumber cycnumber_from_json(const Json& j);

Json to_json(const SubgroupClass& c);
Json to_json(const Subgroup& h);  // sorted coordinate lists

Json to_json(const FracQSeries& s);  // {exp_den, trunc, terms: [[k, cyc], ...]}
FracQSeries fracqseries_from_json(const Json& j);

Json to_json(const EtaQuotient& q);
Json to_json(const HxyzParams& p);
Json to_json(const SelfDualSpec& s);
Json to_json(const CatalogEntry& e);
Json to_json(const PrecisionReport& r);
Json to_json(const EtaIdentity& id);

}  // namespace weilrep
