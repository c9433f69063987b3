#pragma once

#include <string>
#include <vector>

namespace weilrep {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

CriterionResult criterion_invariant_dimensions();  // 1
CriterionResult criterion_span();                  // 2
CriterionResult criterion_dimension_formulas();    // 3
CriterionResult criterion_closed_forms();          // 4
CriterionResult criterion_catalog();               // 5
CriterionResult criterion_weil_relations();        // 6
CriterionResult criterion_lift_eta();              // 7
CriterionResult criterion_eta_identity();          // 8
CriterionResult criterion_eta_cross_oracle();      // 9

std::vector<CriterionResult> run_acceptance();
// "PASS  3  dimension formulas  (...) [0.41 s]"
std::string format_result(const CriterionResult& r);

}  // namespace weilrep
