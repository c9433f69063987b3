#include <iostream>

#include "weilrep/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& r : weilrep::run_acceptance()) {
    std::cout << weilrep::format_result(r) << std::endl;
    failed += !r.passed;
  }
  std::cout << (failed ? "FAILED " : "OK ") << failed << " failing criteria" << std::endl;
  return failed ? 1 : 0;
}
