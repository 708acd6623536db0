#include <iostream>

#include "tonguelock/selftest.hpp"

int main() {
  const auto results = tonguelock::selftest::run_all(std::cout);
  if (results.empty()) {
    std::cout << "FAIL: acceptance checklist is empty\n";
    return 1;
  }
  return tonguelock::selftest::all_passed(results) ? 0 : 1;
}
