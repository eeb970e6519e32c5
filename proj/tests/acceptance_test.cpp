// Runs every acceptance criterion and prints one pass/fail line each.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iostream>

#include "wignerlab/acceptance.hpp"

namespace acc = wignerlab::acceptance;

TEST_CASE("acceptance criteria") {
  for (const auto& c : acc::criteria()) {
    SUBCASE(c.name.c_str()) {
      const auto r = acc::run_criterion(c);
      std::cout << acc::format_line(r) << std::endl;
      CHECK_MESSAGE(r.passed, acc::format_line(r));
    }
  }
}
