#include "doctest.h"
#include "oracles/filter_battery.hpp"

TEST_CASE("randomized filter invariants hold with zero tolerance") {
  auto r = oracle::run_filter_battery(2000, 20240901u);
  CHECK(r.fields == 2000);
  CHECK(r.checks > 100000);
  if (r.failures != 0) MESSAGE("first failure: " << r.first_failure);
  CHECK(r.failures == 0);
}
