#include <doctest.h>

#include <cmath>

#include "expr.hpp"
#include "infspec/errors.hpp"

TEST_CASE("ratio expressions") {
  CHECK(tools::Expression("1+1/k")(4) == 1.25);
  CHECK(tools::Expression("2^(1/k)")(2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(tools::Expression("-k^2")(3) == -9.0);
  CHECK(tools::Expression("2*3+k")(1) == 7.0);
  CHECK(tools::Expression("sqrt(k) + exp(0) - log(1)")(9) == 4.0);
  CHECK(tools::Expression(" ( 1 + k ) / 2 ")(3) == 2.0);
  for (const char* bad : {"", "1+", "k k", "(1", "foo(1)", "1+/k", "sqrt 2"})
    CHECK_THROWS_AS(tools::Expression{bad}, infspec::ParameterError);
}

TEST_CASE("index lists") {
  CHECK(tools::parse_index_list("3:6") == std::vector<int>{3, 4, 5, 6});
  CHECK(tools::parse_index_list("10:40:10") == std::vector<int>{10, 20, 30, 40});
  CHECK(tools::parse_index_list("10,20,40,80") == std::vector<int>{10, 20, 40, 80});
  CHECK(tools::parse_index_list("7") == std::vector<int>{7});
  for (const char* bad : {"", "a", "6:3", "1:2:0", "1,,2", "1:2:3:4"})
    CHECK_THROWS_AS(tools::parse_index_list(bad), infspec::ParameterError);
}
