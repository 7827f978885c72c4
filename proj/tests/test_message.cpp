#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minbcast/message.hpp"

using namespace minbcast;

TEST_CASE("A message wire format") {
  AMessage empty;
  CHECK(serialize(empty) == "0");
  CHECK(parse_a_message("0") == empty);

  AMessage m;
  m.present = true;
  m.info = '1';
  CHECK(serialize(m) == "11000");
  CHECK(parse_a_message("11000") == m);

  m.correction = true;
  m.corr_start = true;
  m.corr_end = false;
  CHECK(serialize(m) == "11110");
  CHECK(parse_a_message("11110") == m);

  CHECK_THROWS_AS(parse_a_message("1"), structural_error);
  CHECK_THROWS_AS(parse_a_message("10"), structural_error);
  CHECK_THROWS_AS(parse_a_message("1x000"), structural_error);
  // Control flags only make sense inside a correction.
  CHECK_THROWS_AS(parse_a_message("11010"), structural_error);
  CHECK_THROWS_AS(parse_a_message("11001"), structural_error);
}

TEST_CASE("B and C tag wire format") {
  CHECK(serialize(BTag::None) == "0");
  CHECK(serialize(BTag::Child) == "10");
  CHECK(serialize(BTag::NotChild) == "11");
  CHECK(parse_b_tag("10") == BTag::Child);
  CHECK(parse_b_tag("11") == BTag::NotChild);
  CHECK(parse_b_tag("0") == BTag::None);
  CHECK_THROWS_AS(parse_b_tag("1"), structural_error);

  CHECK(serialize(CTag::Confirm) == "10");
  CHECK(serialize(CTag::Terminate) == "11");
  CHECK(parse_c_tag("10") == CTag::Confirm);
  CHECK(parse_c_tag("11") == CTag::Terminate);
  CHECK_THROWS_AS(parse_c_tag("x"), structural_error);
}

TEST_CASE("baseline message wire format") {
  BaselineMessage empty;
  CHECK(serialize(empty) == "0");
  CHECK(parse_baseline_message("0") == empty);

  BaselineMessage m;
  m.present = true;
  m.info = '0';
  m.restart = true;
  CHECK(serialize(m) == "101");
  CHECK(parse_baseline_message("101") == m);
  CHECK_THROWS_AS(parse_baseline_message("10"), structural_error);
}
