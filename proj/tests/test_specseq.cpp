#include <doctest.h>

#include <random>

#include "octic/errors.hpp"
#include "octic/specseq.hpp"

using namespace octic;

TEST_CASE("E1 rows of the two-component instance") {
  auto page = build_E1(two_component_instance(), 6);
  CHECK(page.row(3) == std::vector<int>{0, 4, 0});
  CHECK(page.row(0) == std::vector<int>{0, 2, 1});
  auto wide = build_E1(two_component_instance(2, 2, 1, 3, 4, 5), 6);
  CHECK(wide.row(3) == std::vector<int>{1, 4, 1});
  CHECK(wide.row(2) == std::vector<int>{1, 7, 5});
  CHECK(wide.row(4) == std::vector<int>{5, 7, 1});
  const auto& e = wide.entries.at({-1, 3});
  REQUIRE(e.pieces.size() == 1);
  CHECK(e.pieces[0] == "H^1(C)(-1)");
}

TEST_CASE("single stratum and disjoint components") {
  StrataData one;
  one.levels.push_back({{"S", {1, 0, 3, 0, 1}, true}});
  auto page = build_E1(one, 4);
  CHECK(page.differentials().empty());
  CHECK(abutment_dims(page, {}) == std::vector<int>{1, 0, 3, 0, 1});
  StrataData two;
  two.levels.push_back({{"A", {1, 0, 1}, true}, {"B", {1, 0, 1}, true}});
  CHECK(abutment_dims(build_E1(two, 2), {})[0] == 2);
}

TEST_CASE("the h = 3 abutment of the two-component instance") {
  auto page = build_E1(two_component_instance(), 7);
  auto all = consistency_search(page, {});
  for (const auto& r : all) CHECK(abutment_dims(page, r)[3] == 4);
  auto forced = consistency_search(page, {{3, 4}});
  CHECK(forced.size() == all.size());
  for (const auto& r : forced)
    for (const auto& [pos, rk] : r)
      if (pos.second == 3) CHECK(rk == 0);
  CHECK(consistency_search(page, {{3, 5}}).empty());
}

TEST_CASE("b2(C) enters h^3 through the neighbouring rows") {
  for (int b2c = 0; b2c <= 3; ++b2c) {
    auto page = build_E1(two_component_instance(2, 2, 0, 1, 1, b2c), 7);
    for (const auto& r : consistency_search(page, {})) {
      int ra = 0, rb = 0;
      if (r.count({-1, 4})) ra = r.at({-1, 4});
      if (r.count({0, 2})) rb = r.at({0, 2});
      CHECK(abutment_dims(page, r)[3] == 4 + 2 * b2c - ra - rb);
    }
    for (const auto& r : consistency_search(page, {{3, 4}})) {
      if (b2c > 0) {
        CHECK(r.at({-1, 4}) == b2c);
        CHECK(r.at({0, 2}) == b2c);
      }
    }
  }
}

TEST_CASE("Euler characteristic does not depend on the ranks") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int b1c = static_cast<int>(rng() % 2), b2r = static_cast<int>(rng() % 3), b2q = static_cast<int>(rng() % 3),
              b2c = static_cast<int>(rng() % 3);
    auto page = build_E1(two_component_instance(2, 2, b1c, b2r, b2q, b2c), 8);
    int chi1 = 0;
    for (const auto& [pos, e] : page.entries) chi1 += ((pos.first + pos.second) % 2 ? -1 : 1) * e.dim;
    for (const auto& r : consistency_search(page, {})) {
      auto dims = abutment_dims(page, r);
      int chi = 0;
      for (std::size_t h = 0; h < dims.size(); ++h) chi += (h % 2 ? -1 : 1) * dims[h];
      CHECK(chi == chi1);
      // raising any single rank lowers E_2 entries
      for (const auto& d : page.differentials()) {
        RankAssignment up = r;
        if (up[d.source] >= d.max_rank()) continue;
        ++up[d.source];
        CHECK(e2_entry(page, up, d.source.first, d.source.second) <= e2_entry(page, r, d.source.first, d.source.second));
      }
    }
  }
}

TEST_CASE("strata JSON and validation") {
  auto s = StrataData::from_json(R"({"Z1": {"R": [1,0,0,2,0,0,1], "Q": [1,0,0,2,0,0,1]}, "Z2": {"C": [1,0,0,0,1]}})");
  CHECK(s.b(1, 3) == 4);
  CHECK(StrataData::from_json(s.to_json()).to_json() == s.to_json());
  CHECK_THROWS_AS(StrataData::from_json(R"({"Z1": {"R": [1,0,2]}, "Z2": {"C": [1,0,0,0,1]}})"), DataError);
  CHECK_THROWS_AS(StrataData::from_json(R"({"Z1": {"R": [1,0,0,2,1,0,1]}})"), DataError);
  CHECK_THROWS_AS(StrataData::from_json("{"), DataError);
  auto page = build_E1(two_component_instance(2, 2, 0, 1, 1, 1), 7);
  CHECK_THROWS_AS(abutment_dims(page, {{{-1, 4}, 5}}), DataError);
}
