#include <set>

#include "doctest.h"
#include "rrmap/census.hpp"
#include "rrmap/serialize.hpp"

using namespace rrmap;

TEST_SUITE_BEGIN("census");

namespace {

std::set<std::uint64_t> minima_of(const LoopRegistry& reg) {
  std::set<std::uint64_t> out;
  for (auto& [min, entry] : reg.loops) out.insert(to_u64(min));
  return out;
}

std::uint64_t length_of(const LoopRegistry& reg, std::uint64_t min) {
  return reg.loops.at(from_u64(min)).loop.length;
}

}  // namespace

TEST_CASE("canonicalize_loop fixtures") {
  Loop a = canonicalize_loop(make_p2(), {213, 249, 291, 340, 170, 85});
  CHECK(a.min == 85);
  CHECK(a.length == 6);
  CHECK(a.max == 340);
  CHECK(a.members.front() == 85);

  Loop b = canonicalize_loop(make_p1(), {2, 1});
  CHECK(b.min == 1);
  CHECK(b.length == 2);

  Loop c = canonicalize_loop(make_p4(53), {133, 200, 100, 50, 25});
  CHECK(c.min == 25);
  CHECK(c.length == 5);

  CHECK_THROWS_AS(canonicalize_loop(make_p1(), {1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(canonicalize_loop(make_p1(), {}), std::invalid_argument);
}

TEST_CASE("compendium spot rows") {
  LoopRegistry m13 = find_loops(make_p4(13), 10'000);
  CHECK(minima_of(m13) == std::set<std::uint64_t>{1, 5, 23, 25});
  CHECK(length_of(m13, 1) == 2);
  CHECK(length_of(m13, 5) == 8);
  CHECK(length_of(m13, 23) == 3);
  CHECK(length_of(m13, 25) == 3);

  LoopRegistry m15 = find_loops(make_p4(15), 10'000);
  CHECK(minima_of(m15) == std::set<std::uint64_t>{1});
  CHECK(length_of(m15, 1) == 2);

  LoopRegistry p65 = find_loops(make_p6(5), 10'000);
  CHECK(minima_of(p65) == std::set<std::uint64_t>{3});
  CHECK(length_of(p65, 3) == 1);

  LoopRegistry p67 = find_loops(make_p6(7), 10'000);
  CHECK(minima_of(p67) == std::set<std::uint64_t>{1, 23});
  // the published count for this loop is 15; walking 23 around by hand
  // (23, 81, 95, 67, 235, 165, 193, 676, ..., 65, 46) gives 18
  CHECK(length_of(p67, 23) == 18);
}

TEST_CASE("root nodes come from the full integer line") {
  LoopRegistry reg = find_loops(make_p2(), 1500);
  REQUIRE(reg.loops.count(from_u64(21)) == 1);
  CHECK(*reg.loops.at(from_u64(21)).lowest_root_node == 5);
  CHECK(*reg.loops.at(from_u64(1)).lowest_root_node == 1);
  CHECK(*reg.loops.at(from_u64(121)).lowest_root_node == 113);

  CHECK(lowest_root_node(make_p2(), reg, from_u64(21), 100) == BigInt(5));
  CHECK_THROWS_AS(lowest_root_node(make_p2(), reg, from_u64(999), 100),
                  std::invalid_argument);
}

TEST_CASE("single-loop basin is 100 percent") {
  BasinReport r = basin_scan(make_p1(), OddRange::from_bounds(1, 100'000));
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].loop_min == 1);
  CHECK(r.rows[0].count == 50'000);
  CHECK(r.rows[0].percent == doctest::Approx(100.0));
  CHECK(r.capped_count == 0);
}

TEST_CASE("basin percentages sum to 100 and survive resharding") {
  Program p2 = make_p2();
  OddRange range = OddRange::from_bounds(1, 20'001);
  BasinReport one = basin_scan(p2, range, {}, 1);
  BasinReport four = basin_scan(p2, range, {}, 4);
  BasinReport sixteen = basin_scan(p2, range, {}, 16);
  CHECK(basin_to_csv(one) == basin_to_csv(four));
  CHECK(basin_to_csv(one) == basin_to_csv(sixteen));

  double total = 0;
  std::uint64_t counted = 0;
  for (auto& row : one.rows) {
    total += row.percent;
    counted += row.count;
  }
  CHECK(counted == one.resolved);
  CHECK(total == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("interestingness measurements") {
  InterestingnessReport p1 =
      interestingness_report(make_p1(), OddRange::from_bounds(1, 2001));
  CHECK(p1.loop_count == 1);
  CHECK(p1.capped_fraction == 0.0);
  // every odd start except 1 itself (already on the loop) rises first
  CHECK(p1.non_monotone_fraction > 0.99);

  // the odd scan has to pass 20981, the lowest entry of L69721, to see all 8
  InterestingnessReport p2 =
      interestingness_report(make_p2(), OddRange::from_bounds(1, 21'001));
  CHECK(p2.loop_count == 8);
  CHECK(p2.capped_fraction == 0.0);
  REQUIRE(!p2.dispersion.empty());
}

TEST_CASE("tracked lengths match the minima-run lengths") {
  Program p2 = make_p2();
  LoopTracker tracker(p2);
  for (std::uint64_t n0 = 1; n0 <= 500; ++n0) {
    auto tracked = tracked_sequence_length(tracker, from_u64(n0), {});
    REQUIRE(tracked.has_value());
    std::uint64_t direct = sequence_length(p2, from_u64(n0), {});
    REQUIRE(*tracked == direct);
  }
}

TEST_SUITE_END();
