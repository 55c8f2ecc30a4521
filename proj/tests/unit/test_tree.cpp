#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "rrmap/tree_export.hpp"

using namespace rrmap;

TEST_SUITE_BEGIN("tree");

TEST_CASE("predecessor fixtures") {
  Program p1 = make_p1();
  CHECK(predecessors(p1, 5, from_u64(1'000'000)) == std::vector<BigInt>{3, 10});
  CHECK(predecessors(p1, 1, from_u64(1'000'000)) == std::vector<BigInt>{2});
  CHECK(predecessors(make_p2(), 85, from_u64(1'000'000)) == std::vector<BigInt>{170});
  CHECK(predecessors(p1, 5, from_u64(5)) == std::vector<BigInt>{3});  // bound prunes 10
}

TEST_CASE("inversion is sound and complete against the exhaustive scan") {
  for (const Program& prog :
       {make_p1(), make_p2(), make_p4(13), make_p6(7), make_p9(11, SignOrder::PlusMinus)}) {
    CAPTURE(prog.id);
    for (std::uint64_t v = 1; v <= 300; ++v) {
      auto fast = predecessors(prog, from_u64(v), from_u64(3000));
      auto slow = oracle::exhaustive_predecessors(prog, from_u64(v), 3000);
      REQUIRE(fast == slow);
    }
  }
}

TEST_CASE("reverse trees") {
  Program p1 = make_p1();
  OrbitForest t = build_reverse_tree(p1, 1, 3, from_u64(100));
  CHECK(t.nodes == std::vector<BigInt>{1, 2, 4, 8});
  REQUIRE(t.edges.size() == 3);
  CHECK(t.roots == std::vector<BigInt>{1});

  OrbitForest single = build_reverse_tree(p1, 7, 0, from_u64(100));
  CHECK(single.nodes == std::vector<BigInt>{7});
  CHECK(single.edges.empty());

  OrbitForest d1 = build_reverse_tree(p1, 5, 1, from_u64(100));
  CHECK(d1.nodes == std::vector<BigInt>{3, 5, 10});
}

TEST_CASE("exit trees") {
  Program p1 = make_p1();
  LoopRegistry reg = find_loops(p1, 100);
  OrbitForest t = build_exit_tree(p1, reg, 1, 1);
  CHECK(t.nodes == std::vector<BigInt>{1});
  CHECK(t.roots == std::vector<BigInt>{1});
  CHECK(t.highlighted == std::vector<BigInt>{1});

  // the forest is functional: every non-root node has exactly one out-edge,
  // and following edges from any highlighted node reaches a root
  Program p4 = make_p4(13);
  LoopRegistry reg4 = find_loops(p4, 1000);
  OrbitForest f = build_exit_tree(p4, reg4, 23, 5);
  CHECK(f.highlighted.size() == 5);
  std::map<BigInt, BigInt> parent;
  for (auto& [child, par] : f.edges) {
    CHECK(parent.emplace(child, par).second);  // out-degree 1
  }
  std::set<BigInt> roots(f.roots.begin(), f.roots.end());
  for (const BigInt& node : f.nodes) {
    if (!roots.count(node)) REQUIRE(parent.count(node));
  }
  for (const BigInt& start : f.highlighted) {
    BigInt v = start;
    std::size_t hops = 0;
    while (!roots.count(v)) {
      REQUIRE(parent.count(v));
      v = parent.at(v);
      REQUIRE(++hops < 100000);
    }
  }
  // edges agree with the step function
  for (auto& [child, par] : f.edges) REQUIRE(step(p4, child) == par);

  CHECK_THROWS_AS(build_exit_tree(p4, reg4, 999, 1), std::invalid_argument);
}

TEST_CASE("graph export is deterministic and well formed") {
  Program p1 = make_p1();
  OrbitForest t = build_reverse_tree(p1, 5, 2, from_u64(100));
  std::string dot1 = export_graph(t, GraphFormat::Dot);
  std::string dot2 = export_graph(t, GraphFormat::Dot);
  CHECK(dot1 == dot2);
  CHECK(dot1.find("digraph") != std::string::npos);
  CHECK(dot1.find("\"3\" -> \"5\"") != std::string::npos);

  std::string json = export_graph(t, GraphFormat::Json);
  CHECK(json.find("\"nodes\"") != std::string::npos);
  CHECK(export_graph(t, GraphFormat::Json) == json);

  OrbitForest one = build_reverse_tree(p1, 7, 0, from_u64(10));
  std::string dot = export_graph(one, GraphFormat::Dot);
  CHECK(dot.find("\"7\"") != std::string::npos);
  CHECK(dot.find("->") == std::string::npos);
}

TEST_SUITE_END();
