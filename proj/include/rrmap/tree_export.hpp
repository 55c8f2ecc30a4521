#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrmap/bigint.hpp"
#include "rrmap/census.hpp"
#include "rrmap/program.hpp"

namespace rrmap {

/// A union of forward orbits (exit tree) or a breadth-first preimage
/// expansion (reverse tree). Edges follow the step direction child -> parent,
/// so every non-root node has exactly one outgoing edge.
struct OrbitForest {
  std::vector<BigInt> nodes;                       // ascending
  std::vector<std::pair<BigInt, BigInt>> edges;    // (child, parent), ascending by child
  std::vector<BigInt> roots;                       // ascending
  std::vector<BigInt> highlighted;                 // ascending
};

/// All n <= bound with step(n) = v: the doubled value plus, per odd-branch
/// rule, the inverted candidate r*(2v - c)/q when it is integral, odd, and
/// lands on that rule (matches its guard, fails every earlier one).
std::vector<BigInt> predecessors(const Program& prog, const BigInt& v, const BigInt& bound);

inline constexpr std::uint64_t kDefaultExiterScanBound = 10'000'000;

/// Union of the orbits of the first K odd starts (ascending) that exit the
/// given loop, truncated at the first loop member each orbit touches. The
/// starts are highlighted; the entry values are the roots.
OrbitForest build_exit_tree(const Program& prog, const LoopRegistry& registry,
                            const BigInt& loop_min, std::size_t k_exiters,
                            const StopPolicy& caps = {},
                            std::uint64_t scan_bound = kDefaultExiterScanBound);

/// Breadth-first preimage expansion from root, depth levels, nodes <= bound.
OrbitForest build_reverse_tree(const Program& prog, const BigInt& root, unsigned depth,
                               const BigInt& bound);

enum class GraphFormat { Dot, Json };

/// Deterministic text form: nodes in ascending order, decimal labels.
std::string export_graph(const OrbitForest& forest, GraphFormat format);

}  // namespace rrmap
