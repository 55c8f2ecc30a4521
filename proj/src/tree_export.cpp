#include "rrmap/tree_export.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rrmap/stepper.hpp"

namespace rrmap {
namespace {

void finalize(OrbitForest& forest, std::set<BigInt>&& nodes, std::set<BigInt>&& roots,
              std::set<BigInt>&& highlighted, std::vector<std::pair<BigInt, BigInt>> edges) {
  forest.nodes.assign(nodes.begin(), nodes.end());
  forest.roots.assign(roots.begin(), roots.end());
  forest.highlighted.assign(highlighted.begin(), highlighted.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  forest.edges = std::move(edges);
}

}  // namespace

std::vector<BigInt> predecessors(const Program& prog, const BigInt& v, const BigInt& bound) {
  if (mpz_sgn(v.get_mpz_t()) <= 0) throw std::invalid_argument("v must be >= 1");
  require_valid(prog);
  std::vector<BigInt> out;

  BigInt doubled = v * 2;
  if (doubled <= bound) out.push_back(doubled);

  for (std::size_t i = 1; i < prog.rules.size(); ++i) {
    const StepRule& rule = prog.rules[i];
    // invert (q * (n/r) + c) / 2 = v
    BigInt numer = v * 2;
    if (rule.offset > 0) numer -= 1;
    else numer += 1;
    numer *= static_cast<unsigned long>(rule.denominator);
    if (!mpz_divisible_ui_p(numer.get_mpz_t(), rule.multiplier)) continue;
    BigInt n;
    mpz_divexact_ui(n.get_mpz_t(), numer.get_mpz_t(), rule.multiplier);
    if (mpz_sgn(n.get_mpz_t()) <= 0 || n > bound) continue;
    if (mpz_even_p(n.get_mpz_t())) continue;
    if (rule.guard == GuardKind::DivisibleBy &&
        !mpz_divisible_ui_p(n.get_mpz_t(), rule.divisor))
      continue;
    // the candidate must actually reach this rule: every earlier
    // divisible-by guard has to fail on it
    bool earlier_guard_matches = false;
    for (std::size_t j = 1; j < i; ++j) {
      if (prog.rules[j].guard == GuardKind::DivisibleBy &&
          mpz_divisible_ui_p(n.get_mpz_t(), prog.rules[j].divisor)) {
        earlier_guard_matches = true;
        break;
      }
    }
    if (earlier_guard_matches) continue;
    if (rule.guard == GuardKind::Else) {
      bool any_divides = false;
      for (std::size_t j = 1; j + 1 < prog.rules.size(); ++j)
        if (mpz_divisible_ui_p(n.get_mpz_t(), prog.rules[j].divisor)) {
          any_divides = true;
          break;
        }
      if (any_divides) continue;
    }
    out.push_back(std::move(n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

OrbitForest build_exit_tree(const Program& prog, const LoopRegistry& registry,
                            const BigInt& loop_min, std::size_t k_exiters,
                            const StopPolicy& caps, std::uint64_t scan_bound) {
  if (k_exiters < 1) throw std::invalid_argument("need K >= 1 exiters");
  if (!registry.loops.count(loop_min))
    throw std::invalid_argument("loop " + to_decimal(loop_min) + " is not in the registry");

  LoopTracker tracker(prog);
  for (auto& [min, entry] : registry.loops) tracker.seed(entry.loop);
  std::size_t target = *tracker.index_of_min(loop_min);

  std::set<BigInt> nodes, roots, highlighted;
  std::vector<std::pair<BigInt, BigInt>> edges;
  std::size_t found = 0;

  Stepper st(prog);
  for (std::uint64_t n0 = 1; n0 <= scan_bound && found < k_exiters; n0 += 2) {
    auto c = tracker.classify(from_u64(n0), caps);
    if (!c.loop || *c.loop != target) continue;
    ++found;
    highlighted.insert(from_u64(n0));
    // replay the orbit up to its entry value (the first member touched)
    st.reset_small(n0);
    BigInt prev = st.value();
    nodes.insert(prev);
    for (std::uint64_t i = 0; i < c.steps_to_member; ++i) {
      st.step();
      BigInt cur = st.value();
      nodes.insert(cur);
      edges.emplace_back(std::move(prev), cur);
      prev = std::move(cur);
    }
    roots.insert(prev);  // == n0 when the start is itself a loop member
  }
  if (found < k_exiters)
    throw std::runtime_error("only " + std::to_string(found) + " of " +
                             std::to_string(k_exiters) + " exiters of L" +
                             to_decimal(loop_min) + " below " + std::to_string(scan_bound));

  OrbitForest forest;
  finalize(forest, std::move(nodes), std::move(roots), std::move(highlighted),
           std::move(edges));
  return forest;
}

OrbitForest build_reverse_tree(const Program& prog, const BigInt& root, unsigned depth,
                               const BigInt& bound) {
  if (mpz_sgn(root.get_mpz_t()) <= 0) throw std::invalid_argument("root must be >= 1");
  std::set<BigInt> nodes{root};
  std::vector<std::pair<BigInt, BigInt>> edges;
  std::vector<BigInt> frontier{root};
  for (unsigned level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<BigInt> next;
    for (const BigInt& v : frontier) {
      for (BigInt& pred : predecessors(prog, v, bound)) {
        if (!nodes.insert(pred).second) continue;
        edges.emplace_back(pred, v);
        next.push_back(std::move(pred));
      }
    }
    frontier = std::move(next);
  }
  OrbitForest forest;
  finalize(forest, std::move(nodes), {root}, {}, std::move(edges));
  return forest;
}

std::string export_graph(const OrbitForest& forest, GraphFormat format) {
  if (format == GraphFormat::Dot) {
    std::set<BigInt> roots(forest.roots.begin(), forest.roots.end());
    std::set<BigInt> marked(forest.highlighted.begin(), forest.highlighted.end());
    std::ostringstream out;
    out << "digraph orbits {\n";
    out << "  node [shape=circle];\n";
    for (const BigInt& n : forest.nodes) {
      out << "  \"" << to_decimal(n) << "\"";
      std::vector<std::string> attrs;
      if (roots.count(n)) attrs.push_back("shape=doublecircle");
      if (marked.count(n)) attrs.push_back("color=red,penwidth=2");
      if (!attrs.empty()) {
        out << " [";
        for (std::size_t i = 0; i < attrs.size(); ++i)
          out << (i ? "," : "") << attrs[i];
        out << "]";
      }
      out << ";\n";
    }
    for (const auto& [child, parent] : forest.edges)
      out << "  \"" << to_decimal(child) << "\" -> \"" << to_decimal(parent) << "\";\n";
    out << "}\n";
    return out.str();
  }

  nlohmann::json j;
  auto list = [](const std::vector<BigInt>& values) {
    nlohmann::json arr = nlohmann::json::array();
    for (const BigInt& v : values) arr.push_back(to_decimal(v));
    return arr;
  };
  j["nodes"] = list(forest.nodes);
  j["roots"] = list(forest.roots);
  j["highlighted"] = list(forest.highlighted);
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [child, parent] : forest.edges)
    edges.push_back({to_decimal(child), to_decimal(parent)});
  j["edges"] = edges;
  return j.dump(2) + "\n";
}

}  // namespace rrmap
