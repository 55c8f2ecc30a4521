#include "rrmap/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace rrmap {
namespace {

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

nlohmann::json fire_counts_json(const Program& prog, const std::vector<std::uint64_t>& counts) {
  nlohmann::json out;
  for (std::size_t i = 0; i < prog.rules.size() && i < counts.size(); ++i)
    out[rule_label(prog.rules[i])] = counts[i];
  return out;
}

unsigned picket_index_of(const BigInt& value) {
  // picket values have 2k - 1 bits
  return (bit_length(value) + 1) / 2;
}

}  // namespace

std::string format_percent(double percent) {
  long long cents = std::llround(percent * 100.0);
  std::string out = std::to_string(cents / 100) + ".";
  long long frac = cents % 100;
  if (frac < 10) out += "0";
  return out + std::to_string(frac);
}

nlohmann::json trajectory_to_json(const Program& prog, const Trajectory& t) {
  nlohmann::json j;
  j["program"] = prog.id;
  j["n0"] = to_decimal(t.n0);
  j["outcome"] = outcome_name(t.outcome);
  j["length"] = t.length;
  j["max_value"] = to_decimal(t.max_value);
  j["max_bits"] = t.max_bits;
  j["rule_fire_counts"] = fire_counts_json(prog, t.rule_fire_counts);
  j["leading_up_steps"] = t.leading_up_steps;
  if (t.outcome == Outcome::Converged) j["loop_min"] = to_decimal(t.converged_min);
  if (t.cycle) {
    nlohmann::json loop;
    loop["min"] = to_decimal(t.cycle->min);
    loop["max"] = to_decimal(t.cycle->max);
    loop["length"] = t.cycle->length;
    nlohmann::json members = nlohmann::json::array();
    for (const BigInt& m : t.cycle->members) members.push_back(to_decimal(m));
    loop["members"] = members;
    j["cycle"] = loop;
  }
  if (t.path) {
    nlohmann::json path = nlohmann::json::array();
    for (const BigInt& v : *t.path) path.push_back(to_decimal(v));
    j["path"] = path;
  }
  return j;
}

std::string trajectory_to_text(const Program& prog, const Trajectory& t) {
  std::ostringstream out;
  out << "program " << prog.id << ", n0 " << to_decimal(t.n0) << "\n";
  out << "outcome " << outcome_name(t.outcome);
  if (t.outcome == Outcome::Converged) out << " at loop minimum " << to_decimal(t.converged_min);
  if (t.cycle)
    out << " (loop L" << to_decimal(t.cycle->min) << ", " << t.cycle->length << " iterations, max "
        << to_decimal(t.cycle->max) << ")";
  out << "\n";
  out << "length " << t.length << ", max " << to_decimal(t.max_value) << " (" << t.max_bits
      << " bits), leading up-steps " << t.leading_up_steps << "\n";
  out << "rule fires:";
  for (std::size_t i = 0; i < prog.rules.size(); ++i)
    out << " " << rule_label(prog.rules[i]) << "=" << t.rule_fire_counts[i];
  out << "\n";
  if (t.path) {
    out << "path:";
    for (const BigInt& v : *t.path) out << " " << to_decimal(v);
    out << "\n";
  }
  return out.str();
}

std::string trajectory_to_csv(const Program&, const Trajectory& t) {
  std::ostringstream out;
  out << "n0,outcome,loop_min,length,max_value,max_bits,leading_up_steps\n";
  out << to_decimal(t.n0) << "," << outcome_name(t.outcome) << ","
      << (t.outcome == Outcome::Converged ? to_decimal(t.converged_min)
                                          : (t.cycle ? to_decimal(t.cycle->min) : ""))
      << "," << t.length << "," << to_decimal(t.max_value) << "," << t.max_bits << ","
      << t.leading_up_steps << "\n";
  return out.str();
}

nlohmann::json registry_to_json(const LoopRegistry& reg) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [min, entry] : reg.loops) {
    nlohmann::json j;
    j["program"] = reg.program_id;
    j["min"] = to_decimal(min);
    j["length"] = entry.loop.length;
    j["max"] = to_decimal(entry.loop.max);
    nlohmann::json members = nlohmann::json::array();
    for (const BigInt& m : entry.loop.members) members.push_back(to_decimal(m));
    j["members"] = members;
    if (entry.lowest_root_node) j["lowest_root_node"] = to_decimal(*entry.lowest_root_node);
    else j["lowest_root_node"] = nullptr;
    arr.push_back(j);
  }
  return arr;
}

std::string registry_to_csv(const LoopRegistry& reg) {
  std::ostringstream out;
  out << "min,length,max,lowest_root_node\n";
  for (const auto& [min, entry] : reg.loops) {
    out << to_decimal(min) << "," << entry.loop.length << "," << to_decimal(entry.loop.max)
        << ",";
    if (entry.lowest_root_node) out << to_decimal(*entry.lowest_root_node);
    out << "\n";
  }
  return out.str();
}

std::string registry_to_text(const LoopRegistry& reg) {
  std::ostringstream out;
  out << "program " << reg.program_id << ": " << reg.loops.size() << " loop(s), odd starts to "
      << reg.scan_bound << ", " << reg.capped_count << " capped\n";
  for (const auto& [min, entry] : reg.loops) {
    out << "  L" << to_decimal(min) << ": length " << entry.loop.length << ", max "
        << to_decimal(entry.loop.max) << ", lowest root ";
    if (entry.lowest_root_node) out << to_decimal(*entry.lowest_root_node);
    else out << "not found";
    out << "\n";
  }
  return out.str();
}

nlohmann::json basin_to_json(const BasinReport& report) {
  nlohmann::json j;
  j["program"] = report.program_id;
  j["range"] = report.range;
  j["scanned"] = report.scanned;
  j["resolved"] = report.resolved;
  j["capped"] = report.capped_count;
  if (!report.capped_starts.empty()) {
    nlohmann::json capped = nlohmann::json::array();
    for (const BigInt& v : report.capped_starts) capped.push_back(to_decimal(v));
    j["capped_starts"] = capped;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json r;
    r["loop_min"] = to_decimal(row.loop_min);
    r["count"] = row.count;
    r["percent"] = format_percent(row.percent);
    rows.push_back(r);
  }
  j["loops"] = rows;
  return j;
}

std::string basin_to_csv(const BasinReport& report) {
  std::ostringstream out;
  out << "loop_min,count,percent\n";
  for (const auto& row : report.rows)
    out << to_decimal(row.loop_min) << "," << row.count << "," << format_percent(row.percent)
        << "\n";
  return out.str();
}

std::string basin_to_text(const BasinReport& report) {
  std::ostringstream out;
  out << "program " << report.program_id << ", " << report.range << ": " << report.scanned
      << " starts, " << report.resolved << " resolved, " << report.capped_count << " capped\n";
  for (const auto& row : report.rows)
    out << "  L" << to_decimal(row.loop_min) << ": " << row.count << " exits ("
        << format_percent(row.percent) << "%)\n";
  return out.str();
}

namespace {

struct CensusRow {
  unsigned k;
  BigInt value;
  std::uint64_t count;
  const BigInt* first;  // null when unseen
};

std::vector<CensusRow> census_rows(const ExitCensus& census) {
  std::uint64_t last_start = 2 * census.starts - 1;
  unsigned k_max = 1;
  while (picket_fence_value(k_max + 1) <= from_u64(last_start)) ++k_max;
  for (const auto& [value, count] : census.counts)
    k_max = std::max(k_max, picket_index_of(value));
  std::vector<CensusRow> rows;
  for (unsigned k = 1; k <= k_max; ++k) {
    CensusRow row{k, picket_fence_value(k), 0, nullptr};
    auto it = census.counts.find(row.value);
    if (it != census.counts.end()) row.count = it->second;
    auto fit = census.first_exiter.find(row.value);
    if (fit != census.first_exiter.end()) row.first = &fit->second;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

nlohmann::json exit_census_to_json(const ExitCensus& census) {
  nlohmann::json j;
  j["starts"] = census.starts;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : census_rows(census)) {
    nlohmann::json r;
    r["k"] = row.k;
    r["binary"] = row.value.get_str(2);
    r["decimal"] = to_decimal(row.value);
    r["factorization"] = small_factorization(row.value).str();
    r["first_to_exit"] = row.first ? nlohmann::json(to_decimal(*row.first)) : nlohmann::json();
    r["exit_count"] = row.count;
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

std::string exit_census_to_csv(const ExitCensus& census) {
  std::ostringstream out;
  out << "binary,decimal,factorization,first_to_exit,exit_count\n";
  for (const auto& row : census_rows(census)) {
    out << row.value.get_str(2) << "," << to_decimal(row.value) << ","
        << small_factorization(row.value).str() << ",";
    if (row.first) out << to_decimal(*row.first);
    out << "," << row.count << "\n";
  }
  return out.str();
}

std::string exit_census_to_text(const ExitCensus& census) {
  std::ostringstream out;
  out << "exit census over the first " << census.starts << " odd integers\n";
  for (const auto& row : census_rows(census)) {
    out << "  " << to_decimal(row.value) << " (" << small_factorization(row.value).str()
        << "): " << row.count << " exits, first ";
    if (row.first) out << to_decimal(*row.first);
    else out << "-";
    out << "\n";
  }
  return out.str();
}

std::string family_to_csv(const std::vector<FamilyEntry>& entries) {
  std::ostringstream out;
  out << "k,n0_digits,length,model_low,model_mid,model_high\n";
  for (const auto& e : entries) {
    out << e.k << "," << decimal_digits(e.n0) << ",";
    if (e.length) out << *e.length;
    out << "," << fixed3(predict_length(LengthModel::Low, e.n0)) << ","
        << fixed3(predict_length(LengthModel::Mid, e.n0)) << ","
        << fixed3(predict_length(LengthModel::High, e.n0)) << "\n";
  }
  return out.str();
}

nlohmann::json family_to_json(const std::vector<FamilyEntry>& entries) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json j;
    j["k"] = e.k;
    j["n0"] = to_decimal(e.n0);
    if (e.length) j["length"] = *e.length;
    else j["length"] = nullptr;
    arr.push_back(j);
  }
  return arr;
}

nlohmann::json islands_to_json(const IslandReport& report) {
  nlohmann::json j;
  j["min_run"] = report.min_run;
  j["max_exceptions"] = report.max_exceptions;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& island : report.islands) {
    nlohmann::json i;
    i["k_start"] = island.k_start;
    i["k_end"] = island.k_end;
    i["common_length"] = island.common_length;
    nlohmann::json ex = nlohmann::json::array();
    for (auto& [k, len] : island.exceptions) ex.push_back({{"k", k}, {"length", len}});
    i["exceptions"] = ex;
    arr.push_back(i);
  }
  j["islands"] = arr;
  return j;
}

std::string islands_to_text(const IslandReport& report) {
  std::ostringstream out;
  out << report.islands.size() << " island(s) (min run " << report.min_run
      << ", max exceptions " << report.max_exceptions << ")\n";
  for (const auto& island : report.islands) {
    out << "  k=" << island.k_start << ".." << island.k_end << ": length "
        << island.common_length;
    if (!island.exceptions.empty()) {
      out << ", exceptions";
      for (auto& [k, len] : island.exceptions) out << " (k=" << k << ", " << len << ")";
    }
    out << "\n";
  }
  return out.str();
}

nlohmann::json profile_to_json(const DecayProfile& profile) {
  nlohmann::json j;
  j["profile"] = profile.name;
  j["window"] = profile.window;
  j["factor"] = window_factor(profile);
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : profile.components)
    comps.push_back({{"label", c.label}, {"count", c.count}, {"factor", c.factor.str()}});
  j["components"] = comps;
  return j;
}

std::string profile_to_text(const DecayProfile& profile) {
  std::ostringstream out;
  out << "profile " << profile.name << ": factor " << fixed3(window_factor(profile))
      << " per " << profile.window << " steps (";
  for (std::size_t i = 0; i < profile.components.size(); ++i) {
    const auto& c = profile.components[i];
    out << (i ? ", " : "") << c.label << " x" << c.count << " @" << c.factor.str();
  }
  out << ")\n";
  return out.str();
}

nlohmann::json interestingness_to_json(const InterestingnessReport& report) {
  nlohmann::json j;
  j["program"] = report.program_id;
  j["sample"] = report.sample;
  j["sampled"] = report.sampled;
  j["capped_fraction"] = report.capped_fraction;
  j["non_monotone_fraction"] = report.non_monotone_fraction;
  j["loop_count"] = report.loop_count;
  nlohmann::json disp = nlohmann::json::array();
  for (const auto& d : report.dispersion)
    disp.push_back({{"decade", d.decade},
                    {"n", d.n},
                    {"mean_length", d.mean_length},
                    {"stddev_length", d.stddev_length}});
  j["length_dispersion"] = disp;
  return j;
}

std::string interestingness_to_text(const InterestingnessReport& report) {
  std::ostringstream out;
  out << "program " << report.program_id << " over " << report.sample << " (" << report.sampled
      << " starts)\n";
  out << "  capped fraction        " << fixed3(report.capped_fraction) << "\n";
  out << "  non-monotone fraction  " << fixed3(report.non_monotone_fraction) << "\n";
  out << "  loop count             " << report.loop_count << "\n";
  for (const auto& d : report.dispersion)
    out << "  decade 10^" << d.decade << ": n=" << d.n << " mean length "
        << fixed3(d.mean_length) << " stddev " << fixed3(d.stddev_length) << "\n";
  return out.str();
}

nlohmann::json residue_to_json(const ResidueProfile& profile) {
  nlohmann::json j;
  j["odd_terms"] = profile.odd_terms;
  j["trajectories"] = profile.trajectories;
  j["capped"] = profile.capped;
  nlohmann::json fr;
  for (auto& [d, f] : profile.fraction_by_divisor) fr[std::to_string(d)] = f;
  j["fraction_by_divisor"] = fr;
  return j;
}

}  // namespace rrmap
