#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rrmap/census.hpp"
#include "rrmap/dsl.hpp"
#include "rrmap/family.hpp"
#include "rrmap/hunt.hpp"
#include "rrmap/nullmodel.hpp"
#include "rrmap/picket.hpp"
#include "rrmap/serialize.hpp"
#include "rrmap/shard.hpp"
#include "rrmap/tree_export.hpp"

namespace {

using namespace rrmap;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text,
                                                    const std::string& what) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw UsageError(what + " must look like LO:HI, got '" + text + "'");
  try {
    std::uint64_t lo = std::stoull(text.substr(0, colon));
    std::uint64_t hi = std::stoull(text.substr(colon + 1));
    if (hi < lo) throw UsageError(what + ": HI must be >= LO");
    return {lo, hi};
  } catch (const UsageError&) {
    throw;
  } catch (...) {
    throw UsageError(what + " must look like LO:HI, got '" + text + "'");
  }
}

std::vector<BigInt> parse_minima(const std::string& text) {
  std::vector<BigInt> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_decimal(item));
  }
  if (out.empty()) throw UsageError("empty minima list");
  return out;
}

void emit(const std::string& data, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << data;
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

struct CommonOpts {
  std::string program_spec;
  std::uint64_t max_iter = kDefaultMaxIterations;
  std::uint32_t max_bits = kDefaultMaxBits;
  unsigned shards = default_shards();
  std::string format = "text";
  std::string out_path;

  StopPolicy policy() const {
    StopPolicy p;
    p.max_iterations = max_iter;
    p.max_bits = max_bits;
    return p;
  }
  Program program() const {
    try {
      return parse_program_spec(program_spec);
    } catch (const DslError& e) {
      throw UsageError(std::string("bad DSL: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_program = true) {
  if (with_program)
    cmd->add_option("--program", opts.program_spec,
                    "program id (p1, p1m, p2, p4:<m>, p6:<prime>, p9:<p>:<-+|+->) or dsl:<rules>")
        ->required();
  cmd->add_option("--max-iter", opts.max_iter, "iteration cap");
  cmd->add_option("--max-bits", opts.max_bits, "bit-length cap");
  cmd->add_option("--shards", opts.shards, "parallel shards (default: hardware threads)");
  cmd->add_option("--format", opts.format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd->add_option("--out", opts.out_path, "write output to a file instead of stdout");
}

int cmd_traj(const CommonOpts& opts, const std::string& n0_text, const std::string& minima_text,
             bool record_path) {
  Program prog = opts.program();
  BigInt n0 = parse_decimal(n0_text);
  StopPolicy policy = opts.policy();
  policy.record_full_path = record_path;
  if (!minima_text.empty()) {
    policy.known_loop_minima = parse_minima(minima_text);
  } else {
    // discover the loop this orbit enters, then measure the length to its minimum
    auto found = detect_cycle(prog, n0, policy);
    if (found.loop) policy.known_loop_minima = {found.loop->min};
  }
  Trajectory t = iterate(prog, n0, policy);
  if (opts.format == "json") emit(json_text(trajectory_to_json(prog, t)), opts.out_path);
  else if (opts.format == "csv") emit(trajectory_to_csv(prog, t), opts.out_path);
  else emit(trajectory_to_text(prog, t), opts.out_path);
  return 0;
}

int cmd_loops(const CommonOpts& opts, std::uint64_t scan_to) {
  Program prog = opts.program();
  LoopRegistry reg = find_loops(prog, scan_to, opts.policy(), opts.shards);
  if (opts.format == "json") emit(json_text(registry_to_json(reg)), opts.out_path);
  else if (opts.format == "csv") emit(registry_to_csv(reg), opts.out_path);
  else emit(registry_to_text(reg), opts.out_path);
  return 0;
}

int cmd_basin(const CommonOpts& opts, const std::string& range_text) {
  Program prog = opts.program();
  auto [lo, hi] = parse_range(range_text, "--odd-range");
  BasinReport report = basin_scan(prog, OddRange::from_bounds(lo, hi), opts.policy(),
                                  opts.shards);
  if (opts.format == "json") emit(json_text(basin_to_json(report)), opts.out_path);
  else if (opts.format == "csv") emit(basin_to_csv(report), opts.out_path);
  else emit(basin_to_text(report), opts.out_path);
  return 0;
}

int cmd_picket(const CommonOpts& opts, std::uint64_t count) {
  ExitCensus census = exit_census(count, opts.shards, opts.policy());
  if (opts.format == "json") emit(json_text(exit_census_to_json(census)), opts.out_path);
  else if (opts.format == "csv") emit(exit_census_to_csv(census), opts.out_path);
  else emit(exit_census_to_text(census), opts.out_path);
  return 0;
}

int cmd_family(const CommonOpts& opts, std::uint64_t base, const std::string& exp_range,
               const std::string& mult, std::int64_t offset, const std::string& parity,
               bool islands, std::size_t min_run, std::size_t max_exceptions) {
  Program prog = opts.program();
  FamilySpec spec;
  spec.base = base;
  std::tie(spec.k_lo, spec.k_hi) = parse_range(exp_range, "--exp");
  spec.mult = parse_decimal(mult);
  spec.offset = offset;
  if (parity == "odd") spec.parity = ParityFilter::OddOnly;
  else if (parity == "even") spec.parity = ParityFilter::EvenOnly;
  else if (!parity.empty()) throw UsageError("--parity must be odd or even");

  auto entries = family_lengths(prog, spec, opts.policy(), opts.shards);
  if (islands) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> resolved;
    for (const auto& e : entries)
      if (e.length) resolved.emplace_back(e.k, *e.length);
    IslandReport report = find_islands(resolved, min_run, max_exceptions);
    if (opts.format == "json") emit(json_text(islands_to_json(report)), opts.out_path);
    else emit(islands_to_text(report), opts.out_path);
    return 0;
  }
  if (opts.format == "json") emit(json_text(family_to_json(entries)), opts.out_path);
  else emit(family_to_csv(entries), opts.out_path);
  return 0;
}

int cmd_nullmodel(const CommonOpts& opts, const std::string& profile_name, bool boundary,
                  const std::string& curve, const std::string& n0_range) {
  if (!curve.empty()) {
    LengthModel model = length_model_from_name(curve);
    auto colon1 = n0_range.find(':');
    auto colon2 = n0_range.find(':', colon1 == std::string::npos ? 0 : colon1 + 1);
    std::uint64_t step = 1;
    std::string head = n0_range;
    if (colon2 != std::string::npos) {
      step = std::stoull(n0_range.substr(colon2 + 1));
      head = n0_range.substr(0, colon2);
      if (step < 1) throw UsageError("--n0-range step must be >= 1");
    }
    auto [lo, hi] = parse_range(head, "--n0-range");
    if (lo < 1) throw UsageError("curve starts at n0 >= 1");
    std::ostringstream csv;
    csv << "n0,predicted_length\n";
    for (std::uint64_t n = lo; n <= hi; n += step)
      csv << n << "," << predict_length(model, from_u64(n)) << "\n";
    emit(csv.str(), opts.out_path);
    return 0;
  }
  if (profile_name.empty()) throw UsageError("nullmodel needs --profile or --curve");
  if (boundary) {
    std::function<DecayProfile(double)> family;
    if (profile_name == "p4-eta1") family = p4_eta1;
    else if (profile_name == "p4-eta2") family = p4_eta2;
    else throw UsageError("--boundary works on the m-parameterized families p4-eta1, p4-eta2");
    double m = stability_boundary(family);
    if (opts.format == "json") {
      nlohmann::json j{{"profile", profile_name}, {"boundary_m", m}};
      emit(json_text(j), opts.out_path);
    } else {
      std::ostringstream out;
      out << "stability boundary of " << profile_name << ": m = " << m << "\n";
      emit(out.str(), opts.out_path);
    }
    return 0;
  }
  DecayProfile profile = named_profile(profile_name);
  if (opts.format == "json") emit(json_text(profile_to_json(profile)), opts.out_path);
  else emit(profile_to_text(profile), opts.out_path);
  return 0;
}

int cmd_tree(const CommonOpts& opts, const std::string& loop_min_text,
             std::size_t first_exiters, std::uint64_t registry_scan,
             const std::string& root_text, unsigned depth, const std::string& bound_text,
             const std::string& tree_format) {
  Program prog = opts.program();
  GraphFormat format = tree_format == "json" ? GraphFormat::Json : GraphFormat::Dot;
  OrbitForest forest;
  if (!loop_min_text.empty()) {
    BigInt loop_min = parse_decimal(loop_min_text);
    LoopRegistry reg = find_loops(prog, registry_scan, opts.policy(), opts.shards);
    forest = build_exit_tree(prog, reg, loop_min, first_exiters, opts.policy());
  } else if (!root_text.empty()) {
    forest = build_reverse_tree(prog, parse_decimal(root_text), depth,
                                parse_decimal(bound_text));
  } else {
    throw UsageError("tree needs --loop (exit tree) or --root (reverse tree)");
  }
  emit(export_graph(forest, format), opts.out_path);
  return 0;
}

int cmd_hunt(const CommonOpts& opts, const std::string& n0_text, const std::string& minima_text,
             const std::string& checkpoint, std::uint64_t every, bool resume) {
  HuntConfig config;
  config.program = opts.program();
  config.n0 = parse_decimal(n0_text);
  if (!minima_text.empty()) config.known_loop_minima = parse_minima(minima_text);
  config.max_iterations = opts.max_iter;
  config.max_bits = opts.max_bits;
  config.checkpoint_path = checkpoint;
  config.checkpoint_every = every;
  config.resume = resume;
  config.on_checkpoint = [](const CheckpointRecord& rec) {
    std::cerr << "hunt: " << rec.iterations_done << " iterations, value "
              << bit_length(rec.current_value) << " bits, peak " << rec.max_bits_seen
              << " bits\n";
  };
  Trajectory t = run_hunt(config);
  if (opts.format == "json") emit(json_text(trajectory_to_json(config.program, t)),
                                  opts.out_path);
  else if (opts.format == "csv") emit(trajectory_to_csv(config.program, t), opts.out_path);
  else emit(trajectory_to_text(config.program, t), opts.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rrmap: census and statistics tools for Collatz-style residue-rule maps"};
  app.require_subcommand(1);

  CommonOpts traj_opts;
  std::string traj_n0, traj_minima;
  bool traj_path = false;
  auto* traj = app.add_subcommand("traj", "iterate one start value");
  add_common(traj, traj_opts);
  traj->add_option("--n0", traj_n0, "start value (decimal)")->required();
  traj->add_option("--minima", traj_minima, "comma-separated known loop minima");
  traj->add_flag("--path", traj_path, "record the full value sequence");

  CommonOpts loops_opts;
  std::uint64_t scan_to = 0;
  auto* loops = app.add_subcommand("loops", "discover all loops reachable from a start range");
  add_common(loops, loops_opts);
  loops->add_option("--scan-to", scan_to, "scan odd starts up to this bound")->required();

  CommonOpts basin_opts;
  std::string basin_range;
  auto* basin = app.add_subcommand("basin", "exit-basin census over an odd range");
  add_common(basin, basin_opts);
  basin->add_option("--odd-range", basin_range, "odd starts LO:HI")->required();

  CommonOpts picket_opts;
  std::uint64_t picket_count = 0;
  auto* picket = app.add_subcommand("picket", "picket-fence exit census (3n+1 map)");
  add_common(picket, picket_opts, /*with_program=*/false);
  picket->add_option("--count", picket_count, "number of odd starts 1, 3, 5, ...")->required();

  CommonOpts family_opts;
  std::uint64_t family_base = 3;
  std::string family_exp, family_mult = "1", family_parity;
  std::int64_t family_offset = 0;
  bool family_islands = false;
  std::size_t family_min_run = kDefaultIslandMinRun;
  std::size_t family_max_exc = kDefaultIslandMaxExceptions;
  auto* family = app.add_subcommand("family", "sequence lengths over c*b^k + d");
  add_common(family, family_opts);
  family->add_option("--base", family_base, "exponential base b");
  family->add_option("--exp", family_exp, "exponent range LO:HI")->required();
  family->add_option("--mult", family_mult, "multiplier c (decimal)");
  family->add_option("--offset", family_offset, "offset d");
  family->add_option("--parity", family_parity, "keep only odd or even members");
  family->add_flag("--islands", family_islands, "report islands of persistence instead of rows");
  family->add_option("--min-run", family_min_run, "minimum island run length");
  family->add_option("--max-exceptions", family_max_exc, "deviations an island may absorb");

  CommonOpts nm_opts;
  std::string nm_profile, nm_curve, nm_range;
  bool nm_boundary = false;
  auto* nullmodel = app.add_subcommand("nullmodel", "decay profiles and length predictors");
  add_common(nullmodel, nm_opts, /*with_program=*/false);
  nullmodel->add_option("--profile", nm_profile,
                        "p1, p2-simple, p2-enriched, p4-eta1:<m>, p4-eta2:<m>, p6-7");
  nullmodel->add_flag("--boundary", nm_boundary, "solve window_factor = 1 for m");
  nullmodel->add_option("--curve", nm_curve, "emit a length-model curve: low, mid or high");
  nullmodel->add_option("--n0-range", nm_range, "curve range LO:HI[:STEP]");

  CommonOpts tree_opts;
  std::string tree_loop, tree_root, tree_bound = "100000", tree_fmt = "dot";
  std::size_t tree_exiters = 10;
  std::uint64_t tree_scan = 25'000;
  unsigned tree_depth = 3;
  auto* tree = app.add_subcommand("tree", "exit trees and reverse (preimage) trees");
  add_common(tree, tree_opts);
  tree->add_option("--loop", tree_loop, "loop minimum: build the exit tree of this loop");
  tree->add_option("--first-exiters", tree_exiters, "number of odd exiters to include");
  tree->add_option("--registry-scan-to", tree_scan, "loop discovery bound for exit trees");
  tree->add_option("--root", tree_root, "reverse tree root value");
  tree->add_option("--depth", tree_depth, "reverse tree depth");
  tree->add_option("--bound", tree_bound, "largest node value admitted");
  tree->add_option("--tree-format", tree_fmt, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}));

  CommonOpts hunt_opts;
  std::string hunt_n0, hunt_minima, hunt_checkpoint;
  std::uint64_t hunt_every = 1'000'000;
  bool hunt_resume = false;
  auto* hunt = app.add_subcommand("hunt", "long checkpointed run of a single start");
  add_common(hunt, hunt_opts);
  hunt->add_option("--n0", hunt_n0, "start value (decimal)")->required();
  hunt->add_option("--minima", hunt_minima, "comma-separated known loop minima (default: 1)");
  hunt->add_option("--checkpoint", hunt_checkpoint, "checkpoint file path");
  hunt->add_option("--checkpoint-every", hunt_every, "iterations between checkpoints");
  hunt->add_flag("--resume", hunt_resume, "continue from the checkpoint file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*traj) return cmd_traj(traj_opts, traj_n0, traj_minima, traj_path);
    if (*loops) return cmd_loops(loops_opts, scan_to);
    if (*basin) return cmd_basin(basin_opts, basin_range);
    if (*picket) return cmd_picket(picket_opts, picket_count);
    if (*family)
      return cmd_family(family_opts, family_base, family_exp, family_mult, family_offset,
                        family_parity, family_islands, family_min_run, family_max_exc);
    if (*nullmodel) return cmd_nullmodel(nm_opts, nm_profile, nm_boundary, nm_curve, nm_range);
    if (*tree)
      return cmd_tree(tree_opts, tree_loop, tree_exiters, tree_scan, tree_root, tree_depth,
                      tree_bound, tree_fmt);
    if (*hunt) return cmd_hunt(hunt_opts, hunt_n0, hunt_minima, hunt_checkpoint, hunt_every,
                               hunt_resume);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DslError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
