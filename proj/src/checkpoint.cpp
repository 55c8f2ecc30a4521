#include "rrmap/checkpoint.hpp"

#include <fstream>

#include "json.hpp"

namespace rrmap {

void write_checkpoint(const CheckpointRecord& record, const std::filesystem::path& path) {
  nlohmann::json j;
  j["format_version"] = record.format_version;
  j["program"] = record.program_id;
  j["n0"] = to_decimal(record.n0);
  j["iterations_done"] = record.iterations_done;
  j["current_value"] = to_decimal(record.current_value);
  j["max_bits_seen"] = record.max_bits_seen;
  j["rule_fire_counts"] = record.rule_fire_counts;

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint file " + tmp.string());
    out << j.dump(2) << "\n";
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

CheckpointRecord read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("corrupt checkpoint " + path.string() + ": " + e.what());
  }
  CheckpointRecord rec;
  try {
    rec.format_version = j.at("format_version").get<int>();
    if (rec.format_version != kCheckpointFormatVersion)
      throw std::runtime_error("checkpoint format version " +
                               std::to_string(rec.format_version) + " is not supported");
    rec.program_id = j.at("program").get<std::string>();
    rec.n0 = parse_decimal(j.at("n0").get<std::string>());
    rec.iterations_done = j.at("iterations_done").get<std::uint64_t>();
    rec.current_value = parse_decimal(j.at("current_value").get<std::string>());
    rec.max_bits_seen = j.at("max_bits_seen").get<std::uint32_t>();
    rec.rule_fire_counts = j.at("rule_fire_counts").get<std::vector<std::uint64_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("corrupt checkpoint " + path.string() + ": " + e.what());
  }
  if (mpz_sgn(rec.n0.get_mpz_t()) <= 0 || mpz_sgn(rec.current_value.get_mpz_t()) <= 0)
    throw std::runtime_error("corrupt checkpoint " + path.string() + ": nonpositive values");
  std::uint64_t fired = 0;
  for (std::uint64_t c : rec.rule_fire_counts) fired += c;
  if (fired != rec.iterations_done)
    throw std::runtime_error("corrupt checkpoint " + path.string() +
                             ": fire counts do not sum to iterations_done");
  return rec;
}

}  // namespace rrmap
