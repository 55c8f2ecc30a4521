#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rrmap/bigint.hpp"

namespace rrmap {

inline constexpr int kCheckpointFormatVersion = 1;
inline constexpr std::uint64_t kMinCheckpointInterval = 10'000;

/// Resumable snapshot of a long-running hunt. Big integers are decimal
/// strings on disk; files are written atomically (temp file then rename).
struct CheckpointRecord {
  int format_version = kCheckpointFormatVersion;
  std::string program_id;
  BigInt n0;
  std::uint64_t iterations_done = 0;
  BigInt current_value;
  std::uint32_t max_bits_seen = 0;
  std::vector<std::uint64_t> rule_fire_counts;

  friend bool operator==(const CheckpointRecord& a, const CheckpointRecord& b) {
    return a.format_version == b.format_version && a.program_id == b.program_id &&
           a.n0 == b.n0 && a.iterations_done == b.iterations_done &&
           a.current_value == b.current_value && a.max_bits_seen == b.max_bits_seen &&
           a.rule_fire_counts == b.rule_fire_counts;
  }
};

void write_checkpoint(const CheckpointRecord& record, const std::filesystem::path& path);

/// Throws std::runtime_error on missing/truncated/mismatched files; a
/// version mismatch is refused, never migrated.
CheckpointRecord read_checkpoint(const std::filesystem::path& path);

}  // namespace rrmap
