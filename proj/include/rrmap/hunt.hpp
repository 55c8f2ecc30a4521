#pragma once

#include <filesystem>
#include <functional>

#include "rrmap/checkpoint.hpp"
#include "rrmap/program.hpp"
#include "rrmap/trajectory.hpp"

namespace rrmap {

/// A long single-trajectory run with periodic, atomic checkpoints. Killing
/// the process and resuming from the last checkpoint replays the identical
/// value sequence, so outcome, length and peak bit count match an
/// uninterrupted run.
struct HuntConfig {
  Program program;
  BigInt n0;
  std::vector<BigInt> known_loop_minima{BigInt(1)};
  std::uint64_t max_iterations = kDefaultMaxIterations;
  std::uint32_t max_bits = kDefaultMaxBits;
  std::filesystem::path checkpoint_path;  // empty = no checkpoints
  std::uint64_t checkpoint_every = 1'000'000;
  bool resume = false;
  std::function<void(const CheckpointRecord&)> on_checkpoint;  // progress hook
};

Trajectory run_hunt(const HuntConfig& config);

}  // namespace rrmap
