#include "rrmap/hunt.hpp"

#include <stdexcept>

namespace rrmap {

Trajectory run_hunt(const HuntConfig& config) {
  require_valid(config.program);
  if (mpz_sgn(config.n0.get_mpz_t()) <= 0) throw std::invalid_argument("n0 must be >= 1");
  const bool checkpointing = !config.checkpoint_path.empty();
  if (checkpointing && config.checkpoint_every < kMinCheckpointInterval)
    throw std::invalid_argument("checkpoint interval must be >= " +
                                std::to_string(kMinCheckpointInterval));

  StopPolicy policy;
  policy.known_loop_minima = config.known_loop_minima;
  policy.max_iterations = config.max_iterations;
  policy.max_bits = config.max_bits;

  DriveState resume_state;
  const DriveState* resume_from = nullptr;
  if (config.resume) {
    if (!checkpointing)
      throw std::invalid_argument("--resume needs a checkpoint path");
    CheckpointRecord rec = read_checkpoint(config.checkpoint_path);
    if (rec.program_id != config.program.id)
      throw std::runtime_error("checkpoint belongs to program '" + rec.program_id +
                               "', not '" + config.program.id + "'");
    if (rec.n0 != config.n0)
      throw std::runtime_error("checkpoint starts at " + to_decimal(rec.n0) + ", not " +
                               to_decimal(config.n0));
    if (rec.rule_fire_counts.size() != config.program.rules.size())
      throw std::runtime_error("checkpoint rule count does not match the program");
    if (rec.iterations_done > config.max_iterations)
      throw std::invalid_argument("checkpoint is already past the iteration cap (" +
                                  std::to_string(rec.iterations_done) + " > " +
                                  std::to_string(config.max_iterations) + ")");
    resume_state.value = rec.current_value;
    resume_state.steps_done = rec.iterations_done;
    resume_state.rule_fire_counts = rec.rule_fire_counts;
    resume_state.max_bits_seen = rec.max_bits_seen;
    resume_from = &resume_state;
  }

  auto to_record = [&](const DriveState& state) {
    CheckpointRecord rec;
    rec.program_id = config.program.id;
    rec.n0 = config.n0;
    rec.iterations_done = state.steps_done;
    rec.current_value = state.value;
    rec.max_bits_seen = state.max_bits_seen;
    rec.rule_fire_counts = state.rule_fire_counts;
    return rec;
  };

  DriveCallback cb;
  if (checkpointing || config.on_checkpoint) {
    cb = [&](const DriveState& state) {
      CheckpointRecord rec = to_record(state);
      if (checkpointing) write_checkpoint(rec, config.checkpoint_path);
      if (config.on_checkpoint) config.on_checkpoint(rec);
    };
  }

  Trajectory t = drive(config.program, config.n0, policy, resume_from,
                       config.checkpoint_every, cb);

  if (checkpointing && t.outcome == Outcome::Converged && t.length == 0) {
    // converged before the first step; drive never emitted a state
    DriveState state;
    state.value = t.converged_min;
    state.steps_done = 0;
    state.rule_fire_counts = t.rule_fire_counts;
    state.max_bits_seen = t.max_bits;
    cb(state);
  }
  return t;
}

}  // namespace rrmap
