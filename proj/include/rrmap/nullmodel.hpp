#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rrmap/bigint.hpp"
#include "rrmap/program.hpp"
#include "rrmap/rational.hpp"
#include "rrmap/trajectory.hpp"

namespace rrmap {

/// The three sequence-length predictors:
///   low  = log2(n0)                      (pure halvings)
///   mid  = 2 ln(n0) / ln(4/3)            (3/4 drop every 2 steps)
///   high = k + mid(n0 * (3/2)^k),  k = bit length of n0
enum class LengthModel { Low, Mid, High };

LengthModel length_model_from_name(const std::string& name);
const char* length_model_name(LengthModel m);

double predict_length(LengthModel model, const BigInt& n0);

/// Expected multiplicative change over a fixed window of steps: each
/// component contributes factor^count, counts summing to the window.
struct DecayProfile {
  std::string name;
  double window = 0;
  struct Component {
    std::string label;
    double count = 0;
    Rational factor;
  };
  std::vector<Component> components;
};

double window_factor(const DecayProfile& profile);

/// Profiles quoted in reports: p1, p2-simple, p2-enriched, p4-eta1:<m>,
/// p4-eta2:<m>, p6-7.
DecayProfile named_profile(const std::string& name);

/// Expected steps from n0 down to loop_min under a per-window decay factor.
/// Throws std::domain_error when factor >= 1 (divergent model).
double predicted_length_from_factor(double factor, double window, const BigInt& n0,
                                    const BigInt& loop_min);

/// Solves window_factor(family(m)) = 1 for m by bisection on [lo, hi].
/// The family must be monotone increasing in m. Throws std::domain_error
/// when no root is bracketed.
double stability_boundary(const std::function<DecayProfile(double)>& family,
                          double lo = 7.0, double hi = 200.0, double tol = 1e-6);

/// The eta families for the divide-by-5 programs, parameterized by m.
DecayProfile p4_eta1(double m);
DecayProfile p4_eta2(double m);

/// Fraction of odd trajectory terms (after the first step, before loop
/// entry) divisible by each divisor, pooled over the sample.
struct ResidueProfile {
  std::map<std::uint64_t, double> fraction_by_divisor;
  std::uint64_t odd_terms = 0;
  std::uint64_t trajectories = 0;
  std::uint64_t capped = 0;
};

ResidueProfile residue_enrichment(const Program& prog, std::span<const BigInt> starts,
                                  const std::vector<std::uint64_t>& divisors,
                                  const StopPolicy& caps = {});

/// Deterministic sample of odd starts in [lo, hi] for enrichment runs.
std::vector<BigInt> random_odd_starts(std::uint64_t count, const BigInt& lo,
                                      const BigInt& hi, std::uint64_t seed);

/// Share of n0 in [lo, hi] whose sequence length equals that of n0 + 1.
struct PersistenceResult {
  double rate = 0.0;
  std::uint64_t pairs = 0;     // resolved pairs
  std::uint64_t equal = 0;
  std::uint64_t capped = 0;    // starts whose length could not be resolved
};

PersistenceResult persistence_rate(const Program& prog, std::uint64_t lo, std::uint64_t hi,
                                   const StopPolicy& caps = {}, unsigned shards = 1);

}  // namespace rrmap
